#include "core/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace lodefix {

namespace {

std::string fmt(const char* spec, double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, value);
    return buf;
}

struct Stats {
    int n = 0;
    double mean = 0.0;
    double sd = 0.0;
    double ci95 = 0.0; // 1.96 * sd / sqrt(n)
};

Stats stats_of(const std::vector<double>& values) {
    Stats s;
    s.n = static_cast<int>(values.size());
    if (s.n == 0) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / s.n;
    if (s.n > 1) {
        double sq = 0.0;
        for (double v : values) sq += (v - s.mean) * (v - s.mean);
        s.sd = std::sqrt(sq / (s.n - 1));
        s.ci95 = 1.96 * s.sd / std::sqrt(static_cast<double>(s.n));
    }
    return s;
}

// Best-so-far curves are step functions; the value at eval e is the last
// sample at or before e.
double curve_value_at(const std::vector<std::pair<int64_t, double>>& curve, int64_t eval) {
    double value = curve.empty() ? 0.0 : curve.front().second;
    for (const auto& [idx, v] : curve) {
        if (idx > eval) break;
        value = v;
    }
    return value;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
    return out;
}

const std::vector<std::string> kBands = {"30-50", "50-70", "70-90"};

} // namespace

const char* algo_name(Algo algo) {
    switch (algo) {
    case Algo::Rs: return "rs";
    case Algo::Hc: return "hc";
    case Algo::Es: return "es";
    case Algo::Me: return "me";
    }
    return "?";
}

std::optional<Algo> algo_from_name(std::string_view name) {
    if (name == "rs") return Algo::Rs;
    if (name == "hc") return Algo::Hc;
    if (name == "es") return Algo::Es;
    if (name == "me") return Algo::Me;
    return std::nullopt;
}

std::string band_of_ratio(double percent) {
    if (percent >= 30.0 && percent < 50.0) return "30-50";
    if (percent >= 50.0 && percent < 70.0) return "50-70";
    if (percent >= 70.0 && percent < 90.0) return "70-90";
    return "other";
}

uint64_t run_seed(uint64_t master_seed, std::string_view level_id, std::string_view algo,
                  int repeat) {
    uint64_t h = kFnvOffset;
    h = fnv1a64(h, master_seed);
    h = fnv1a64(h, level_id);
    h = fnv1a64(h, algo);
    h = fnv1a64(h, static_cast<uint64_t>(repeat));
    return h;
}

std::string record_to_json(const RunRecord& r) {
    ordered_json j;
    j["level_id"] = r.level_id;
    j["band"] = r.band;
    j["algorithm"] = r.algorithm;
    j["seed"] = r.seed;
    j["start_gold_ratio"] = r.start_gold_ratio;
    j["success"] = r.success;
    j["changes"] = r.changes;
    j["best_fitness"] = r.best_fitness;
    j["evals_used"] = r.evals_used;
    j["evals_to_first_success"] = r.evals_to_first_success;
    j["generations"] = r.generations;
    if (r.qd_score) j["qd_score"] = *r.qd_score; else j["qd_score"] = nullptr;
    if (r.coverage) j["coverage"] = *r.coverage; else j["coverage"] = nullptr;
    j["curve"] = r.curve;
    j["qd_curve"] = r.qd_curve;
    return j.dump();
}

RunRecord record_from_json(const std::string& line) {
    const auto j = nlohmann::json::parse(line);
    RunRecord r;
    r.level_id = j.at("level_id").get<std::string>();
    r.band = j.at("band").get<std::string>();
    r.algorithm = j.at("algorithm").get<std::string>();
    r.seed = j.at("seed").get<uint64_t>();
    r.start_gold_ratio = j.at("start_gold_ratio").get<double>();
    r.success = j.at("success").get<bool>();
    r.changes = j.at("changes").get<int>();
    r.best_fitness = j.at("best_fitness").get<double>();
    r.evals_used = j.at("evals_used").get<int64_t>();
    r.evals_to_first_success = j.at("evals_to_first_success").get<int64_t>();
    r.generations = j.at("generations").get<int>();
    if (!j.at("qd_score").is_null()) r.qd_score = j.at("qd_score").get<double>();
    if (!j.at("coverage").is_null()) r.coverage = j.at("coverage").get<double>();
    r.curve = j.at("curve").get<std::vector<std::pair<int64_t, double>>>();
    r.qd_curve = j.at("qd_curve").get<std::vector<std::pair<int64_t, double>>>();
    return r;
}

RunOutcome run_single(const Level& start, const std::string& level_id, const RunParams& params,
                      uint64_t seed) {
    Rng rng(seed);
    const Evaluation start_ev = evaluate(start, start);
    const double ratio = 100.0 * start_ev.counts.gold_collect / start_ev.counts.gold_total;

    RunOutcome out;
    switch (params.algo) {
    case Algo::Rs:
        out.result = random_search(start, params.budget, params.options, rng);
        break;
    case Algo::Hc:
        out.result = hill_climb(start, params.budget, params.options, rng);
        break;
    case Algo::Es: {
        EsResult es = evolution_strategy(start, params.mu, params.lambda, params.budget,
                                         params.mutation, params.options, rng);
        out.result = std::move(es.search);
        out.archive = std::move(es.shadow_archive);
        break;
    }
    case Algo::Me: {
        MeResult me = map_elites(start, params.budget, params.init_count, params.mutation,
                                 params.options, rng);
        out.result = std::move(me.search);
        out.archive = std::move(me.archive);
        out.record.qd_curve = std::move(me.qd_curve);
        break;
    }
    }

    RunRecord& rec = out.record;
    rec.level_id = level_id;
    rec.band = band_of_ratio(ratio);
    rec.algorithm = algo_name(params.algo);
    rec.seed = seed;
    rec.start_gold_ratio = ratio;
    rec.success = out.result.success;
    rec.changes = out.result.changes;
    rec.best_fitness = out.result.best_fitness;
    rec.evals_used = out.result.evals_used;
    rec.evals_to_first_success = out.result.first_success_eval;
    rec.generations = out.result.generations;
    rec.curve = out.result.fitness_curve;
    if (out.archive) {
        rec.qd_score = out.archive->qd_score();
        rec.coverage = out.archive->coverage();
    }
    return out;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::BadArgument, std::string("config parse error: ") + e.what());
    }

    ExperimentConfig cfg;
    if (j.contains("levels")) {
        cfg.level_paths = j.at("levels").get<std::vector<std::string>>();
    }
    if (j.contains("corpus_dir")) {
        const fs::path dir = j.at("corpus_dir").get<std::string>();
        if (!fs::is_directory(dir)) {
            fail(ErrorCode::BadArgument, "corpus_dir is not a directory: " + dir.string());
        }
        std::vector<std::string> found;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.path().extension() == ".txt") found.push_back(entry.path().string());
        }
        std::sort(found.begin(), found.end());
        cfg.level_paths.insert(cfg.level_paths.end(), found.begin(), found.end());
    }
    if (cfg.level_paths.empty()) fail(ErrorCode::BadArgument, "config names no levels");

    if (j.contains("algorithms")) {
        cfg.algorithms.clear();
        for (const auto& name : j.at("algorithms")) {
            const auto algo = algo_from_name(name.get<std::string>());
            if (!algo) {
                fail(ErrorCode::BadArgument, "unknown algorithm: " + name.get<std::string>());
            }
            cfg.algorithms.push_back(*algo);
        }
    }

    cfg.repeats = j.value("repeats", cfg.repeats);
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    cfg.output_dir = j.value("output_dir", std::string("out"));
    cfg.budget_rs = j.value("budget_rs", cfg.budget_rs);
    cfg.budget_hc = j.value("budget_hc", cfg.budget_hc);
    cfg.budget_es = j.value("budget_es", cfg.budget_es);
    cfg.budget_me = j.value("budget_me", cfg.budget_me);
    cfg.mu = j.value("mu", cfg.mu);
    cfg.lambda = j.value("lambda", cfg.lambda);
    cfg.init_count = j.value("init_count", cfg.init_count);
    cfg.m_max = j.value("m_max", cfg.m_max);
    cfg.curve_stride = j.value("curve_stride", cfg.curve_stride);
    cfg.count_init_evals = j.value("count_init_evals", cfg.count_init_evals);
    cfg.export_heatmaps = j.value("export_heatmaps", cfg.export_heatmaps);

    if (cfg.repeats < 1) fail(ErrorCode::BadArgument, "repeats must be >= 1");
    if (cfg.budget_rs < 1 || cfg.budget_hc < 1 || cfg.budget_es < 1 || cfg.budget_me < 1) {
        fail(ErrorCode::BadArgument, "budgets must be >= 1");
    }
    for (const auto& p : cfg.level_paths) {
        if (!fs::exists(p)) fail(ErrorCode::BadArgument, "level file not found: " + p);
    }
    return cfg;
}

RunParams params_for(const ExperimentConfig& config, Algo algo) {
    RunParams p;
    p.algo = algo;
    switch (algo) {
    case Algo::Rs: p.budget.max_evaluations = config.budget_rs; break;
    case Algo::Hc: p.budget.max_evaluations = config.budget_hc; break;
    case Algo::Es: p.budget.max_evaluations = config.budget_es; break;
    case Algo::Me: p.budget.max_evaluations = config.budget_me; break;
    }
    p.mu = config.mu;
    p.lambda = config.lambda;
    p.init_count = config.init_count;
    p.mutation.m_max = config.m_max;
    p.options.curve_stride = config.curve_stride;
    p.options.count_init_evals = config.count_init_evals;
    return p;
}

void run_experiment(const ExperimentConfig& config) {
    fs::create_directories(config.output_dir);
    if (config.export_heatmaps) fs::create_directories(fs::path(config.output_dir) / "heatmaps");

    // Echo the resolved configuration (including the curve stride) next to
    // the outputs so a record set is self-describing.
    {
        ordered_json echo;
        echo["levels"] = config.level_paths;
        std::vector<std::string> names;
        for (Algo a : config.algorithms) names.push_back(algo_name(a));
        echo["algorithms"] = names;
        echo["repeats"] = config.repeats;
        echo["master_seed"] = config.master_seed;
        echo["output_dir"] = config.output_dir;
        echo["budget_rs"] = config.budget_rs;
        echo["budget_hc"] = config.budget_hc;
        echo["budget_es"] = config.budget_es;
        echo["budget_me"] = config.budget_me;
        echo["mu"] = config.mu;
        echo["lambda"] = config.lambda;
        echo["init_count"] = config.init_count;
        echo["m_max"] = config.m_max;
        echo["curve_stride"] = config.curve_stride;
        echo["count_init_evals"] = config.count_init_evals;
        echo["export_heatmaps"] = config.export_heatmaps;
        auto out = open_out(fs::path(config.output_dir) / "config.json");
        out << echo.dump(2) << '\n';
    }

    std::vector<RunRecord> records;
    auto runs_out = open_out(fs::path(config.output_dir) / "runs.jsonl");

    for (const std::string& path : config.level_paths) {
        const std::string level_id = fs::path(path).stem().string();
        Level start;
        try {
            start = load_level(path);
        } catch (const Error& e) {
            std::cerr << "skipping " << path << ": " << e.what() << '\n';
            continue;
        }
        for (Algo algo : config.algorithms) {
            for (int repeat = 0; repeat < config.repeats; ++repeat) {
                const uint64_t seed =
                    run_seed(config.master_seed, level_id, algo_name(algo), repeat);
                RunOutcome outcome;
                try {
                    outcome = run_single(start, level_id, params_for(config, algo), seed);
                } catch (const Error& e) {
                    std::cerr << "run failed (" << level_id << ", " << algo_name(algo)
                              << ", repeat " << repeat << "): " << e.what() << '\n';
                    continue;
                }
                runs_out << record_to_json(outcome.record) << '\n';
                records.push_back(std::move(outcome.record));
                if (config.export_heatmaps && outcome.archive) {
                    const std::string name = level_id + "__" + algo_name(algo) + "__r" +
                                             std::to_string(repeat) + ".csv";
                    export_heatmap_file(*outcome.archive,
                                        (fs::path(config.output_dir) / "heatmaps" / name).string());
                }
                std::cout << level_id << ' ' << algo_name(algo) << " repeat " << repeat
                          << ": " << (outcome.record.success ? "success" : "failure")
                          << ", changes " << outcome.record.changes << ", evals "
                          << outcome.record.evals_used << '\n';
            }
        }
    }
    runs_out.close();
    write_reports(records, config.output_dir);
}

namespace {

std::vector<std::string> algorithms_in(const std::vector<RunRecord>& records) {
    std::vector<std::string> order;
    for (const char* name : {"rs", "hc", "es", "me"}) {
        for (const auto& r : records) {
            if (r.algorithm == name) {
                order.push_back(name);
                break;
            }
        }
    }
    return order;
}

// Table-1 shape: one row per algorithm, one column per band, cell = pooled
// mean changes of successful runs with its 95% CI.
void write_changes_tables(const std::vector<RunRecord>& records, const fs::path& dir) {
    const auto algos = algorithms_in(records);

    auto collect = [&](const std::string& algo, const std::string& band,
                       const std::string& level_id) {
        std::vector<double> changes;
        for (const auto& r : records) {
            if (r.algorithm != algo || r.band != band || !r.success) continue;
            if (!level_id.empty() && r.level_id != level_id) continue;
            changes.push_back(static_cast<double>(r.changes));
        }
        return changes;
    };

    {
        auto out = open_out(dir / "changes_by_band.csv");
        out << "algorithm";
        for (const auto& band : kBands) out << ',' << band;
        out << '\n';
        for (const auto& algo : algos) {
            out << algo;
            for (const auto& band : kBands) {
                const Stats s = stats_of(collect(algo, band, ""));
                if (s.n == 0) {
                    out << ",-";
                } else {
                    out << ',' << fmt("%.2f", s.mean) << " \xC2\xB1 " << fmt("%.2f", s.ci95);
                }
            }
            out << '\n';
        }
    }

    {
        auto out = open_out(dir / "changes_by_band_detail.csv");
        out << "algorithm,band,runs,successes,mean_changes,sd,ci95\n";
        for (const auto& algo : algos) {
            for (const auto& band : kBands) {
                int runs = 0;
                for (const auto& r : records) {
                    runs += r.algorithm == algo && r.band == band;
                }
                if (runs == 0) continue;
                const Stats s = stats_of(collect(algo, band, ""));
                out << algo << ',' << band << ',' << runs << ',' << s.n << ','
                    << fmt("%.9g", s.mean) << ',' << fmt("%.9g", s.sd) << ','
                    << fmt("%.9g", s.ci95) << '\n';
            }
        }
    }

    {
        std::vector<std::string> levels;
        for (const auto& r : records) {
            if (std::find(levels.begin(), levels.end(), r.level_id) == levels.end()) {
                levels.push_back(r.level_id);
            }
        }
        auto out = open_out(dir / "changes_by_level.csv");
        out << "level_id,band,algorithm,runs,successes,mean_changes,ci95\n";
        for (const auto& level : levels) {
            for (const auto& algo : algos) {
                std::string band = "other";
                int runs = 0;
                for (const auto& r : records) {
                    if (r.level_id == level && r.algorithm == algo) {
                        band = r.band;
                        ++runs;
                    }
                }
                if (runs == 0) continue;
                const Stats s = stats_of(collect(algo, band, level));
                out << level << ',' << band << ',' << algo << ',' << runs << ',' << s.n << ','
                    << fmt("%.9g", s.mean) << ',' << fmt("%.9g", s.ci95) << '\n';
            }
        }
    }
}

void write_curve_table(const std::vector<RunRecord>& records, const fs::path& path,
                       bool qd_curves) {
    auto out = open_out(path);
    out << "algorithm,eval,mean,ci95,n\n";
    for (const auto& algo : algorithms_in(records)) {
        std::set<int64_t> grid;
        std::vector<const std::vector<std::pair<int64_t, double>>*> curves;
        for (const auto& r : records) {
            if (r.algorithm != algo) continue;
            const auto& curve = qd_curves ? r.qd_curve : r.curve;
            if (curve.empty()) continue;
            curves.push_back(&curve);
            for (const auto& [idx, value] : curve) grid.insert(idx);
        }
        if (curves.empty()) continue;
        for (int64_t eval : grid) {
            std::vector<double> values;
            for (const auto* curve : curves) {
                if (curve->front().first > eval) continue; // not yet started
                values.push_back(curve_value_at(*curve, eval));
            }
            const Stats s = stats_of(values);
            out << algo << ',' << eval << ',' << fmt("%.9g", s.mean) << ','
                << fmt("%.9g", s.ci95) << ',' << s.n << '\n';
        }
    }
}

void write_coverage_table(const std::vector<RunRecord>& records, const fs::path& path) {
    auto out = open_out(path);
    out << "level_id,algorithm,runs,mean_coverage_pct,mean_qd_score\n";

    std::vector<std::string> levels;
    for (const auto& r : records) {
        if (!r.coverage) continue;
        if (std::find(levels.begin(), levels.end(), r.level_id) == levels.end()) {
            levels.push_back(r.level_id);
        }
    }
    levels.push_back(""); // pooled row over every level

    for (const auto& level : levels) {
        for (const auto& algo : algorithms_in(records)) {
            std::vector<double> coverage;
            std::vector<double> qd;
            for (const auto& r : records) {
                if (r.algorithm != algo || !r.coverage) continue;
                if (!level.empty() && r.level_id != level) continue;
                coverage.push_back(100.0 * *r.coverage);
                qd.push_back(r.qd_score.value_or(0.0));
            }
            if (coverage.empty()) continue;
            const Stats cov = stats_of(coverage);
            const Stats qds = stats_of(qd);
            out << (level.empty() ? "ALL" : level) << ',' << algo << ',' << cov.n << ','
                << fmt("%.9g", cov.mean) << ',' << fmt("%.9g", qds.mean) << '\n';
        }
    }
}

} // namespace

void write_reports(const std::vector<RunRecord>& records, const std::string& out_dir) {
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_changes_tables(records, dir);
    write_curve_table(records, dir / "fitness_curves.csv", false);
    write_curve_table(records, dir / "qd_curves.csv", true);
    write_coverage_table(records, dir / "coverage.csv");
}

std::vector<RunRecord> load_records(const std::string& records_dir) {
    fs::path path(records_dir);
    if (fs::is_directory(path)) path /= "runs.jsonl";
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open records: " + path.string());
    std::vector<RunRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            records.push_back(record_from_json(line));
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::BadArgument, std::string("bad record line: ") + e.what());
        }
    }
    return records;
}

} // namespace lodefix
