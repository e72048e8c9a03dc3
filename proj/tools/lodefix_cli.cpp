// lodefix command line: evaluate, repair, corrupt, experiment, report.
// Talks to the engine exclusively through the shared-library C API.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lodefix.h"

namespace fs = std::filesystem;

namespace {

// Exit codes: 0 ok/repaired, 1 repair failed, 2 parse error,
// 3 band/param error, 4 band unreachable, 5 io error.
int exit_code_for(lfx_status status) {
    switch (status) {
    case LFX_OK: return 0;
    case LFX_ERR_BAD_DIMENSIONS:
    case LFX_ERR_BAD_CHAR:
    case LFX_ERR_BAD_CARDINALITY: return 2;
    case LFX_ERR_BAD_ARGUMENT:
    case LFX_ERR_NO_EMPTY_TILE: return 3;
    case LFX_ERR_BAND_UNREACHABLE: return 4;
    case LFX_ERR_IO: return 5;
    default: return 9;
    }
}

int complain(lfx_status status) {
    std::fprintf(stderr, "error: %s: %s\n", lfx_status_name(status), lfx_last_error());
    return exit_code_for(status);
}

struct LevelDeleter {
    void operator()(lfx_level* p) const { lfx_level_free(p); }
};
using LevelPtr = std::unique_ptr<lfx_level, LevelDeleter>;

struct ResultDeleter {
    void operator()(lfx_search_result* p) const { lfx_result_free(p); }
};
using ResultPtr = std::unique_ptr<lfx_search_result, ResultDeleter>;

struct OwnedString {
    char* text = nullptr;
    ~OwnedString() { lfx_string_free(text); }
};

uint64_t fnv_mix(uint64_t seed, uint64_t value) {
    uint64_t h = 14695981039346656037ull;
    for (uint64_t v : {seed, value}) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (i * 8)) & 0xffu;
            h *= 1099511628211ull;
        }
    }
    return h;
}

bool parse_band(const std::string& text, int& lo, int& hi) {
    const auto dash = text.find('-');
    if (dash == std::string::npos) return false;
    try {
        lo = std::stoi(text.substr(0, dash));
        hi = std::stoi(text.substr(dash + 1));
    } catch (...) {
        return false;
    }
    return true;
}

int cmd_evaluate(const std::string& file) {
    LevelPtr level;
    {
        lfx_level* raw = nullptr;
        if (lfx_status s = lfx_level_load(file.c_str(), &raw)) return complain(s);
        level.reset(raw);
    }
    lfx_eval_report report;
    if (lfx_status s = lfx_evaluate(level.get(), nullptr, &report)) return complain(s);

    nlohmann::ordered_json j;
    j["file"] = file;
    j["playability"] = report.playability;
    j["gold_collect"] = report.gold_collect;
    j["gold_total"] = report.gold_total;
    j["gold_ratio_percent"] = 100.0 * report.gold_collect / report.gold_total;
    j["tiles_explored"] = report.tiles_explored;
    j["playable"] = report.playable != 0;
    std::printf("%s\n", j.dump().c_str());
    return 0;
}

int cmd_repair(const std::string& file, lfx_repair_params params, std::string out_path,
               const std::string& record_path, const std::string& heatmap_path) {
    LevelPtr level;
    {
        lfx_level* raw = nullptr;
        if (lfx_status s = lfx_level_load(file.c_str(), &raw)) return complain(s);
        level.reset(raw);
    }
    const std::string level_id = fs::path(file).stem().string();
    params.level_id = level_id.c_str();
    if (out_path.empty()) out_path = level_id + ".repaired.txt";

    // Nothing to repair when every gold is already reachable: the input is
    // written through unchanged and the run reports 0 changes.
    lfx_eval_report before;
    if (lfx_status s = lfx_evaluate(level.get(), nullptr, &before)) return complain(s);
    if (before.playable) {
        if (lfx_status s = lfx_level_save(level.get(), out_path.c_str())) return complain(s);
        nlohmann::ordered_json j;
        j["level_id"] = level_id;
        j["algorithm"] = params.algorithm;
        j["seed"] = params.seed;
        j["success"] = true;
        j["changes"] = 0;
        j["best_fitness"] = 2.0;
        j["evals_used"] = 1;
        j["already_playable"] = true;
        j["output"] = out_path;
        const std::string line = j.dump();
        std::printf("%s\n", line.c_str());
        if (!record_path.empty()) {
            std::ofstream rec(record_path, std::ios::binary);
            rec << line << '\n';
        }
        return 0;
    }

    ResultPtr result;
    {
        lfx_search_result* raw = nullptr;
        if (lfx_status s = lfx_repair(level.get(), &params, &raw)) return complain(s);
        result.reset(raw);
    }

    LevelPtr best;
    {
        lfx_level* raw = nullptr;
        if (lfx_status s = lfx_result_best_level(result.get(), &raw)) return complain(s);
        best.reset(raw);
    }
    if (lfx_status s = lfx_level_save(best.get(), out_path.c_str())) return complain(s);

    OwnedString record;
    if (lfx_status s = lfx_result_record_json(result.get(), &record.text)) return complain(s);
    std::printf("%s\n", record.text);
    if (!record_path.empty()) {
        std::ofstream rec(record_path, std::ios::binary);
        rec << record.text << '\n';
    }

    if (!heatmap_path.empty()) {
        lfx_archive* archive = nullptr;
        if (lfx_status s = lfx_result_archive(result.get(), &archive)) return complain(s);
        OwnedString csv;
        lfx_status s = lfx_archive_heatmap_csv(archive, &csv.text);
        lfx_archive_free(archive);
        if (s) return complain(s);
        std::ofstream out(heatmap_path, std::ios::binary);
        out << csv.text;
    }
    return lfx_result_success(result.get()) ? 0 : 1;
}

int cmd_corrupt(const std::string& file, const std::string& band, int count, uint64_t seed,
                int64_t max_attempts, std::string out_dir) {
    int lo = 0, hi = 0;
    if (!parse_band(band, lo, hi)) {
        std::fprintf(stderr, "error: band must look like LO-HI, e.g. 70-90\n");
        return 3;
    }
    LevelPtr level;
    {
        lfx_level* raw = nullptr;
        if (lfx_status s = lfx_level_load(file.c_str(), &raw)) return complain(s);
        level.reset(raw);
    }
    // The source must be fully playable before it is degraded.
    lfx_eval_report report;
    if (lfx_status s = lfx_evaluate(level.get(), nullptr, &report)) return complain(s);
    if (!report.playable) {
        std::fprintf(stderr, "error: %s is not fully playable (gold %d/%d)\n", file.c_str(),
                     report.gold_collect, report.gold_total);
        return 3;
    }

    if (out_dir.empty()) out_dir = ".";
    fs::create_directories(out_dir);
    const std::string stem = fs::path(file).stem().string();

    for (int k = 0; k < count; ++k) {
        lfx_level* broken = nullptr;
        if (lfx_status s =
                lfx_corrupt(level.get(), lo, hi, fnv_mix(seed, k), max_attempts, &broken)) {
            return complain(s);
        }
        LevelPtr holder(broken);
        const std::string out_path =
            (fs::path(out_dir) / (stem + "_b" + std::to_string(lo) + "-" + std::to_string(hi) +
                                  "_" + std::to_string(k) + ".txt"))
                .string();
        if (lfx_status s = lfx_level_save(broken, out_path.c_str())) return complain(s);

        lfx_eval_report check;
        if (lfx_status s = lfx_evaluate(broken, nullptr, &check)) return complain(s);
        nlohmann::ordered_json j;
        j["file"] = out_path;
        j["gold_ratio_percent"] = 100.0 * check.gold_collect / check.gold_total;
        j["playability"] = check.playability;
        std::printf("%s\n", j.dump().c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lodefix: search-based repair for Lode Runner tile levels"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(lfx_version()));

    std::string eval_file;
    auto* eval = app.add_subcommand("evaluate", "Flood-fill playability report for a level");
    eval->add_option("file", eval_file, "level file")->required();

    std::string repair_file, repair_algo = "es", repair_out, repair_record, repair_heatmap;
    int64_t repair_budget = 200000, repair_stride = 1000;
    uint64_t repair_seed = 0;
    int repair_mu = 50, repair_lambda = 50, repair_init = 100, repair_mmax = 10;
    bool uncounted_init = false;
    auto* repair = app.add_subcommand("repair", "Search for a minimally-changed playable level");
    repair->add_option("file", repair_file, "broken level file")->required();
    repair->add_option("--algo", repair_algo, "rs | hc | es | me")->default_val("es");
    repair->add_option("--budget", repair_budget, "evaluation budget")->default_val(200000);
    repair->add_option("--seed", repair_seed, "rng seed")->default_val(0);
    repair->add_option("--mu", repair_mu, "ES parents")->default_val(50);
    repair->add_option("--lambda", repair_lambda, "ES offspring per generation")->default_val(50);
    repair->add_option("--init-count", repair_init, "ME initial mutants")->default_val(100);
    repair->add_option("--m-max", repair_mmax, "max mutated tiles per application")
        ->default_val(10);
    repair->add_option("--curve-stride", repair_stride, "best-so-far sample stride")
        ->default_val(1000);
    repair->add_flag("--uncounted-init", uncounted_init,
                     "do not charge the initial population against the budget");
    repair->add_option("--out", repair_out, "repaired level path (default <stem>.repaired.txt)");
    repair->add_option("--record", repair_record, "write the run record JSON here too");
    repair->add_option("--heatmap", repair_heatmap, "write the archive heatmap CSV (es/me)");

    std::string corrupt_file, corrupt_band, corrupt_dir;
    int corrupt_count = 1;
    uint64_t corrupt_seed = 0;
    int64_t corrupt_attempts = 100000;
    auto* corrupt = app.add_subcommand("corrupt", "Generate broken variants of a playable level");
    corrupt->add_option("file", corrupt_file, "fully playable level file")->required();
    corrupt->add_option("--band", corrupt_band, "target gold-ratio band, e.g. 30-50")->required();
    corrupt->add_option("--count", corrupt_count, "levels to generate")->default_val(1);
    corrupt->add_option("--seed", corrupt_seed, "rng seed")->default_val(0);
    corrupt->add_option("--max-attempts", corrupt_attempts, "flood fills before giving up")
        ->default_val(100000);
    corrupt->add_option("--out-dir", corrupt_dir, "output directory (default .)");

    std::string exp_config;
    auto* experiment = app.add_subcommand("experiment", "Run a batch experiment from a config");
    experiment->add_option("config", exp_config, "JSON config file")->required();

    std::string report_dir, report_out;
    auto* report = app.add_subcommand("report", "Recompute aggregate tables from runs.jsonl");
    report->add_option("records-dir", report_dir, "directory holding runs.jsonl")->required();
    report->add_option("--out-dir", report_out, "where to write tables (default records dir)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return 3;
    }

    if (eval->parsed()) return cmd_evaluate(eval_file);
    if (repair->parsed()) {
        lfx_repair_params params;
        lfx_repair_params_init(&params);
        params.algorithm = repair_algo.c_str();
        params.budget = repair_budget;
        params.seed = repair_seed;
        params.mu = repair_mu;
        params.lambda = repair_lambda;
        params.init_count = repair_init;
        params.m_max = repair_mmax;
        params.count_init_evals = uncounted_init ? 0 : 1;
        params.curve_stride = repair_stride;
        return cmd_repair(repair_file, params, repair_out, repair_record, repair_heatmap);
    }
    if (corrupt->parsed()) {
        return cmd_corrupt(corrupt_file, corrupt_band, corrupt_count, corrupt_seed,
                           corrupt_attempts, corrupt_dir);
    }
    if (experiment->parsed()) {
        if (lfx_status s = lfx_experiment_run(exp_config.c_str())) return complain(s);
        return 0;
    }
    if (report->parsed()) {
        if (lfx_status s = lfx_report_run(report_dir.c_str(),
                                          report_out.empty() ? nullptr : report_out.c_str())) {
            return complain(s);
        }
        return 0;
    }
    return 3;
}
