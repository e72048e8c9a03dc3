#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "support/util.hpp"

using namespace lodefix;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("band classification") {
    CHECK(band_of_ratio(29.9) == "other");
    CHECK(band_of_ratio(30.0) == "30-50");
    CHECK(band_of_ratio(49.99) == "30-50");
    CHECK(band_of_ratio(50.0) == "50-70");
    CHECK(band_of_ratio(69.99) == "50-70");
    CHECK(band_of_ratio(70.0) == "70-90");
    CHECK(band_of_ratio(89.99) == "70-90");
    CHECK(band_of_ratio(90.0) == "other");
    CHECK(band_of_ratio(100.0) == "other");
}

TEST_CASE("run seeds are stable and distinct") {
    const uint64_t base = run_seed(1, "quarry", "es", 0);
    CHECK(base == run_seed(1, "quarry", "es", 0));
    CHECK(base != run_seed(2, "quarry", "es", 0));
    CHECK(base != run_seed(1, "foundry", "es", 0));
    CHECK(base != run_seed(1, "quarry", "me", 0));
    CHECK(base != run_seed(1, "quarry", "es", 1));
}

TEST_CASE("run records survive a json round trip") {
    RunRecord rec;
    rec.level_id = "quarry_b30-50_s3";
    rec.band = "30-50";
    rec.algorithm = "me";
    rec.seed = 0xdeadbeef12345678ull;
    rec.start_gold_ratio = 36.0;
    rec.success = true;
    rec.changes = 5;
    rec.best_fitness = 1.9928977272727273;
    rec.evals_used = 500000;
    rec.evals_to_first_success = 1234;
    rec.generations = 0;
    rec.qd_score = 101.25;
    rec.coverage = 0.691358024691358;
    rec.curve = {{1, 0.2}, {1000, 0.8}, {500000, 1.99}};
    rec.qd_curve = {{100, 5.0}, {500000, 101.25}};

    const RunRecord back = record_from_json(record_to_json(rec));
    CHECK(back.level_id == rec.level_id);
    CHECK(back.band == rec.band);
    CHECK(back.algorithm == rec.algorithm);
    CHECK(back.seed == rec.seed);
    CHECK(back.start_gold_ratio == rec.start_gold_ratio);
    CHECK(back.success == rec.success);
    CHECK(back.changes == rec.changes);
    CHECK(back.best_fitness == rec.best_fitness);
    CHECK(back.evals_used == rec.evals_used);
    CHECK(back.evals_to_first_success == rec.evals_to_first_success);
    CHECK(back.qd_score == rec.qd_score);
    CHECK(back.coverage == rec.coverage);
    CHECK(back.curve == rec.curve);
    CHECK(back.qd_curve == rec.qd_curve);
    CHECK(record_to_json(back) == record_to_json(rec));
}

TEST_CASE("run_single labels the band from the starting level") {
    const Level broken = load_level(data_dir() + "/corpus/quarry_b30-50_s3.txt");
    RunParams params;
    params.algo = Algo::Rs;
    params.budget.max_evaluations = 50;
    const RunOutcome outcome = run_single(broken, "quarry_b30-50_s3", params, 42);
    CHECK(outcome.record.band == "30-50");
    CHECK(outcome.record.algorithm == "rs");
    CHECK(outcome.record.seed == 42);
    CHECK(outcome.record.evals_used == 50);
    CHECK_FALSE(outcome.archive.has_value());
}

TEST_CASE("experiment produces the full record grid and reproduces itself") {
    const fs::path dir = fresh_dir("lodefix_exp_test");
    const fs::path config_path = dir / "config.json";

    nlohmann::json config = {
        {"levels",
         {data_dir() + "/corpus/quarry_b70-90_s9.txt",
          data_dir() + "/corpus/foundry_b50-70_s5.txt"}},
        {"algorithms", {"rs", "hc"}},
        {"repeats", 3},
        {"master_seed", 77},
        {"output_dir", (dir / "out").string()},
        {"budget_rs", 400},
        {"budget_hc", 400},
        {"curve_stride", 100},
        {"export_heatmaps", false},
    };
    {
        std::ofstream out(config_path);
        out << config.dump(2);
    }

    run_experiment(load_experiment_config(config_path.string()));
    const auto records = load_records((dir / "out").string());
    CHECK(records.size() == 12); // 2 levels x 2 algorithms x 3 repeats

    // Re-running the identical config reproduces the record stream.
    config["output_dir"] = (dir / "out2").string();
    {
        std::ofstream out(config_path);
        out << config.dump(2);
    }
    run_experiment(load_experiment_config(config_path.string()));
    CHECK(slurp(dir / "out" / "runs.jsonl") == slurp(dir / "out2" / "runs.jsonl"));

    // Aggregates are a pure function of the records.
    const fs::path rerun = dir / "rebuilt";
    write_reports(records, rerun.string());
    for (const char* table : {"changes_by_band.csv", "changes_by_band_detail.csv",
                              "changes_by_level.csv", "fitness_curves.csv", "qd_curves.csv",
                              "coverage.csv"}) {
        CHECK(slurp(dir / "out" / table) == slurp(rerun / table));
    }
}

TEST_CASE("experiment config validation") {
    const fs::path dir = fresh_dir("lodefix_cfg_test");
    const fs::path config_path = dir / "bad.json";
    {
        std::ofstream out(config_path);
        out << R"({"levels": ["/nonexistent/level.txt"]})";
    }
    CHECK_THROWS_AS(load_experiment_config(config_path.string()), Error);
    {
        std::ofstream out(config_path);
        out << R"({"levels": [], "repeats": 0})";
    }
    CHECK_THROWS_AS(load_experiment_config(config_path.string()), Error);
    CHECK_THROWS_AS(load_experiment_config((dir / "missing.json").string()), Error);
}
