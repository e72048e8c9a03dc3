#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/search.hpp"

namespace lodefix {

enum class Algo { Rs, Hc, Es, Me };

const char* algo_name(Algo algo);
std::optional<Algo> algo_from_name(std::string_view name);

struct RunParams {
    Algo algo = Algo::Es;
    Budget budget{200000};
    int mu = 50;
    int lambda = 50;
    int init_count = 100;
    MutationConfig mutation;
    SearchOptions options;
};

struct RunRecord {
    std::string level_id;
    std::string band; // "30-50" | "50-70" | "70-90" | "other"
    std::string algorithm;
    uint64_t seed = 0;
    double start_gold_ratio = 0.0; // percent of gold reachable in the input
    bool success = false;
    int changes = 0;
    double best_fitness = 0.0;
    int64_t evals_used = 0;
    int64_t evals_to_first_success = -1;
    int generations = 0;
    std::optional<double> qd_score; // ME archive / ES shadow archive
    std::optional<double> coverage;
    std::vector<std::pair<int64_t, double>> curve;
    std::vector<std::pair<int64_t, double>> qd_curve; // ME only
};

std::string record_to_json(const RunRecord& record);
RunRecord record_from_json(const std::string& line);

// Deterministic per-run seed, so any single run of an experiment can be
// reproduced in isolation.
uint64_t run_seed(uint64_t master_seed, std::string_view level_id, std::string_view algo,
                  int repeat);

std::string band_of_ratio(double percent);

struct RunOutcome {
    RunRecord record;
    SearchResult result;
    std::optional<Archive> archive; // ME archive or ES shadow archive
};

RunOutcome run_single(const Level& start, const std::string& level_id, const RunParams& params,
                      uint64_t seed);

struct ExperimentConfig {
    std::vector<std::string> level_paths;
    std::vector<Algo> algorithms{Algo::Rs, Algo::Hc, Algo::Es, Algo::Me};
    int repeats = 10;
    uint64_t master_seed = 0;
    std::string output_dir;
    int64_t budget_rs = 200000;
    int64_t budget_hc = 200000;
    int64_t budget_es = 200000;
    int64_t budget_me = 2000000;
    int mu = 50;
    int lambda = 50;
    int init_count = 100;
    int m_max = 10;
    int64_t curve_stride = 1000;
    bool count_init_evals = true;
    bool export_heatmaps = true;
};

ExperimentConfig load_experiment_config(const std::string& path);
RunParams params_for(const ExperimentConfig& config, Algo algo);

// Runs algorithms x levels x repeats, streaming records to
// <output_dir>/runs.jsonl, exporting per-run archive heatmaps, then writing
// the aggregate tables. Individual run failures are recorded, not fatal.
void run_experiment(const ExperimentConfig& config);

// Aggregate tables, a pure function of the record set: recomputing them from
// a stored runs.jsonl reproduces the experiment's outputs byte for byte.
void write_reports(const std::vector<RunRecord>& records, const std::string& out_dir);

std::vector<RunRecord> load_records(const std::string& records_dir);

} // namespace lodefix
