#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/archive.hpp"
#include "core/mutation.hpp"

namespace lodefix {

struct Budget {
    int64_t max_evaluations = 1; // one evaluation = one flood fill
};

struct SearchOptions {
    int64_t curve_stride = 1000; // best-so-far samples every N evaluations
    bool count_init_evals = true; // ES/ME: initial population consumes budget
};

struct SearchResult {
    Level best;
    double best_fitness = 0.0;
    bool success = false; // all gold reachable, i.e. best_fitness >= 1
    int changes = 0;      // hamming distance from best to start
    int64_t evals_used = 0;
    int64_t first_success_eval = -1; // -1 when no playable candidate was seen
    int generations = 0;             // ES only
    std::vector<std::pair<int64_t, double>> fitness_curve; // (eval, best-so-far)
};

// Baseline: evaluates the unmodified start first, then candidates with
// 0..20 random tile changes, keeping the best.
SearchResult random_search(const Level& start, Budget budget, const SearchOptions& options,
                           Rng& rng);

// Picks a random location, scores every alternative tile kind there, adopts
// the strictly best (ties keep the current tile, then the lowest ordinal).
SearchResult hill_climb(const Level& start, Budget budget, const SearchOptions& options,
                        Rng& rng);

struct EsResult {
    SearchResult search;
    Archive shadow_archive; // playable candidates only; never steers the search
};

// mu+lambda evolution strategy. Survivor ties break on fewer changes, then
// age. Runs whole generations only, so leftover budget smaller than lambda
// stays unused and generations == floor((budget - mu) / lambda) when the
// initial population is counted.
EsResult evolution_strategy(const Level& start, int mu, int lambda, Budget budget,
                            const MutationConfig& cfg, const SearchOptions& options, Rng& rng);

struct MeResult {
    SearchResult search;
    Archive archive;
    std::vector<std::pair<int64_t, double>> qd_curve; // (eval, qd score)
};

// MAP-Elites over the (added ropes, added ladders) grid: seeds the archive
// with init_count mutants of the start, then mutates a uniformly chosen elite
// per evaluation.
MeResult map_elites(const Level& start, Budget budget, int init_count,
                    const MutationConfig& cfg, const SearchOptions& options, Rng& rng);

} // namespace lodefix
