#pragma once

#include <cstdint>
#include <vector>

#include "core/fitness.hpp"
#include "core/level.hpp"
#include "core/rng.hpp"

namespace lodefix {

// Gold and Player tiles are always protected: never picked as mutation
// targets and never produced by a random change, so repairs must reconnect
// the level instead of deleting unreachable gold.
struct MutationConfig {
    int m_max = 10;              // mutated locations per application: 1..m_max
    double p_random_at_f0 = 0.8; // random-vs-copy probability at fitness 0
    double p_random_at_f2 = 0.2; // ... at fitness 2
};

// Linear schedule between the two endpoints; fitness clamped to [0,2].
double p_random_mutation(const MutationConfig& cfg, double fitness);

struct MutationStats {
    int64_t random_picks = 0;
    int64_t copy_picks = 0;
};

// Picks 1..m_max distinct non-protected locations; each either takes a random
// different mutable kind or copies the start level's tile. `level` must share
// its Gold/Player cells with `start` (true for everything bred from it).
Level mutate(const Level& level, const Level& start, double parent_fitness,
             const MutationConfig& cfg, Rng& rng, MutationStats* stats = nullptr);

// n fitness-0 mutants of the start level (exploration-heavy schedule).
std::vector<Level> initial_population(const Level& start, int n, const MutationConfig& cfg,
                                      Rng& rng);

// k random tile changes at distinct non-protected locations, each to a
// uniformly random different mutable kind.
void apply_random_changes(TileGrid& grid, int k, Rng& rng);

// Degrades a fully playable level until the gold-reachable ratio lands in
// [band_lo, band_hi) percent, re-placing the player on a random empty tile
// before each check. Throws BandUnreachable after max_attempts flood fills.
Level corrupt_level(const Level& playable, int band_lo, int band_hi, Rng& rng,
                    int64_t max_attempts);

} // namespace lodefix
