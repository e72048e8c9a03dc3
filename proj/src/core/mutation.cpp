#include "core/mutation.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace lodefix {

namespace {

constexpr TileKind kMutableKinds[6] = {
    TileKind::Empty,  TileKind::Brick,  TileKind::SolidBrick,
    TileKind::Rope,   TileKind::Ladder, TileKind::Enemy,
};

bool is_protected(TileKind kind) {
    return kind == TileKind::Gold || kind == TileKind::Player;
}

TileKind random_other_kind(TileKind current, Rng& rng) {
    int pick = static_cast<int>(rng.below(5));
    for (TileKind kind : kMutableKinds) {
        if (kind == current) continue;
        if (pick-- == 0) return kind;
    }
    return TileKind::Empty; // unreachable: current is always one of the six
}

// Uniform draw of a non-protected location not yet in chosen[0..n).
int draw_location(const TileGrid& grid, const int* chosen, int n, Rng& rng) {
    for (;;) {
        const int idx = static_cast<int>(rng.below(kLevelSize));
        if (is_protected(grid[idx])) continue;
        if (std::find(chosen, chosen + n, idx) != chosen + n) continue;
        return idx;
    }
}

} // namespace

double p_random_mutation(const MutationConfig& cfg, double fitness) {
    const double f = std::clamp(fitness, 0.0, 2.0);
    return cfg.p_random_at_f0 + (cfg.p_random_at_f2 - cfg.p_random_at_f0) * (f / 2.0);
}

Level mutate(const Level& level, const Level& start, double parent_fitness,
             const MutationConfig& cfg, Rng& rng, MutationStats* stats) {
    if (cfg.m_max < 1) fail(ErrorCode::BadArgument, "m_max must be >= 1");

    Level out = level;
    const double p_random = p_random_mutation(cfg, parent_fitness);
    const int k = rng.range(1, cfg.m_max);
    std::vector<int> chosen;
    chosen.reserve(k);

    for (int i = 0; i < k; ++i) {
        const int idx = draw_location(out.tiles, chosen.data(), i, rng);
        chosen.push_back(idx);
        if (rng.chance(p_random)) {
            out.tiles[idx] = random_other_kind(out.tiles[idx], rng);
            if (stats) ++stats->random_picks;
        } else {
            out.tiles[idx] = start.tiles[idx];
            if (stats) ++stats->copy_picks;
        }
    }
    return out;
}

std::vector<Level> initial_population(const Level& start, int n, const MutationConfig& cfg,
                                      Rng& rng) {
    if (n < 1) fail(ErrorCode::BadArgument, "population size must be >= 1");
    std::vector<Level> population;
    population.reserve(n);
    for (int i = 0; i < n; ++i) {
        population.push_back(mutate(start, start, 0.0, cfg, rng));
    }
    return population;
}

void apply_random_changes(TileGrid& grid, int k, Rng& rng) {
    std::vector<int> chosen;
    chosen.reserve(k);
    for (int i = 0; i < k; ++i) {
        const int idx = draw_location(grid, chosen.data(), i, rng);
        chosen.push_back(idx);
        grid[idx] = random_other_kind(grid[idx], rng);
    }
}

Level corrupt_level(const Level& playable, int band_lo, int band_hi, Rng& rng,
                    int64_t max_attempts) {
    if (!(30 <= band_lo && band_lo < band_hi && band_hi <= 90)) {
        fail(ErrorCode::BadArgument, "band must satisfy 30 <= lo < hi <= 90");
    }
    if (max_attempts < 1) fail(ErrorCode::BadArgument, "max_attempts must be >= 1");

    const Evaluation start_ev = evaluate(playable, playable);
    if (!start_ev.fitness.playable) {
        fail(ErrorCode::BadArgument, "corrupt input must be fully playable");
    }

    // Strip the player; it is re-placed fresh before every band check.
    TileGrid base = playable.tiles;
    base[playable.player_cell().index()] = TileKind::Empty;

    TileGrid work = base;
    for (int64_t attempt = 0; attempt < max_attempts; ++attempt) {
        apply_random_changes(work, rng.range(1, 3), rng);
        const Level candidate = place_player(work, rng);
        const Evaluation ev = evaluate(candidate, candidate);
        const double ratio = 100.0 * ev.counts.gold_collect / ev.counts.gold_total;
        if (ratio >= band_lo && ratio < band_hi) return candidate;
        if (ratio < band_lo) work = base; // overshot: restart from the source
    }
    fail(ErrorCode::BandUnreachable,
         "no corruption hit band [" + std::to_string(band_lo) + "," +
             std::to_string(band_hi) + ") within " + std::to_string(max_attempts) +
             " attempts");
}

} // namespace lodefix
