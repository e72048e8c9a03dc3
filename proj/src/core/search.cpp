#include "core/search.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace lodefix {

namespace {

constexpr TileKind kMutableKinds[6] = {
    TileKind::Empty,  TileKind::Brick,  TileKind::SolidBrick,
    TileKind::Rope,   TileKind::Ladder, TileKind::Enemy,
};

// Budget accounting and best-so-far bookkeeping shared by all algorithms.
// Every call to eval() is exactly one flood fill and one budget unit;
// eval_free() is the uncounted-initialization variant.
class EvalTracker {
public:
    EvalTracker(const Level& start, Budget budget, const SearchOptions& options)
        : start_(start), budget_(budget.max_evaluations), stride_(options.curve_stride) {
        if (budget_ < 1) fail(ErrorCode::BadArgument, "budget must be >= 1");
        if (stride_ < 1) fail(ErrorCode::BadArgument, "curve stride must be >= 1");
        best_.level = start;
    }

    bool has_budget() const { return used_ < budget_; }
    int64_t remaining() const { return budget_ - used_; }
    int64_t used() const { return used_; }

    Evaluation eval(const Level& level) {
        const Evaluation ev = evaluate(level, start_);
        ++used_;
        note(level, ev, used_);
        if (used_ == 1 || used_ % stride_ == 0) {
            curve_.emplace_back(used_, best_.fitness);
        }
        return ev;
    }

    Evaluation eval_free(const Level& level) {
        const Evaluation ev = evaluate(level, start_);
        note(level, ev, used_);
        return ev;
    }

    SearchResult finish() const {
        SearchResult result;
        result.best = best_.level;
        result.best_fitness = best_.fitness;
        result.success = best_.fitness >= 1.0;
        result.changes = best_.changes;
        result.evals_used = used_;
        result.first_success_eval = first_success_;
        result.fitness_curve = curve_;
        if (result.fitness_curve.empty() || result.fitness_curve.back().first != used_) {
            result.fitness_curve.emplace_back(used_, best_.fitness);
        }
        return result;
    }

private:
    void note(const Level& level, const Evaluation& ev, int64_t eval_index) {
        if (!seeded_ || ev.fitness.total > best_.fitness) {
            best_ = {level, ev.fitness.total, ev.changes};
            seeded_ = true;
        }
        if (first_success_ < 0 && ev.fitness.total >= 1.0) {
            first_success_ = eval_index > 0 ? eval_index : 0;
        }
    }

    struct Best {
        Level level;
        double fitness = 0.0;
        int changes = 0;
    };

    const Level& start_;
    int64_t budget_;
    int64_t stride_;
    int64_t used_ = 0;
    bool seeded_ = false;
    Best best_;
    int64_t first_success_ = -1;
    std::vector<std::pair<int64_t, double>> curve_;
};

int draw_unprotected_location(const TileGrid& grid, Rng& rng) {
    for (;;) {
        const int idx = static_cast<int>(rng.below(kLevelSize));
        const TileKind kind = grid[idx];
        if (kind != TileKind::Gold && kind != TileKind::Player) return idx;
    }
}

} // namespace

SearchResult random_search(const Level& start, Budget budget, const SearchOptions& options,
                           Rng& rng) {
    EvalTracker tracker(start, budget, options);
    tracker.eval(start); // the 0-change candidate is always considered
    while (tracker.has_budget()) {
        const int k = static_cast<int>(rng.below(21)); // 0..20 changes
        Level candidate = start;
        apply_random_changes(candidate.tiles, k, rng);
        tracker.eval(candidate);
    }
    return tracker.finish();
}

SearchResult hill_climb(const Level& start, Budget budget, const SearchOptions& options,
                        Rng& rng) {
    EvalTracker tracker(start, budget, options);
    Level current = start;
    Evaluation current_ev = tracker.eval(current);

    while (tracker.has_budget()) {
        const int idx = draw_unprotected_location(current.tiles, rng);
        const TileKind current_kind = current.tiles[idx];

        // Keep-current competes at its known fitness; alternatives must win
        // strictly, and the ordinal scan order settles ties between them.
        double best_fitness = current_ev.fitness.total;
        TileKind best_kind = current_kind;
        Evaluation best_ev = current_ev;
        for (TileKind kind : kMutableKinds) {
            if (kind == current_kind) continue;
            if (!tracker.has_budget()) break;
            Level candidate = current;
            candidate.tiles[idx] = kind;
            const Evaluation ev = tracker.eval(candidate);
            if (ev.fitness.total > best_fitness) {
                best_fitness = ev.fitness.total;
                best_kind = kind;
                best_ev = ev;
            }
        }
        if (best_kind != current_kind) {
            current.tiles[idx] = best_kind;
            current_ev = best_ev;
        }
    }
    return tracker.finish();
}

EsResult evolution_strategy(const Level& start, int mu, int lambda, Budget budget,
                            const MutationConfig& cfg, const SearchOptions& options, Rng& rng) {
    if (mu < 1 || lambda < 1) fail(ErrorCode::BadArgument, "mu and lambda must be >= 1");

    struct Individual {
        Level level;
        Evaluation ev;
        int64_t birth;
    };

    EsResult out;
    EvalTracker tracker(start, budget, options);
    auto track = [&](const Level& level, bool counted) {
        const Evaluation ev = counted ? tracker.eval(level) : tracker.eval_free(level);
        if (ev.fitness.total >= 1.0) {
            out.shadow_archive.insert(level, ev.fitness.total, start);
        }
        return ev;
    };

    std::vector<Individual> population;
    population.reserve(mu + lambda);
    int64_t births = 0;
    for (int i = 0; i < mu; ++i) {
        if (options.count_init_evals && !tracker.has_budget()) break;
        Level level = mutate(start, start, 0.0, cfg, rng);
        const Evaluation ev = track(level, options.count_init_evals);
        population.push_back({std::move(level), ev, births++});
    }

    int generations = 0;
    const size_t survivors = population.size();
    while (tracker.remaining() >= lambda && survivors > 0) {
        for (int i = 0; i < lambda; ++i) {
            const Individual& parent = population[rng.below(survivors)];
            Level child = mutate(parent.level, start, parent.ev.fitness.total, cfg, rng);
            const Evaluation ev = track(child, true);
            population.push_back({std::move(child), ev, births++});
        }
        std::sort(population.begin(), population.end(),
                  [](const Individual& a, const Individual& b) {
                      if (a.ev.fitness.total != b.ev.fitness.total) {
                          return a.ev.fitness.total > b.ev.fitness.total;
                      }
                      if (a.ev.changes != b.ev.changes) return a.ev.changes < b.ev.changes;
                      return a.birth < b.birth;
                  });
        population.resize(survivors);
        ++generations;
    }

    out.search = tracker.finish();
    out.search.generations = generations;
    return out;
}

MeResult map_elites(const Level& start, Budget budget, int init_count,
                    const MutationConfig& cfg, const SearchOptions& options, Rng& rng) {
    if (init_count < 1) fail(ErrorCode::BadArgument, "init_count must be >= 1");

    MeResult out;
    EvalTracker tracker(start, budget, options);
    auto sample_qd = [&] {
        if (tracker.used() == 1 || tracker.used() % options.curve_stride == 0) {
            out.qd_curve.emplace_back(tracker.used(), out.archive.qd_score());
        }
    };

    for (int i = 0; i < init_count; ++i) {
        if (options.count_init_evals && !tracker.has_budget()) break;
        Level level = mutate(start, start, 0.0, cfg, rng);
        const Evaluation ev =
            options.count_init_evals ? tracker.eval(level) : tracker.eval_free(level);
        out.archive.insert(level, ev.fitness.total, start);
        if (options.count_init_evals) sample_qd();
    }

    while (tracker.has_budget() && out.archive.occupied() > 0) {
        const auto& bins = out.archive.occupied_bins();
        const int flat = bins[rng.below(bins.size())];
        const ArchiveEntry& parent = out.archive.entry_at(flat);
        Level child = mutate(parent.level, start, parent.fitness, cfg, rng);
        const Evaluation ev = tracker.eval(child);
        out.archive.insert(child, ev.fitness.total, start);
        sample_qd();
    }

    out.search = tracker.finish();
    if (out.qd_curve.empty() || out.qd_curve.back().first != tracker.used()) {
        out.qd_curve.emplace_back(tracker.used(), out.archive.qd_score());
    }
    return out;
}

} // namespace lodefix
