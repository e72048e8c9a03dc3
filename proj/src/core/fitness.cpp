#include "core/fitness.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace lodefix {

double playability_score(int gold_collect, int tiles_explored, int gold_total) {
    if (gold_total < 1) fail(ErrorCode::BadArgument, "gold_total must be >= 1");
    const double raw =
        (gold_collect + static_cast<double>(tiles_explored) / kLevelSize) / gold_total;
    return std::min(1.0, raw);
}

double playability_score(const ReachabilityReport& report) {
    return playability_score(report.gold_collect, report.tiles_explored, report.gold_total);
}

double similarity_score(const Level& level, const Level& start) {
    return static_cast<double>(kLevelSize - hamming_distance(level, start)) / kLevelSize;
}

FitnessBreakdown total_fitness(const Level& level, const Level& start) {
    return evaluate(level, start).fitness;
}

BehaviorDescriptor behavior_descriptor(const Level& level, const Level& start) {
    return {
        count_tiles(level, TileKind::Rope) - count_tiles(start, TileKind::Rope),
        count_tiles(level, TileKind::Ladder) - count_tiles(start, TileKind::Ladder),
    };
}

int bin_axis(int delta) {
    if (delta < 0) return 0;
    if (delta == 0) return 1;
    if (delta <= 5) return 2;
    if (delta <= 10) return 3;
    if (delta <= 15) return 4;
    if (delta <= 20) return 5;
    if (delta <= 60) return 6;
    if (delta <= 100) return 7;
    return 8;
}

BinIndex bin_descriptor(BehaviorDescriptor desc) {
    return {bin_axis(desc.ropes_delta), bin_axis(desc.ladders_delta)};
}

const char* bin_label(int bin) {
    static const char* kLabels[kBinsPerAxis] = {
        "<0", "0", "1-5", "6-10", "11-15", "16-20", "21-60", "61-100", ">100",
    };
    return kLabels[bin];
}

Evaluation evaluate(const Level& level, const Level& start) {
    thread_local FloodScratch scratch;
    const int player = level.player_cell().index();
    Evaluation ev;
    ev.counts = flood_fill_counts(grid_view(level), player, scratch);
    ev.changes = hamming_distance(level, start);

    ev.fitness.playability =
        playability_score(ev.counts.gold_collect, ev.counts.tiles_explored, ev.counts.gold_total);
    ev.fitness.similarity = static_cast<double>(kLevelSize - ev.changes) / kLevelSize;
    ev.fitness.playable = ev.counts.gold_collect == ev.counts.gold_total;
    ev.fitness.total =
        ev.fitness.playable ? 1.0 + ev.fitness.similarity : ev.fitness.playability;
    return ev;
}

} // namespace lodefix
