#pragma once

#include "core/level.hpp"
#include "core/reachability.hpp"

namespace lodefix {

// Cascading fitness: unplayable candidates compete on playability in [0,1],
// playable candidates on 1 + similarity in [1,2]. A level is playable when
// every gold is reachable.
struct FitnessBreakdown {
    double playability = 0.0;
    double similarity = 0.0;
    double total = 0.0;
    bool playable = false;
};

double playability_score(int gold_collect, int tiles_explored, int gold_total);
double playability_score(const ReachabilityReport& report);
double similarity_score(const Level& level, const Level& start);
FitnessBreakdown total_fitness(const Level& level, const Level& start);

struct BehaviorDescriptor {
    int ropes_delta = 0;   // rope count relative to the start level
    int ladders_delta = 0; // ladder count relative to the start level
    bool operator==(const BehaviorDescriptor&) const = default;
};

inline constexpr int kBinsPerAxis = 9;
inline constexpr int kArchiveCells = kBinsPerAxis * kBinsPerAxis;

struct BinIndex {
    int i = 0; // ropes axis
    int j = 0; // ladders axis

    int flat() const { return i * kBinsPerAxis + j; }
    bool operator==(const BinIndex&) const = default;
};

BehaviorDescriptor behavior_descriptor(const Level& level, const Level& start);

// 9-bin quantization of one axis: <0 | 0 | 1-5 | 6-10 | 11-15 | 16-20 | 21-60 | 61-100 | >100
int bin_axis(int delta);
BinIndex bin_descriptor(BehaviorDescriptor desc);
const char* bin_label(int bin);

// One evaluation = one flood fill; this is the unit every search budget
// counts. The counts are kept so callers never fill twice.
struct Evaluation {
    FitnessBreakdown fitness;
    ReachCounts counts;
    int changes = 0; // hamming distance to the start level
};

Evaluation evaluate(const Level& level, const Level& start);

} // namespace lodefix
