#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "core/fitness.hpp"

namespace lodefix {

struct ArchiveEntry {
    Level level;
    double fitness = 0.0;
    BinIndex bin;
};

// 9x9 MAP-Elites grid keyed by (added-ropes bin, added-ladders bin). Each
// occupied cell keeps the best candidate seen for that bin; ties keep the
// incumbent.
class Archive {
public:
    bool insert(const Level& candidate, double fitness, const Level& start);

    // Sum of stored fitnesses, accumulated in fixed cell order so an exported
    // and re-imported grid reproduces the value exactly.
    double qd_score() const;
    double coverage() const; // occupied / 81

    int occupied() const { return static_cast<int>(occupied_bins_.size()); }
    const std::optional<ArchiveEntry>& cell(int i, int j) const;
    const ArchiveEntry& entry_at(int flat) const;
    const std::vector<int>& occupied_bins() const { return occupied_bins_; }

private:
    std::array<std::optional<ArchiveEntry>, kArchiveCells> cells_;
    std::vector<int> occupied_bins_; // flat indices, in first-occupied order
};

// CSV heatmap: rows = rope bins, columns = ladder bins, header/leader cells
// carry the bin labels, '-' marks an empty cell, fitness at full precision.
void export_heatmap(const Archive& archive, std::ostream& out);
void export_heatmap_file(const Archive& archive, const std::string& path);

struct HeatmapGrid {
    std::array<std::optional<double>, kArchiveCells> fitness;

    double qd_score() const;
    double coverage() const;
};

HeatmapGrid import_heatmap(std::istream& in);
HeatmapGrid import_heatmap_file(const std::string& path);

} // namespace lodefix
