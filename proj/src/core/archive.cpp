#include "core/archive.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "core/errors.hpp"

namespace lodefix {

bool Archive::insert(const Level& candidate, double fitness, const Level& start) {
    const BinIndex bin = bin_descriptor(behavior_descriptor(candidate, start));
    std::optional<ArchiveEntry>& cell = cells_[bin.flat()];
    if (cell && cell->fitness >= fitness) return false;
    if (!cell) occupied_bins_.push_back(bin.flat());
    cell = ArchiveEntry{candidate, fitness, bin};
    return true;
}

double Archive::qd_score() const {
    double sum = 0.0;
    for (const auto& cell : cells_) {
        if (cell) sum += cell->fitness;
    }
    return sum;
}

double Archive::coverage() const {
    return static_cast<double>(occupied_bins_.size()) / kArchiveCells;
}

const std::optional<ArchiveEntry>& Archive::cell(int i, int j) const {
    return cells_[i * kBinsPerAxis + j];
}

const ArchiveEntry& Archive::entry_at(int flat) const {
    const auto& cell = cells_[flat];
    if (!cell) fail(ErrorCode::BadArgument, "archive cell is empty");
    return *cell;
}

void export_heatmap(const Archive& archive, std::ostream& out) {
    out << "ropes\\ladders";
    for (int j = 0; j < kBinsPerAxis; ++j) out << ',' << bin_label(j);
    out << '\n';

    char buf[40];
    for (int i = 0; i < kBinsPerAxis; ++i) {
        out << bin_label(i);
        for (int j = 0; j < kBinsPerAxis; ++j) {
            const auto& cell = archive.cell(i, j);
            if (cell) {
                std::snprintf(buf, sizeof buf, "%.17g", cell->fitness);
                out << ',' << buf;
            } else {
                out << ",-";
            }
        }
        out << '\n';
    }
}

void export_heatmap_file(const Archive& archive, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot write heatmap: " + path);
    export_heatmap(archive, out);
}

double HeatmapGrid::qd_score() const {
    double sum = 0.0;
    for (const auto& cell : fitness) {
        if (cell) sum += *cell;
    }
    return sum;
}

double HeatmapGrid::coverage() const {
    int occupied = 0;
    for (const auto& cell : fitness) occupied += cell.has_value();
    return static_cast<double>(occupied) / kArchiveCells;
}

HeatmapGrid import_heatmap(std::istream& in) {
    HeatmapGrid grid;
    std::string line;
    if (!std::getline(in, line)) fail(ErrorCode::BadDimensions, "heatmap: missing header");
    for (int i = 0; i < kBinsPerAxis; ++i) {
        if (!std::getline(in, line)) fail(ErrorCode::BadDimensions, "heatmap: missing row");
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ','); // row label
        for (int j = 0; j < kBinsPerAxis; ++j) {
            if (!std::getline(row, field, ',')) {
                fail(ErrorCode::BadDimensions, "heatmap: short row");
            }
            if (field != "-") {
                grid.fitness[i * kBinsPerAxis + j] = std::strtod(field.c_str(), nullptr);
            }
        }
    }
    return grid;
}

HeatmapGrid import_heatmap_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open heatmap: " + path);
    return import_heatmap(in);
}

} // namespace lodefix
