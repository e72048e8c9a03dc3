#pragma once

#include <cstdint>
#include <vector>

#include "core/level.hpp"

namespace lodefix {

// Movement model (classic Lode Runner minus digging):
//  - Brick and SolidBrick can never be entered; every other tile can,
//    including Gold, Enemy and Player tiles.
//  - A cell "supports" the player if its tile is Ladder or Rope, it lies on
//    the bottom row, or the tile directly below is Brick/SolidBrick/Ladder.
//  - From an unsupported cell the only move is the forced fall into the cell
//    below. From a supported cell: left/right neighbours that are enterable,
//    up when standing on a Ladder and the cell above is enterable, and down
//    when the cell below is enterable (ladder descent or a deliberate drop).
//  - The grid border is solid, except the bottom edge which acts as a floor.

struct GridView {
    const TileKind* tiles = nullptr;
    int width = 0;
    int height = 0;

    int size() const { return width * height; }
};

inline GridView grid_view(const Level& level) {
    return {level.tiles.data(), kLevelWidth, kLevelHeight};
}

bool is_enterable(TileKind kind);
bool is_supported(GridView grid, int idx);
bool is_supported(const Level& level, Cell cell);

// Writes the reachable neighbour indices of `idx` into out[]; returns count.
int moves_from(GridView grid, int idx, int out[4]);
std::vector<Cell> moves_from(const Level& level, Cell cell);

struct ReachabilityReport {
    std::vector<uint8_t> reachable; // one flag per cell, row-major
    int tiles_explored = 0;         // |reachable| (start cell included)
    int gold_collect = 0;           // Gold cells inside the reachable set
    int gold_total = 0;
};

ReachabilityReport flood_fill(GridView grid, int start_idx);
ReachabilityReport flood_fill(const Level& level); // from the player's cell

// Counts-only variant for the evaluation hot path; no allocation when the
// scratch buffers are reused between calls.
struct ReachCounts {
    int tiles_explored = 0;
    int gold_collect = 0;
    int gold_total = 0;
};

struct FloodScratch {
    std::vector<uint8_t> visited;
    std::vector<int32_t> stack;
};

ReachCounts flood_fill_counts(GridView grid, int start_idx, FloodScratch& scratch);

} // namespace lodefix
