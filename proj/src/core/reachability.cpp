#include "core/reachability.hpp"

#include "core/errors.hpp"

namespace lodefix {

bool is_enterable(TileKind kind) {
    return kind != TileKind::Brick && kind != TileKind::SolidBrick;
}

bool is_supported(GridView grid, int idx) {
    const TileKind self = grid.tiles[idx];
    if (self == TileKind::Ladder || self == TileKind::Rope) return true;
    const int row = idx / grid.width;
    if (row == grid.height - 1) return true; // bottom edge acts as floor
    const TileKind below = grid.tiles[idx + grid.width];
    return below == TileKind::Brick || below == TileKind::SolidBrick ||
           below == TileKind::Ladder;
}

bool is_supported(const Level& level, Cell cell) {
    return is_supported(grid_view(level), cell.index());
}

int moves_from(GridView grid, int idx, int out[4]) {
    const int w = grid.width;
    const int col = idx % w;
    const int row = idx / w;

    // Unsupported: forced fall. Below is always enterable here, because
    // unsupported rules out Brick/SolidBrick below and the bottom row.
    if (!is_supported(grid, idx)) {
        out[0] = idx + w;
        return 1;
    }

    int n = 0;
    if (col > 0 && is_enterable(grid.tiles[idx - 1])) out[n++] = idx - 1;
    if (col + 1 < w && is_enterable(grid.tiles[idx + 1])) out[n++] = idx + 1;
    if (grid.tiles[idx] == TileKind::Ladder && row > 0 && is_enterable(grid.tiles[idx - w])) {
        out[n++] = idx - w;
    }
    if (row + 1 < grid.height && is_enterable(grid.tiles[idx + w])) out[n++] = idx + w;
    return n;
}

std::vector<Cell> moves_from(const Level& level, Cell cell) {
    int out[4];
    const int n = moves_from(grid_view(level), cell.index(), out);
    std::vector<Cell> cells;
    cells.reserve(n);
    for (int i = 0; i < n; ++i) cells.push_back(Cell::from_index(out[i]));
    return cells;
}

ReachCounts flood_fill_counts(GridView grid, int start_idx, FloodScratch& scratch) {
    const int n = grid.size();
    if (start_idx < 0 || start_idx >= n || !is_enterable(grid.tiles[start_idx])) {
        fail(ErrorCode::BadArgument, "flood fill start cell is not enterable");
    }

    scratch.visited.assign(n, 0);
    scratch.stack.clear();
    scratch.stack.reserve(n);

    ReachCounts counts;
    for (int i = 0; i < n; ++i) counts.gold_total += grid.tiles[i] == TileKind::Gold;

    scratch.visited[start_idx] = 1;
    scratch.stack.push_back(start_idx);
    while (!scratch.stack.empty()) {
        const int idx = scratch.stack.back();
        scratch.stack.pop_back();
        ++counts.tiles_explored;
        counts.gold_collect += grid.tiles[idx] == TileKind::Gold;

        int next[4];
        const int moves = moves_from(grid, idx, next);
        for (int i = 0; i < moves; ++i) {
            if (!scratch.visited[next[i]]) {
                scratch.visited[next[i]] = 1;
                scratch.stack.push_back(next[i]);
            }
        }
    }
    return counts;
}

ReachabilityReport flood_fill(GridView grid, int start_idx) {
    FloodScratch scratch;
    const ReachCounts counts = flood_fill_counts(grid, start_idx, scratch);
    ReachabilityReport report;
    report.reachable = std::move(scratch.visited);
    report.tiles_explored = counts.tiles_explored;
    report.gold_collect = counts.gold_collect;
    report.gold_total = counts.gold_total;
    return report;
}

ReachabilityReport flood_fill(const Level& level) {
    return flood_fill(grid_view(level), level.player_cell().index());
}

} // namespace lodefix
