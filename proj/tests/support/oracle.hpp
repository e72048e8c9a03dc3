#pragma once

// Independent reachability oracle for flood-fill verification: re-derives the
// movement rules from scratch per cell, builds the explicit move graph, and
// expands it by naive fixed-point iteration. Kept free of any engine
// traversal code on purpose.

#include <set>
#include <vector>

#include "core/level.hpp"

namespace testsupport {

using lodefix::TileKind;

struct MiniGrid {
    std::vector<TileKind> tiles;
    int width = 0;
    int height = 0;
};

inline bool oracle_enterable(TileKind t) {
    switch (t) {
    case TileKind::Brick:
    case TileKind::SolidBrick: return false;
    default: return true;
    }
}

inline std::vector<int> oracle_moves(const MiniGrid& g, int idx) {
    const int w = g.width;
    const int h = g.height;
    const int col = idx % w;
    const int row = idx / w;

    bool holds = false;
    if (g.tiles[idx] == TileKind::Ladder || g.tiles[idx] == TileKind::Rope) holds = true;
    if (row == h - 1) holds = true;
    if (!holds && row + 1 < h) {
        const TileKind under = g.tiles[idx + w];
        if (under == TileKind::Brick || under == TileKind::SolidBrick ||
            under == TileKind::Ladder) {
            holds = true;
        }
    }

    std::vector<int> out;
    if (!holds) {
        out.push_back(idx + w); // gravity wins
        return out;
    }
    if (col - 1 >= 0 && oracle_enterable(g.tiles[idx - 1])) out.push_back(idx - 1);
    if (col + 1 < w && oracle_enterable(g.tiles[idx + 1])) out.push_back(idx + 1);
    if (g.tiles[idx] == TileKind::Ladder && row - 1 >= 0 && oracle_enterable(g.tiles[idx - w])) {
        out.push_back(idx - w);
    }
    if (row + 1 < h && oracle_enterable(g.tiles[idx + w])) out.push_back(idx + w);
    return out;
}

// Fixed-point expansion over the explicit move graph.
inline std::set<int> oracle_reachable(const MiniGrid& g, int start) {
    std::set<int> reach{start};
    bool grew = true;
    while (grew) {
        grew = false;
        const std::set<int> snapshot = reach;
        for (int idx : snapshot) {
            for (int next : oracle_moves(g, idx)) {
                if (reach.insert(next).second) grew = true;
            }
        }
    }
    return reach;
}

// Random mini-level with one forced Player start; other random Player tiles
// may appear and are treated as plain enterable cells.
inline MiniGrid random_mini(int width, int height, lodefix::Rng& rng, int& start_out) {
    MiniGrid g;
    g.width = width;
    g.height = height;
    g.tiles.resize(width * height);
    for (auto& t : g.tiles) {
        t = static_cast<TileKind>(rng.below(lodefix::kTileKindCount));
    }
    start_out = static_cast<int>(rng.below(g.tiles.size()));
    g.tiles[start_out] = TileKind::Player;
    return g;
}

} // namespace testsupport
