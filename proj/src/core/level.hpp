#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "core/rng.hpp"

namespace lodefix {

// The eight Lode Runner tile kinds. Order matters: it is the ordinal used by
// the hill climber's tie-break and by the text charset table.
enum class TileKind : uint8_t {
    Empty,
    Brick,
    SolidBrick,
    Rope,
    Ladder,
    Gold,
    Enemy,
    Player,
};

inline constexpr int kTileKindCount = 8;
inline constexpr int kLevelWidth = 32;
inline constexpr int kLevelHeight = 22;
inline constexpr int kLevelSize = kLevelWidth * kLevelHeight; // 704

char tile_to_char(TileKind kind);
bool tile_from_char(char c, TileKind& out);

struct Cell {
    int col = 0;
    int row = 0;

    int index() const { return row * kLevelWidth + col; }
    static Cell from_index(int idx) { return {idx % kLevelWidth, idx / kLevelWidth}; }
    bool operator==(const Cell&) const = default;
};

using TileGrid = std::array<TileKind, kLevelSize>;

// A full 22x32 level. Valid levels hold exactly one Player and at least one
// Gold; parse_level/place_player enforce this and every operator preserves it.
struct Level {
    TileGrid tiles{};

    TileKind at(int col, int row) const { return tiles[row * kLevelWidth + col]; }
    TileKind at(Cell c) const { return tiles[c.index()]; }
    void set(Cell c, TileKind kind) { tiles[c.index()] = kind; }
    Cell player_cell() const;

    bool operator==(const Level&) const = default;
};

// Text format: 22 lines of 32 chars, LF endings, charset
//   '.'=Empty 'b'=Brick 'B'=SolidBrick '-'=Rope '#'=Ladder 'G'=Gold 'E'=Enemy 'M'=Player
Level parse_level(std::string_view text);
std::string serialize_level(const Level& level);
Level load_level(const std::string& path);
void save_level(const Level& level, const std::string& path);

int hamming_distance(const Level& a, const Level& b);
int count_tiles(const Level& level, TileKind kind);

// Places the one Player on a uniformly chosen Empty tile. The grid must hold
// no Player yet, at least one Empty tile, and at least one Gold.
Level place_player(const TileGrid& grid, Rng& rng);

} // namespace lodefix
