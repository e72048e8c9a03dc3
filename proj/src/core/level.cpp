#include "core/level.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "core/errors.hpp"

namespace lodefix {

namespace {

constexpr char kCharset[kTileKindCount] = {'.', 'b', 'B', '-', '#', 'G', 'E', 'M'};

} // namespace

char tile_to_char(TileKind kind) {
    return kCharset[static_cast<int>(kind)];
}

bool tile_from_char(char c, TileKind& out) {
    for (int i = 0; i < kTileKindCount; ++i) {
        if (kCharset[i] == c) {
            out = static_cast<TileKind>(i);
            return true;
        }
    }
    return false;
}

Cell Level::player_cell() const {
    for (int i = 0; i < kLevelSize; ++i) {
        if (tiles[i] == TileKind::Player) return Cell::from_index(i);
    }
    fail(ErrorCode::BadCardinality, "level has no player tile");
}

Level parse_level(std::string_view text) {
    std::vector<std::string_view> lines;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            pos = text.size();
        } else {
            lines.push_back(text.substr(pos, nl - pos));
            pos = nl + 1;
        }
    }
    if (lines.size() != kLevelHeight) {
        fail(ErrorCode::BadDimensions,
             "expected " + std::to_string(kLevelHeight) + " lines, got " +
                 std::to_string(lines.size()));
    }

    Level level;
    int players = 0;
    int golds = 0;
    for (int row = 0; row < kLevelHeight; ++row) {
        const std::string_view line = lines[row];
        if (static_cast<int>(line.size()) != kLevelWidth) {
            fail(ErrorCode::BadDimensions,
                 "line " + std::to_string(row + 1) + ": expected " +
                     std::to_string(kLevelWidth) + " chars, got " +
                     std::to_string(line.size()));
        }
        for (int col = 0; col < kLevelWidth; ++col) {
            TileKind kind;
            if (!tile_from_char(line[col], kind)) {
                fail(ErrorCode::BadChar,
                     "line " + std::to_string(row + 1) + ", column " +
                         std::to_string(col + 1) + ": unknown tile '" +
                         std::string(1, line[col]) + "'");
            }
            level.tiles[row * kLevelWidth + col] = kind;
            players += kind == TileKind::Player;
            golds += kind == TileKind::Gold;
        }
    }
    if (players != 1) {
        fail(ErrorCode::BadCardinality,
             "expected exactly 1 player, got " + std::to_string(players));
    }
    if (golds < 1) {
        fail(ErrorCode::BadCardinality, "level has no gold");
    }
    return level;
}

std::string serialize_level(const Level& level) {
    std::string out;
    out.reserve(kLevelSize + kLevelHeight);
    for (int row = 0; row < kLevelHeight; ++row) {
        for (int col = 0; col < kLevelWidth; ++col) {
            out.push_back(tile_to_char(level.at(col, row)));
        }
        out.push_back('\n');
    }
    return out;
}

Level load_level(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open level file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_level(buf.str());
}

void save_level(const Level& level, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot write level file: " + path);
    out << serialize_level(level);
    if (!out) fail(ErrorCode::Io, "write failed: " + path);
}

int hamming_distance(const Level& a, const Level& b) {
    int dist = 0;
    for (int i = 0; i < kLevelSize; ++i) dist += a.tiles[i] != b.tiles[i];
    return dist;
}

int count_tiles(const Level& level, TileKind kind) {
    int count = 0;
    for (int i = 0; i < kLevelSize; ++i) count += level.tiles[i] == kind;
    return count;
}

Level place_player(const TileGrid& grid, Rng& rng) {
    int empties = 0;
    int golds = 0;
    for (int i = 0; i < kLevelSize; ++i) {
        if (grid[i] == TileKind::Player) {
            fail(ErrorCode::BadArgument, "grid already contains a player");
        }
        empties += grid[i] == TileKind::Empty;
        golds += grid[i] == TileKind::Gold;
    }
    if (empties == 0) fail(ErrorCode::NoEmptyTile, "no empty tile to place the player on");
    if (golds == 0) fail(ErrorCode::BadCardinality, "grid has no gold");

    int target = static_cast<int>(rng.below(static_cast<uint64_t>(empties)));
    Level level;
    level.tiles = grid;
    for (int i = 0; i < kLevelSize; ++i) {
        if (grid[i] == TileKind::Empty && target-- == 0) {
            level.tiles[i] = TileKind::Player;
            return level;
        }
    }
    fail(ErrorCode::NoEmptyTile, "unreachable");
}

} // namespace lodefix
