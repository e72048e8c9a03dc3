#pragma once

#include <cstdlib>
#include <string>

#include "core/level.hpp"

namespace testsupport {

inline std::string data_dir() {
    const char* env = std::getenv("LODEFIX_DATA_DIR");
    return env ? env : "data";
}

// 22 lines of '.', then individual tiles poked in. Not validated here; most
// callers build something that satisfies the Level invariants.
inline lodefix::Level blank_level() {
    lodefix::Level level;
    level.tiles.fill(lodefix::TileKind::Empty);
    return level;
}

// Minimal valid level: everything Empty except one Player and one Gold,
// side by side on the bottom row.
inline lodefix::Level minimal_level() {
    lodefix::Level level = blank_level();
    level.set({15, 21}, lodefix::TileKind::Player);
    level.set({16, 21}, lodefix::TileKind::Gold);
    return level;
}

inline std::string minimal_level_text() {
    std::string text;
    for (int row = 0; row < lodefix::kLevelHeight; ++row) {
        std::string line(lodefix::kLevelWidth, '.');
        if (row == 21) {
            line[15] = 'M';
            line[16] = 'G';
        }
        text += line;
        text += '\n';
    }
    return text;
}

} // namespace testsupport
