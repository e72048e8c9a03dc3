#include <doctest.h>

#include "core/archive.hpp"
#include "core/search.hpp"
#include "support/util.hpp"

#include <sstream>

using namespace lodefix;
using namespace testsupport;

namespace {

bool non_decreasing(const std::vector<std::pair<int64_t, double>>& curve) {
    for (size_t i = 1; i < curve.size(); ++i) {
        if (curve[i].second < curve[i - 1].second) return false;
    }
    return true;
}

} // namespace

TEST_CASE("archive replacement rules") {
    const Level start = minimal_level();
    Level ladder_one = start;
    ladder_one.set({0, 0}, TileKind::Ladder);

    Archive archive;
    CHECK(archive.insert(ladder_one, 0.5, start));
    CHECK(archive.occupied() == 1);
    CHECK(archive.qd_score() == 0.5);

    SUBCASE("equal fitness keeps the incumbent") {
        Level rival = start;
        rival.set({1, 0}, TileKind::Ladder);
        CHECK_FALSE(archive.insert(rival, 0.5, start));
        CHECK(archive.cell(1, 2)->level == ladder_one);
    }
    SUBCASE("higher fitness replaces and raises the qd score") {
        Level rival = start;
        rival.set({1, 0}, TileKind::Ladder);
        CHECK(archive.insert(rival, 0.9, start));
        CHECK(archive.qd_score() == doctest::Approx(0.9));
        CHECK(archive.occupied() == 1);
    }
    SUBCASE("different bin occupies a new cell") {
        Level ropes = start;
        ropes.set({1, 0}, TileKind::Rope);
        CHECK(archive.insert(ropes, 0.4, start));
        CHECK(archive.occupied() == 2);
        CHECK(archive.qd_score() == doctest::Approx(0.9));
        CHECK(archive.coverage() == doctest::Approx(2.0 / 81.0));
    }
}

TEST_CASE("archive cells store the bin their elite maps to") {
    const Level start = minimal_level();
    Archive archive;
    Rng rng(31);
    MutationConfig cfg;
    for (int i = 0; i < 200; ++i) {
        const Level cand = mutate(start, start, 0.0, cfg, rng);
        archive.insert(cand, evaluate(cand, start).fitness.total, start);
    }
    for (int flat : archive.occupied_bins()) {
        const ArchiveEntry& entry = archive.entry_at(flat);
        CHECK(bin_descriptor(behavior_descriptor(entry.level, start)).flat() == flat);
        CHECK(entry.bin.flat() == flat);
    }
}

TEST_CASE("heatmap export/import round-trips the qd score") {
    const Level start = minimal_level();
    Archive archive;
    Rng rng(63);
    MutationConfig cfg;
    for (int i = 0; i < 300; ++i) {
        const Level cand = mutate(start, start, 0.0, cfg, rng);
        archive.insert(cand, evaluate(cand, start).fitness.total, start);
    }
    std::stringstream buf;
    export_heatmap(archive, buf);
    const HeatmapGrid grid = import_heatmap(buf);
    CHECK(grid.qd_score() == archive.qd_score());
    CHECK(grid.coverage() == archive.coverage());
}

TEST_CASE("empty heatmap writes 81 empty markers") {
    Archive archive;
    std::stringstream buf;
    export_heatmap(archive, buf);
    int dashes = 0;
    for (char c : buf.str()) dashes += c == '-';
    // 81 empty cells; bin labels contribute a fixed 12 dashes of their own.
    CHECK(dashes == 81 + 12);
    CHECK(import_heatmap(buf).coverage() == 0.0);
}

TEST_CASE("random search basics") {
    const Level start = minimal_level(); // already playable
    SearchOptions options;

    SUBCASE("playable start succeeds immediately with zero changes") {
        Rng rng(4);
        const SearchResult result = random_search(start, {500}, options, rng);
        CHECK(result.success);
        CHECK(result.changes == 0);
        CHECK(result.first_success_eval == 1);
        CHECK(result.best_fitness == 2.0);
    }
    SUBCASE("budget of one evaluates exactly once") {
        Rng rng(4);
        const SearchResult result = random_search(start, {1}, options, rng);
        CHECK(result.evals_used == 1);
    }
    SUBCASE("fixed seed reproduces the run") {
        Rng a(12), b(12);
        const SearchResult ra = random_search(start, {2000}, options, a);
        const SearchResult rb = random_search(start, {2000}, options, b);
        CHECK(ra.best == rb.best);
        CHECK(ra.fitness_curve == rb.fitness_curve);
        CHECK(ra.evals_used == rb.evals_used);
    }
}

TEST_CASE("hill climber repairs a single deleted ladder tile") {
    const Level playable = load_level(data_dir() + "/levels/skyline.txt");
    Level broken = playable;
    // The top deck hangs on one ladder; cutting its bottom rung strands the
    // deck golds and a single restored tile repairs the level.
    REQUIRE(broken.at(16, 8) == TileKind::Ladder);
    broken.set({16, 8}, TileKind::Empty);
    REQUIRE_FALSE(evaluate(broken, broken).fitness.playable);

    SearchOptions options;
    Rng rng(2);
    const SearchResult result = hill_climb(broken, {60000}, options, rng);
    CHECK(result.success);
    CHECK(result.changes >= 1);
    CHECK(result.evals_used <= 60000);
    CHECK(non_decreasing(result.fitness_curve));
}

TEST_CASE("hill climber breaks fitness ties toward the lowest tile ordinal") {
    // A one-cell gap in a floor between the player and a gold, with a sealed
    // shaft underneath. Several tile kinds bridge it at identical fitness:
    // at (10,18) any of Brick/SolidBrick/Rope/Ladder, at (10,17) Rope or
    // Ladder. Whenever the climber lands on the one-change repair, the kind
    // it adopted must be the lowest ordinal that works at that cell. (Other
    // seeds legitimately lock in multi-tile detours first.)
    Level broken = blank_level();
    for (int col = 5; col <= 15; ++col) broken.set({col, 18}, TileKind::Brick);
    broken.set({10, 18}, TileKind::Empty); // the gap
    for (int row = 19; row <= 21; ++row) {
        broken.set({9, row}, TileKind::Brick);
        broken.set({11, row}, TileKind::Brick);
    }
    broken.set({6, 17}, TileKind::Player);
    broken.set({14, 17}, TileKind::Gold);
    REQUIRE_FALSE(evaluate(broken, broken).fitness.playable);

    SearchOptions options;
    int bricked_gap = 0;
    int roped_lip = 0;
    for (uint64_t seed = 1; seed <= 12; ++seed) {
        Rng rng(seed);
        const SearchResult result = hill_climb(broken, {40000}, options, rng);
        REQUIRE(result.success);
        if (result.changes != 1) continue;
        if (result.best.at(10, 18) != TileKind::Empty) {
            CHECK(result.best.at(10, 18) == TileKind::Brick);
            ++bricked_gap;
        } else {
            CHECK(result.best.at(10, 17) == TileKind::Rope);
            ++roped_lip;
        }
    }
    CHECK(bricked_gap > 0);
    CHECK(roped_lip > 0);
}

TEST_CASE("hill climber keeps a playable start unchanged") {
    const Level start = minimal_level();
    SearchOptions options;
    Rng rng(5);
    const SearchResult result = hill_climb(start, {3000}, options, rng);
    CHECK(result.success);
    CHECK(result.changes == 0);
    CHECK(result.best == start);
}

TEST_CASE("evolution strategy generation arithmetic") {
    const Level start = load_level(data_dir() + "/levels/quarry.txt");
    const MutationConfig cfg;
    SearchOptions options;

    SUBCASE("counted initialization") {
        Rng rng(6);
        const EsResult es = evolution_strategy(start, 10, 10, {100}, cfg, options, rng);
        CHECK(es.search.generations == 9); // floor((100 - 10) / 10)
        CHECK(es.search.evals_used == 100);
    }
    SUBCASE("uncounted initialization") {
        options.count_init_evals = false;
        Rng rng(6);
        const EsResult es = evolution_strategy(start, 10, 10, {100}, cfg, options, rng);
        CHECK(es.search.generations == 10);
        CHECK(es.search.evals_used == 100);
    }
    SUBCASE("budget smaller than one generation stops after init") {
        Rng rng(6);
        const EsResult es = evolution_strategy(start, 10, 10, {15}, cfg, options, rng);
        CHECK(es.search.generations == 0);
        CHECK(es.search.evals_used == 10);
    }
}

TEST_CASE("evolution strategy is deterministic and monotone") {
    const Level broken = load_level(data_dir() + "/corpus/quarry_b70-90_s9.txt");
    const MutationConfig cfg;
    SearchOptions options;
    options.curve_stride = 100;
    Rng a(3), b(3);
    const EsResult ra = evolution_strategy(broken, 20, 20, {4000}, cfg, options, a);
    const EsResult rb = evolution_strategy(broken, 20, 20, {4000}, cfg, options, b);
    CHECK(ra.search.best == rb.search.best);
    CHECK(ra.search.fitness_curve == rb.search.fitness_curve);
    CHECK(non_decreasing(ra.search.fitness_curve));
    CHECK(ra.shadow_archive.qd_score() == rb.shadow_archive.qd_score());
}

TEST_CASE("map elites fills its archive monotonically") {
    const Level broken = load_level(data_dir() + "/corpus/quarry_b70-90_s9.txt");
    const MutationConfig cfg;
    SearchOptions options;
    options.curve_stride = 200;
    Rng rng(13);
    const MeResult me = map_elites(broken, {6000}, 100, cfg, options, rng);
    CHECK(me.search.evals_used == 6000);
    CHECK(me.archive.occupied() > 0);
    CHECK(non_decreasing(me.qd_curve));
    CHECK(non_decreasing(me.search.fitness_curve));
    CHECK(me.qd_curve.back().second == me.archive.qd_score());

    Rng again(13);
    const MeResult repeat = map_elites(broken, {6000}, 100, cfg, options, again);
    CHECK(repeat.search.best == me.search.best);
    CHECK(repeat.archive.qd_score() == me.archive.qd_score());
}

TEST_CASE("all algorithms respect the evaluation budget") {
    const Level broken = load_level(data_dir() + "/corpus/foundry_b50-70_s5.txt");
    const MutationConfig cfg;
    SearchOptions options;
    Rng r1(1), r2(1), r3(1), r4(1);
    CHECK(random_search(broken, {777}, options, r1).evals_used == 777);
    CHECK(hill_climb(broken, {777}, options, r2).evals_used == 777);
    CHECK(evolution_strategy(broken, 50, 50, {777}, cfg, options, r3).search.evals_used <= 777);
    CHECK(map_elites(broken, {777}, 100, cfg, options, r4).search.evals_used == 777);
}

TEST_CASE("shadow archive only ever holds playable candidates") {
    const Level broken = load_level(data_dir() + "/corpus/quarry_b70-90_s9.txt");
    const MutationConfig cfg;
    SearchOptions options;
    Rng rng(21);
    const EsResult es = evolution_strategy(broken, 20, 20, {20000}, cfg, options, rng);
    for (int flat : es.shadow_archive.occupied_bins()) {
        CHECK(es.shadow_archive.entry_at(flat).fitness >= 1.0);
    }
}
