#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "pcg/level.hpp"
#include "pcg/maze.hpp"
#include "pcg/platformer.hpp"
#include "pcg/rng.hpp"

using namespace pcg;

namespace {

Level random_level(int w, int h, const AlphabetRef& alphabet, Rng& rng) {
    std::vector<TileId> cells(static_cast<std::size_t>(w) * h);
    for (auto& c : cells) {
        c = static_cast<TileId>(rng.next_below(alphabet->size()));
    }
    return Level(w, h, std::move(cells), alphabet);
}

}  // namespace

TEST_CASE("alphabet rejects duplicate ids and glyphs") {
    CHECK_THROWS_AS(TileAlphabet({{0, '.'}, {0, '#'}}), ConfigError);
    CHECK_THROWS_AS(TileAlphabet({{0, '.'}, {1, '.'}}), ConfigError);
    CHECK_THROWS_AS(TileAlphabet({}), ConfigError);
    const TileAlphabet a({{0, '.'}, {1, '#'}});
    CHECK(a.glyph_of(1) == '#');
    CHECK(a.id_of('.') == TileId{0});
    CHECK(!a.id_of('x'));
    CHECK(a.glyphs() == ".#");
}

TEST_CASE("level construction validates shape and cells") {
    const auto alphabet = maze::alphabet();
    CHECK_THROWS_AS(Level(0, 1, {}, alphabet), ShapeError);
    CHECK_THROWS_AS(Level(2, 2, {0, 0, 0}, alphabet), ShapeError);
    CHECK_THROWS_AS(Level(2, 2, {0, 0, 0, 9}, alphabet), ConfigError);
}

TEST_CASE("compute_diffs identity gives an empty change set") {
    Rng rng(1);
    const Level level = random_level(6, 4, maze::alphabet(), rng);
    CHECK(compute_diffs(level, level).empty());
}

TEST_CASE("compute_diffs emits row-major actions for differing cells") {
    const auto alphabet = maze::alphabet();
    const Level start(2, 2, {0, 0, 0, 0}, alphabet);
    const Level end(2, 2, {0, 1, 0, 1}, alphabet);
    const ChangeSet diff = compute_diffs(start, end);
    REQUIRE(diff.size() == 2);
    CHECK(diff.actions[0] == Action{1, 0, 1});
    CHECK(diff.actions[1] == Action{1, 1, 1});
}

TEST_CASE("compute_diffs rejects shape and alphabet mismatches") {
    const Level a(2, 2, {0, 0, 0, 0}, maze::alphabet());
    const Level b(2, 3, {0, 0, 0, 0, 0, 0}, maze::alphabet());
    CHECK_THROWS_AS(compute_diffs(a, b), ShapeError);
    const Level c(2, 2, {0, 0, 0, 0}, platformer::alphabet());
    CHECK_THROWS_AS(compute_diffs(a, c), ShapeError);
}

TEST_CASE("apply_action replaces exactly one cell and is pure") {
    const auto alphabet = maze::alphabet();
    const Level one(1, 1, {0}, alphabet);
    CHECK(apply_action(one, {0, 0, 1}).cells() == std::vector<TileId>{1});

    Rng rng(2);
    const Level level = random_level(5, 5, alphabet, rng);
    const std::vector<TileId> before = level.cells();
    for (int i = 0; i < 50; ++i) {
        const Action a{static_cast<int>(rng.next_below(5)),
                       static_cast<int>(rng.next_below(5)),
                       static_cast<TileId>(rng.next_below(2))};
        const Level next = apply_action(level, a);
        const int d = hamming_distance(level, next);
        const bool overwrite = level.at(a.x, a.y) == a.tile;
        CHECK(d == (overwrite ? 0 : 1));
        if (overwrite) {
            CHECK(next == level);
        }
    }
    CHECK(level.cells() == before);
}

TEST_CASE("apply_action rejects bad coordinates and tiles") {
    const Level level(2, 2, {0, 0, 0, 0}, maze::alphabet());
    CHECK_THROWS_AS(apply_action(level, {2, 0, 1}), ActionError);
    CHECK_THROWS_AS(apply_action(level, {0, -1, 1}), ActionError);
    CHECK_THROWS_AS(apply_action(level, {0, 0, 7}), ActionError);
}

TEST_CASE("apply_changes folds and reports the offending index") {
    const Level level(2, 2, {0, 0, 0, 0}, maze::alphabet());
    CHECK(apply_changes(level, {}) == level);

    ChangeSet bad;
    bad.actions = {{0, 0, 1}, {5, 5, 1}};
    try {
        apply_changes(level, bad);
        FAIL("expected ActionError");
    } catch (const ActionError& e) {
        CHECK(e.index == 1);
    }
}

TEST_CASE("diff round trip over random pairs") {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const Level s = random_level(10, 10, maze::alphabet(), rng);
        const Level e = random_level(10, 10, maze::alphabet(), rng);
        const ChangeSet diff = compute_diffs(s, e);
        CHECK(apply_changes(s, diff) == e);
        CHECK(static_cast<int>(diff.size()) == hamming_distance(s, e));
    }
}

TEST_CASE("change sets with unique coordinates commute") {
    Rng rng(4);
    for (int i = 0; i < 30; ++i) {
        const Level s = random_level(8, 8, platformer::alphabet(), rng);
        const Level e = random_level(8, 8, platformer::alphabet(), rng);
        ChangeSet diff = compute_diffs(s, e);
        const Level expected = apply_changes(s, diff);
        for (std::size_t k = diff.actions.size(); k > 1; --k) {
            std::swap(diff.actions[k - 1], diff.actions[rng.next_below(k)]);
        }
        CHECK(apply_changes(s, diff) == expected);
    }
}

TEST_CASE("hamming distance basics and metric properties") {
    const auto alphabet = maze::alphabet();
    const Level a(2, 2, {0, 0, 0, 0}, alphabet);
    const Level b(2, 2, {0, 1, 0, 1}, alphabet);
    CHECK(hamming_distance(a, a) == 0);
    CHECK(hamming_distance(a, b) == 2);
    const Level c(3, 2, {0, 0, 0, 0, 0, 0}, alphabet);
    CHECK_THROWS_AS(hamming_distance(a, c), ShapeError);

    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        const Level x = random_level(7, 7, alphabet, rng);
        const Level y = random_level(7, 7, alphabet, rng);
        const Level z = random_level(7, 7, alphabet, rng);
        CHECK(hamming_distance(x, y) == hamming_distance(y, x));
        CHECK(hamming_distance(x, z) <=
              hamming_distance(x, y) + hamming_distance(y, z));
    }
}

TEST_CASE("text format round trip") {
    Rng rng(6);
    for (int i = 0; i < 20; ++i) {
        const Level level = random_level(9, 4, platformer::alphabet(), rng);
        const Level parsed = parse_level(to_text(level), platformer::alphabet());
        CHECK(parsed == level);
        CHECK(to_text(parsed) == to_text(level));
    }
}

TEST_CASE("text parsing is strict") {
    const auto alphabet = maze::alphabet();
    CHECK_THROWS_AS(parse_level("", alphabet), ParseError);
    CHECK_THROWS_AS(parse_level("2 2\n..\n.\n", alphabet), ParseError);   // short row
    CHECK_THROWS_AS(parse_level("2 2\n..\n...\n", alphabet), ParseError); // long row
    CHECK_THROWS_AS(parse_level("2 2\n..\n.x\n", alphabet), ParseError);  // bad glyph
    CHECK_THROWS_AS(parse_level("2\n..\n..\n", alphabet), ParseError);    // bad header
    CHECK_THROWS_AS(parse_level("2 2 9\n..\n..\n", alphabet), ParseError);
    CHECK_THROWS_AS(parse_level("2 2\n..\n..", alphabet), ParseError);    // no newline
    CHECK_THROWS_AS(parse_level("2 2\n..\n..\n..\n", alphabet), ParseError);
    CHECK_THROWS_AS(parse_level("0 2\n\n\n", alphabet), ParseError);
    const Level ok = parse_level("2 2\n.#\n#.\n", alphabet);
    CHECK(ok.at(1, 0) == maze::kWall);
    CHECK(ok.at(0, 1) == maze::kWall);
}
