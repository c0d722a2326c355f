#include <doctest.h>

#include "support.hpp"
#include "taskseq/errors.hpp"
#include "taskseq/gridworld.hpp"

using namespace taskseq;

TEST_SUITE("gridworld") {

TEST_CASE("stepping into a pit ends the episode at -2500") {
    auto g = GridWorldSpec::from_ascii({"SP.", "..T"});
    auto s = gridworld_step(g, {0, 0}, GridAction::East);
    CHECK(s.next == Cell{1, 0});
    CHECK(s.reward == -2500.0);
    CHECK(s.done);
}

TEST_CASE("free cell next to a fire costs -250") {
    auto g = GridWorldSpec::from_ascii({"S..", ".F.", "..T"});
    auto s = gridworld_step(g, {0, 0}, GridAction::East);
    CHECK(s.reward == -250.0);
    CHECK_FALSE(s.done);
    // diagonal neighbours do not count
    auto g2 = GridWorldSpec::from_ascii({"S..", "...", "..F", "T.."});
    CHECK(gridworld_step(g2, {0, 0}, GridAction::East).reward == -1.0);
    CHECK(gridworld_entry_reward(g2, {1, 1}) == -1.0);
    CHECK(gridworld_entry_reward(g2, {2, 1}) == -250.0);
}

TEST_CASE("fire, treasure and default rewards") {
    auto g = GridWorldSpec::from_ascii({"SFT", "..."});
    auto fire = gridworld_step(g, {0, 0}, GridAction::East);
    CHECK(fire.reward == -500.0);
    CHECK_FALSE(fire.done);
    auto treasure = gridworld_step(g, {1, 0}, GridAction::East);
    CHECK(treasure.reward == 200.0);
    CHECK(treasure.done);
    CHECK(gridworld_step(g, {1, 1}, GridAction::East).reward == -1.0);
}

TEST_CASE("treasure next to a fire still pays +200") {
    auto g = GridWorldSpec::from_ascii({"S.T", "..F"});
    CHECK(gridworld_entry_reward(g, {2, 0}) == 200.0);
}

TEST_CASE("bumping the boundary stays put and charges the occupied cell") {
    auto g = GridWorldSpec::from_ascii({"S..", "...", "..T"});
    auto s = gridworld_step(g, {0, 0}, GridAction::North);
    CHECK(s.next == Cell{0, 0});
    CHECK(s.reward == -1.0);
    CHECK_FALSE(s.done);

    auto hot = GridWorldSpec::from_ascii({"S.F", "..T"});
    auto h = gridworld_step(hot, {1, 0}, GridAction::North);
    CHECK(h.next == Cell{1, 0});
    CHECK(h.reward == -250.0);
    auto in_fire = gridworld_step(hot, {2, 0}, GridAction::East);
    CHECK(in_fire.next == Cell{2, 0});
    CHECK(in_fire.reward == -500.0);
}

TEST_CASE("moves in all four directions") {
    auto g = GridWorldSpec::from_ascii({"...", ".S.", "..T"});
    CHECK(gridworld_step(g, {1, 1}, GridAction::North).next == Cell{1, 0});
    CHECK(gridworld_step(g, {1, 1}, GridAction::South).next == Cell{1, 2});
    CHECK(gridworld_step(g, {1, 1}, GridAction::East).next == Cell{2, 1});
    CHECK(gridworld_step(g, {1, 1}, GridAction::West).next == Cell{0, 1});
}

TEST_CASE("out-of-bounds state is a contract violation") {
    auto g = GridWorldSpec::from_ascii({"S.T"});
    CHECK_THROWS_AS(gridworld_step(g, {3, 0}, GridAction::East), ContractViolation);
    CHECK_THROWS_AS(gridworld_step(g, {0, -1}, GridAction::East), ContractViolation);
}

TEST_CASE("map parsing and validation") {
    auto g = GridWorldSpec::from_ascii({"S.F", "P.T"});
    CHECK(g.width == 3);
    CHECK(g.height == 2);
    CHECK(g.start == Cell{0, 0});
    CHECK(g.at({2, 0}) == GridCell::Fire);
    CHECK(g.at({0, 1}) == GridCell::Pit);
    CHECK(g.to_ascii() == std::vector<std::string>{"S.F", "P.T"});

    CHECK_THROWS_AS(GridWorldSpec::from_ascii({"S.."}), ConfigError);        // no treasure
    CHECK_THROWS_AS(GridWorldSpec::from_ascii({"..T"}), ConfigError);        // no start
    CHECK_THROWS_AS(GridWorldSpec::from_ascii({"S.T", ".."}), ConfigError);  // ragged
    CHECK_THROWS_AS(GridWorldSpec::from_ascii({"S.X", "..T"}), ConfigError);
    CHECK_THROWS_AS(GridWorldSpec::from_ascii({}), ConfigError);
}

TEST_CASE("step is deterministic") {
    auto g = GridWorldSpec::from_ascii({"S.F", "P.T"});
    for (int a = 0; a < kGridActions; ++a) {
        auto x = gridworld_step(g, {1, 0}, static_cast<GridAction>(a));
        auto y = gridworld_step(g, {1, 0}, static_cast<GridAction>(a));
        CHECK(x.next == y.next);
        CHECK(x.reward == y.reward);
        CHECK(x.done == y.done);
    }
}

}
