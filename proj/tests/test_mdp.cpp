#include <doctest.h>

#include <vector>

#include "support.hpp"
#include "taskseq/errors.hpp"
#include "taskseq/mdp.hpp"

using namespace taskseq;
using taskseq::test::grid_task;

namespace {

Policy always(int a) {
    return [a](const EnvState&, Rng&) { return a; };
}

}  // namespace

TEST_SUITE("mdp") {

TEST_CASE("discounted return") {
    const std::vector<double> r{2, 3, 4};
    CHECK(discounted_return(r, 0.5) == doctest::Approx(4.5));
    CHECK(discounted_return(r, 1.0) == doctest::Approx(9.0));
    CHECK(discounted_return({}, 0.9) == 0.0);
}

TEST_CASE("one step onto the treasure") {
    auto t = grid_task("c", {"ST"});
    Rng rng(0);
    auto r = run_episode(t, always(static_cast<int>(GridAction::East)), rng);
    CHECK(r.discounted_return == 200.0);
    CHECK(r.steps == 1);
    CHECK(r.termination == Termination::Absorbing);
}

TEST_CASE("step limit ends the episode without absorbing") {
    auto t = grid_task("c", {"S.T"}, 7);
    Rng rng(0);
    auto r = run_episode(t, always(static_cast<int>(GridAction::West)), rng);
    CHECK(r.steps == 7);
    CHECK(r.discounted_return == -7.0);
    CHECK(r.termination == Termination::StepLimit);
}

TEST_CASE("episode return honours gamma") {
    auto t = grid_task("c", {"S.T"}, 100, 0.5);
    Rng rng(0);
    auto r = run_episode(t, always(static_cast<int>(GridAction::East)), rng);
    CHECK(r.discounted_return == doctest::Approx(-1.0 + 0.5 * 200.0));
    CHECK(r.steps == 2);
}

TEST_CASE("optimal return by dynamic programming") {
    CHECK(optimal_return(grid_task("a", {"S.T"})) == doctest::Approx(199.0));
    CHECK(optimal_return(grid_task("b", {"S.T"}, 100, 0.5)) == doctest::Approx(99.0));
    // too short a horizon to reach the treasure
    CHECK(optimal_return(grid_task("c", {"S..T"}, 2)) == doctest::Approx(-2.0));
    // the detour passes one fire-adjacent cell and still beats the fire
    CHECK(optimal_return(grid_task("d", {"S.", "F.", "T."})) == doctest::Approx(-1 - 250 - 1 + 200.0));

    TaskSpec bd;
    bd.task_id = "bd";
    bd.env = BlockDudeSpec::from_ascii({".......E", "......##", ".s..b.##", "########"});
    CHECK(optimal_return(bd) == doctest::Approx(-8.0));
}

TEST_CASE("environment dispatch") {
    auto g = grid_task("g", {"S.T"});
    CHECK(env_kind(g.env) == EnvKind::GridWorld);
    CHECK(num_actions(g.env) == kGridActions);
    CHECK(std::get<Cell>(initial_state(g.env)) == Cell{0, 0});

    EnvSpec bd = BlockDudeSpec::from_ascii({"s.E", "###"});
    CHECK(env_kind(bd) == EnvKind::BlockDude);
    CHECK(num_actions(bd) == kBlockDudeActions);
    auto tr = env_step(bd, initial_state(bd), static_cast<int>(BlockDudeAction::Right));
    CHECK(tr.reward == -1.0);
    CHECK_FALSE(tr.done);
    CHECK(state_key(tr.next) != state_key(initial_state(bd)));
}

TEST_CASE("task validation") {
    auto t = grid_task("ok", {"S.T"});
    CHECK_NOTHROW(t.validate());
    t.task_id = "a,b";
    CHECK_THROWS_AS(t.validate(), ConfigError);
    t.task_id = "a b";
    CHECK_THROWS_AS(t.validate(), ConfigError);
    t.task_id = "ok";
    t.max_steps = 0;
    CHECK_THROWS_AS(t.validate(), ConfigError);
    t.max_steps = 10;
    t.gamma = 1.5;
    CHECK_THROWS_AS(t.validate(), ConfigError);
}

}
