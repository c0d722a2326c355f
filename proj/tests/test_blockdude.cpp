#include <doctest.h>

#include "taskseq/blockdude.hpp"
#include "taskseq/errors.hpp"
#include "taskseq/mdp.hpp"

using namespace taskseq;

namespace {

BlockDudeSpec level() {
    return BlockDudeSpec::from_ascii({".......E",
                                      "......##",
                                      ".s..b.##",
                                      "########"});
}

BlockDudeState run(const BlockDudeSpec& spec, std::initializer_list<BlockDudeAction> actions,
                   double* total = nullptr, bool* done = nullptr) {
    BlockDudeState s = blockdude_initial_state(spec);
    double sum = 0.0;
    bool finished = false;
    for (auto a : actions) {
        auto step = blockdude_step(spec, s, a);
        s = step.next;
        sum += step.reward;
        finished = step.done;
    }
    if (total) *total = sum;
    if (done) *done = finished;
    return s;
}

using A = BlockDudeAction;

}  // namespace

TEST_SUITE("blockdude") {

TEST_CASE("parsing") {
    auto spec = level();
    CHECK(spec.width == 8);
    CHECK(spec.height == 4);
    CHECK(spec.agent_start == Cell{1, 2});
    CHECK(spec.agent_facing == Facing::Right);
    CHECK(spec.exit == Cell{7, 0});
    CHECK(spec.boxes == std::vector<Cell>{{4, 2}});
    CHECK(spec.is_wall({6, 1}));
    CHECK_FALSE(spec.is_wall({5, 1}));
    CHECK(spec.to_ascii()[2] == ".s..b.##");
    CHECK(BlockDudeSpec::from_ascii({"z.E", "###"}).agent_facing == Facing::Left);
}

TEST_CASE("invalid levels are rejected") {
    CHECK_THROWS_AS(BlockDudeSpec::from_ascii({"s.b.E", "#...#"}), ConfigError);  // floating box
    CHECK_THROWS_AS(BlockDudeSpec::from_ascii({"s..", "###"}), ConfigError);      // no exit
    CHECK_THROWS_AS(BlockDudeSpec::from_ascii({"s.E", "#q#"}), ConfigError);
    CHECK_THROWS_AS(BlockDudeSpec::from_ascii({"ssE", "###"}), ConfigError);
}

TEST_CASE("every action costs one, including no-ops") {
    auto spec = level();
    auto s0 = blockdude_initial_state(spec);
    auto pick = blockdude_step(spec, s0, A::Pick);  // nothing in front
    CHECK(pick.reward == -1.0);
    CHECK(pick.next == s0);
    CHECK_FALSE(pick.done);
    auto put = blockdude_step(spec, s0, A::Put);  // carrying nothing
    CHECK(put.next == s0);
    CHECK(put.reward == -1.0);
    auto up = blockdude_step(spec, s0, A::Up);  // nothing to climb
    CHECK(up.next == s0);
}

TEST_CASE("moving sets facing and is blocked by solids") {
    auto spec = level();
    auto s = run(spec, {A::Left});
    CHECK(s.agent == Cell{0, 2});
    CHECK(s.facing == Facing::Left);
    s = run(spec, {A::Left, A::Left});
    CHECK(s.agent == Cell{0, 2});  // boundary
    s = run(spec, {A::Right, A::Right, A::Right});
    CHECK(s.agent == Cell{3, 2});  // box blocks
    CHECK(s.facing == Facing::Right);
}

TEST_CASE("the hand-solved level takes eight actions") {
    auto spec = level();
    double total = 0.0;
    bool done = false;
    auto s = run(spec, {A::Right, A::Right, A::Pick, A::Right, A::Put, A::Up, A::Up, A::Right}, &total,
                 &done);
    CHECK(done);
    CHECK(s.agent == spec.exit);
    CHECK(total == -8.0);
}

TEST_CASE("pick lifts the box above the agent and put drops it in front") {
    auto spec = level();
    auto s = run(spec, {A::Right, A::Right, A::Pick});
    CHECK(s.carrying);
    CHECK(s.boxes.empty());
    s = run(spec, {A::Right, A::Right, A::Pick, A::Right, A::Put});
    CHECK_FALSE(s.carrying);
    CHECK(s.boxes == std::vector<Cell>{{5, 2}});
    CHECK(s.agent == Cell{4, 2});
}

TEST_CASE("put lets the box fall to the first supported cell") {
    auto spec = BlockDudeSpec::from_ascii({"......E",
                                           "......#",
                                           ".sb...#",
                                           "#####.#",
                                           "#######"});
    auto s = blockdude_initial_state(spec);
    for (auto a : {A::Pick, A::Right, A::Right, A::Right, A::Put}) s = blockdude_step(spec, s, a).next;
    // agent at (4,2) drops toward (5,1); the box falls through (5,2) into the hole at (5,3)
    CHECK(s.agent == Cell{4, 2});
    CHECK(s.boxes == std::vector<Cell>{{5, 3}});
}

TEST_CASE("walking off a ledge falls") {
    auto spec = BlockDudeSpec::from_ascii({"s...E", "#...#", "#####"});
    auto s = blockdude_step(spec, blockdude_initial_state(spec), A::Right).next;
    CHECK(s.agent == Cell{1, 1});
}

TEST_CASE("up needs a one-high step with clear headroom") {
    auto spec = BlockDudeSpec::from_ascii({"..#E",
                                           "...#",
                                           "s.##",
                                           "####"});
    auto s = blockdude_initial_state(spec);
    s = blockdude_step(spec, s, A::Right).next;
    CHECK(s.agent == Cell{1, 2});
    auto up = blockdude_step(spec, s, A::Up).next;
    CHECK(up.agent == Cell{2, 1});
    // from (2,1) the next step (3,1) is solid but (3,0) holds the exit, headroom (2,0) is a wall
    auto blocked = blockdude_step(spec, up, A::Up).next;
    CHECK(blocked.agent == Cell{2, 1});
}

TEST_CASE("box count is conserved") {
    auto spec = level();
    Rng rng(3);
    auto s = blockdude_initial_state(spec);
    for (int i = 0; i < 2000; ++i) {
        auto a = static_cast<A>(rng.uniform_index(kBlockDudeActions));
        auto step = blockdude_step(spec, s, a);
        s = step.done ? blockdude_initial_state(spec) : step.next;
        REQUIRE(s.boxes.size() + (s.carrying ? 1u : 0u) == spec.boxes.size());
    }
}

TEST_CASE("K-step episodes return -K") {
    TaskSpec t;
    t.task_id = "bd";
    t.env = level();
    t.max_steps = 37;
    Rng rng(1);
    auto r = run_episode(t, [](const EnvState&, Rng&) { return static_cast<int>(A::Pick); }, rng);
    CHECK(r.steps == 37);
    CHECK(r.discounted_return == -37.0);
    CHECK(r.termination == Termination::StepLimit);
}

}
