#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "support.hpp"
#include "taskseq/errors.hpp"
#include "taskseq/sarsa.hpp"
#include "taskseq/task_io.hpp"

using namespace taskseq;
using taskseq::test::grid_task;

namespace {

TileCodingConfig one_tiling() {
    TileCodingConfig t;
    t.num_tilings = 1;
    t.tiles_per_dimension = 16;
    return t;
}

std::size_t feature_of(Cell c, const TileCodingConfig& t) {
    auto f = tile_features(observe(EnvState{c}), t);
    REQUIRE(f.size() == 1);
    return f[0];
}

}  // namespace

TEST_SUITE("tile_coding") {

TEST_CASE("one active feature per tiling, inside the table") {
    TileCodingConfig t;
    for (double x : {0.0, 3.3, 15.9}) {
        auto f = tile_features({{x, 2.0}, 0}, t);
        REQUIRE(f.size() == static_cast<std::size_t>(t.num_tilings));
        for (auto i : f) CHECK(i < t.hash_table_size);
        CHECK(f == tile_features({{x, 2.0}, 0}, t));
    }
}

TEST_CASE("nearby states share tiles and far ones do not") {
    TileCodingConfig t;
    auto a = tile_features({{4.0, 4.0}, 0}, t);
    auto near = tile_features({{4.5, 4.0}, 0}, t);
    auto far = tile_features({{12.0, 12.0}, 0}, t);
    std::set<std::size_t> sa(a.begin(), a.end());
    auto shared = [&](const std::vector<std::size_t>& o) {
        return std::count_if(o.begin(), o.end(), [&](std::size_t i) { return sa.count(i) > 0; });
    };
    CHECK(shared(near) > 0);
    CHECK(shared(near) < t.num_tilings);
    CHECK(shared(far) == 0);
}

TEST_CASE("context separates otherwise identical coordinates") {
    TileCodingConfig t;
    CHECK(tile_features({{4.0, 4.0}, 1}, t) != tile_features({{4.0, 4.0}, 2}, t));
}

TEST_CASE("config validation") {
    TileCodingConfig t;
    t.num_tilings = 0;
    CHECK_THROWS_AS(t.validate(), ConfigError);
    t = {};
    t.extent = -1;
    CHECK_THROWS_AS(t.validate(), ConfigError);
}

}

TEST_SUITE("qfunction") {

TEST_CASE("value is the sum of active weights") {
    QFunction q(TileCodingConfig{}, EnvKind::GridWorld);
    std::vector<std::size_t> f{1, 5, 9};
    q.weight(1, 2) = 1.5;
    q.weight(5, 2) = -0.5;
    q.weight(9, 3) = 4.0;
    CHECK(q.value(f, 2) == doctest::Approx(1.0));
    CHECK(q.value(f, 3) == doctest::Approx(4.0));
    std::vector<double> all;
    q.values(f, all);
    CHECK(all == std::vector<double>{0.0, 0.0, 1.0, 4.0});
}

TEST_CASE("save and load round trip") {
    QFunction q(TileCodingConfig{}, EnvKind::BlockDude);
    Rng rng(5);
    for (int i = 0; i < 300; ++i)
        q.weight(rng.uniform_index(q.config().hash_table_size), static_cast<int>(rng.uniform_index(5))) =
            rng.uniform01() * 10 - 5;
    std::stringstream buf;
    q.save(buf);
    CHECK(QFunction::load(buf) == q);

    std::stringstream junk("nope");
    CHECK_THROWS(QFunction::load(junk));
}

TEST_CASE("transfer copies weights and checks the action set") {
    QFunction q(TileCodingConfig{}, EnvKind::GridWorld);
    q.weight(3, 1) = 2.0;
    auto copy = transfer_value_function(q, grid_task("g", {"S.T"}));
    CHECK(copy == q);

    TaskSpec bd;
    bd.task_id = "bd";
    bd.env = BlockDudeSpec::from_ascii({"s.E", "###"});
    CHECK_THROWS_AS(transfer_value_function(q, bd), TransferError);
}

TEST_CASE("scaling every weight keeps the greedy action") {
    QFunction q(TileCodingConfig{}, EnvKind::GridWorld);
    Rng fill(11);
    for (auto& w : q.weights()) w = fill.uniform01() - 0.5;
    for (int s = 0; s < 50; ++s) {
        auto f = tile_features({{fill.uniform01() * 16, fill.uniform01() * 16}, 0}, q.config());
        Rng r1(1);
        const int before = epsilon_greedy(q, f, 0.0, r1);
        QFunction scaled = q;
        for (auto& w : scaled.weights()) w *= 3.7;
        Rng r2(1);
        CHECK(epsilon_greedy(scaled, f, 0.0, r2) == before);
    }
}

}

TEST_SUITE("sarsa") {

TEST_CASE("epsilon one is uniform over actions") {
    QFunction q(TileCodingConfig{}, EnvKind::GridWorld);
    q.weight(0, 2) = 100.0;
    std::vector<std::size_t> f{0};
    Rng rng(17);
    std::vector<int> counts(kGridActions, 0);
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) ++counts[static_cast<std::size_t>(epsilon_greedy(q, f, 1.0, rng))];
    const double p = 1.0 / kGridActions;
    const double sigma = std::sqrt(draws * p * (1 - p));
    for (int c : counts) CHECK(std::abs(c - draws * p) <= 3 * sigma);
}

TEST_CASE("greedy ties are broken uniformly") {
    QFunction q(TileCodingConfig{}, EnvKind::GridWorld);
    std::vector<std::size_t> f{0};
    Rng rng(3);
    std::set<int> seen;
    for (int i = 0; i < 200; ++i) seen.insert(epsilon_greedy(q, f, 0.0, rng));
    CHECK(seen.size() == static_cast<std::size_t>(kGridActions));
}

TEST_CASE("hand-computed updates on a two-step chain") {
    const auto tiles = one_tiling();
    const auto task = grid_task("chain", {"S.T"});
    const std::size_t f0 = feature_of({0, 0}, tiles);
    const std::size_t f1 = feature_of({1, 0}, tiles);
    REQUIRE(f0 != f1);
    const int east = static_cast<int>(GridAction::East);

    QFunction init(tiles, EnvKind::GridWorld);
    init.weight(f0, east) = 1.0;
    init.weight(f1, east) = 5.0;

    LearnerConfig cfg;
    cfg.alpha = 0.5;
    cfg.epsilon = 0.0;

    SUBCASE("one-step Sarsa") {
        cfg.lambda = 0.0;
        Rng rng(1);
        auto r = sarsa_lambda_train(task, init, cfg, 1, rng);
        // delta1 = -1 + 5 - 1 = 3, delta2 = 200 - 5 = 195
        CHECK(r.q.weight(f0, east) == doctest::Approx(2.5));
        CHECK(r.q.weight(f1, east) == doctest::Approx(102.5));
        CHECK(r.returns == ReturnSeries{199.0});
    }
    SUBCASE("traces carry the terminal error back") {
        cfg.lambda = 0.9;
        Rng rng(1);
        auto r = sarsa_lambda_train(task, init, cfg, 1, rng);
        CHECK(r.q.weight(f0, east) == doctest::Approx(2.5 + 0.5 * 195 * 0.9));
        CHECK(r.q.weight(f1, east) == doctest::Approx(102.5));
    }
}

TEST_CASE("zero episodes returns the initial weights") {
    QFunction init(TileCodingConfig{}, EnvKind::GridWorld);
    init.weight(2, 2) = 1.0;
    Rng rng(1);
    auto r = sarsa_lambda_train(grid_task("g", {"S.T"}), init, LearnerConfig{}, 0, rng);
    CHECK(r.q == init);
    CHECK(r.returns.empty());
}

TEST_CASE("divergence guard") {
    LearnerConfig cfg;
    cfg.alpha = 50.0;
    cfg.lambda = 1.0;
    cfg.trace_type = TraceType::Accumulating;
    cfg.weight_bound = 1e3;
    Rng rng(2);
    CHECK_THROWS_AS(sarsa_lambda_train(grid_task("g", {"S..", "...", "..T"}),
                                       QFunction(TileCodingConfig{}, EnvKind::GridWorld), cfg, 50, rng),
                    DivergenceError);
}

TEST_CASE("learner config validation") {
    LearnerConfig cfg;
    cfg.alpha = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.lambda = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.epsilon_decay = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK(LearnerConfig::defaults_for(TileCodingConfig{}).alpha == doctest::Approx(0.1 / 8));
}

TEST_CASE("convergence check on synthetic series") {
    CHECK_FALSE(has_converged({}));
    const std::vector<double> flat(20, -5.0);
    CHECK(has_converged(flat));
    std::vector<double> rising;
    for (int i = 0; i < 100; ++i) rising.push_back(std::min(i, 80));
    CHECK(has_converged(rising));
    std::vector<double> collapse = rising;
    for (int i = 90; i < 100; ++i) collapse[static_cast<std::size_t>(i)] = 10;
    CHECK_FALSE(has_converged(collapse));
    CHECK(has_converged(collapse, 0.1, 0.9));
}

TEST_CASE("the corridor converges") {
    const auto set = load_task_set(test::fixture("corridor/tasks.json"));
    const auto& task = set.at("corridor");
    const TileCodingConfig tiles;
    Rng rng(4);
    auto r = sarsa_lambda_train(task, QFunction(tiles, EnvKind::GridWorld), LearnerConfig::defaults_for(tiles),
                                task.train_episodes, rng);
    CHECK(r.returns.back() == doctest::Approx(199.0));
    CHECK(has_converged(r.returns));
}

}
