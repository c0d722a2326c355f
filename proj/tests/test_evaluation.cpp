#include <doctest.h>

#include <atomic>
#include <fstream>
#include <thread>

#include "support.hpp"
#include "taskseq/errors.hpp"
#include "taskseq/evaluation.hpp"

using namespace taskseq;
using taskseq::test::grid_task;

namespace {

TaskSpec quick(const std::string& id, std::vector<std::string> rows) {
    auto t = grid_task(id, std::move(rows), 30);
    t.train_episodes = 4;
    t.eval_episodes = 3;
    return t;
}

TaskSet small_set() {
    return TaskSet({quick("goal", {"S..", "...", "..T"}), quick("a", {"S.T"}), quick("b", {"S.", ".T"}),
                    quick("c", {"S..", "..T"}), quick("goal2", {"S..", "...", "..T"})});
}

ObjectiveConfig small_cfg() {
    ObjectiveConfig cfg;
    cfg.final_tasks = {"goal"};
    cfg.epochs = 2;
    cfg.max_length = 2;
    cfg.seed = 9;
    return cfg;
}

}  // namespace

TEST_SUITE("evaluation") {

TEST_CASE("records carry one seed per epoch and sum their final tasks") {
    CurriculumEvaluator ev(small_set(), small_cfg());
    auto r = ev.evaluate(Curriculum{"a", "b"});
    CHECK(r.epochs == 2);
    CHECK(r.seeds.size() == 2);
    CHECK(r.seeds == ev.epoch_seeds(Curriculum{"a", "b"}));
    REQUIRE(r.per_final_task.size() == 1);
    CHECK(r.value == r.per_final_task.at("goal"));
    CHECK(ev.episodes_simulated() == 2u * (4 + 4 + 3));
}

TEST_CASE("identical final tasks contribute identical values") {
    auto cfg = small_cfg();
    CurriculumEvaluator one(small_set(), cfg);
    cfg.final_tasks = {"goal", "goal2"};
    CurriculumEvaluator two(small_set(), cfg);
    const Curriculum c{"c"};
    auto r2 = two.evaluate(c);
    CHECK(r2.per_final_task.at("goal") == r2.per_final_task.at("goal2"));
    CHECK(r2.value == 2 * r2.per_final_task.at("goal"));
}

TEST_CASE("evaluation is cached and order independent") {
    CurriculumEvaluator ev(small_set(), small_cfg());
    auto first = ev.evaluate(Curriculum{"b"});
    auto again = ev.evaluate(Curriculum{"b"});
    CHECK(first == again);
    CHECK(ev.simulations() == 1);

    CurriculumEvaluator other(small_set(), small_cfg());
    other.evaluate(Curriculum{"a"});
    other.evaluate(Curriculum{"c", "a"});
    CHECK(other.evaluate(Curriculum{"b"}) == first);
}

TEST_CASE("threads do not change results") {
    const auto ids = std::vector<std::string>{"a", "b", "c"};
    const auto cs = enumerate_curricula(ids, 2, 1);
    CurriculumEvaluator serial(small_set(), small_cfg());
    CurriculumEvaluator parallel(small_set(), small_cfg());
    CHECK(serial.evaluate_many(cs, 1) == parallel.evaluate_many(cs, 4));
}

TEST_CASE("different seeds give different estimates") {
    auto cfg = small_cfg();
    CurriculumEvaluator a(small_set(), cfg);
    cfg.seed = 10;
    CurriculumEvaluator b(small_set(), cfg);
    CHECK(a.epoch_seeds(Curriculum{"a"}) != b.epoch_seeds(Curriculum{"a"}));
}

TEST_CASE("a reloaded cache answers without simulating") {
    auto dir = test::scratch_dir("cache_reload");
    const auto file = dir / "cache.jsonl";
    std::vector<EvaluationRecord> before;
    {
        CurriculumEvaluator ev(small_set(), small_cfg(), open_evaluation_cache(small_set(), small_cfg(), file));
        before.push_back(ev.evaluate(Curriculum{"a", "c"}));
        before.push_back(ev.evaluate_scratch());
    }
    CurriculumEvaluator ev(small_set(), small_cfg(), open_evaluation_cache(small_set(), small_cfg(), file));
    CHECK(ev.cache().size() == 2);
    CHECK(ev.evaluate(Curriculum{"a", "c"}) == before[0]);
    CHECK(ev.evaluate_scratch() == before[1]);
    CHECK(ev.simulations() == 0);

    // records from another configuration are ignored
    auto changed = small_cfg();
    changed.epochs = 3;
    CurriculumEvaluator stale(small_set(), changed, open_evaluation_cache(small_set(), changed, file));
    CHECK(stale.cache().size() == 0);
}

TEST_CASE("frozen evaluator refuses to simulate") {
    CurriculumEvaluator ev(small_set(), small_cfg());
    ev.evaluate(Curriculum{"a"});
    ev.set_frozen(true);
    CHECK_NOTHROW(ev.evaluate(Curriculum{"a"}));
    CHECK_THROWS_AS(ev.evaluate(Curriculum{"b"}), ConfigError);
    CHECK_FALSE(ev.scratch_value().has_value());
}

TEST_CASE("invalid curricula are rejected") {
    CurriculumEvaluator ev(small_set(), small_cfg());
    CHECK_THROWS_AS(ev.evaluate(Curriculum{"a", "b", "c"}), ConfigError);
    CHECK_THROWS_AS(ev.evaluate(Curriculum{"zzz"}), ConfigError);
    CHECK(ev.intermediate_ids() == std::vector<std::string>{"a", "b", "c", "goal2"});
}

TEST_CASE("concurrent requests for one key compute once") {
    EvaluationCache cache;
    std::atomic<int> calls{0};
    std::vector<std::thread> pool;
    for (int i = 0; i < 8; ++i)
        pool.emplace_back([&] {
            cache.get_or_compute("k", [&] {
                ++calls;
                std::this_thread::sleep_for(std::chrono::milliseconds(20));
                EvaluationRecord r;
                r.curriculum = Curriculum{"k"};
                r.value = 1.0;
                return r;
            });
        });
    for (auto& t : pool) t.join();
    CHECK(calls == 1);
    CHECK(cache.size() == 1);
}

TEST_CASE("first writer wins") {
    EvaluationCache cache;
    EvaluationRecord r;
    r.curriculum = Curriculum{"x"};
    r.value = 1;
    CHECK(cache.insert(r));
    r.value = 2;
    CHECK_FALSE(cache.insert(r));
    CHECK(cache.find("x")->value == 1);
}

TEST_CASE("cache files tolerate a torn last line") {
    auto dir = test::scratch_dir("cache_torn");
    EvaluationRecord r;
    r.curriculum = Curriculum{"x"};
    r.value = 3.25;
    r.per_final_task["f"] = 3.25;
    r.epochs = 1;
    r.seeds = {42};
    {
        std::ofstream out(dir / "c.jsonl");
        out << record_to_json(r).dump() << "\n{\"curric";
    }
    {
        EvaluationCache cache(dir / "c.jsonl");
        CHECK(cache.size() == 1);
        CHECK(*cache.find("x") == r);
        auto y = r;
        y.curriculum = Curriculum{"y"};
        cache.insert(y);
    }
    EvaluationCache reread(dir / "c.jsonl");
    CHECK(reread.size() == 2);
}

TEST_CASE("exhaustive table, guard and tie-breaking") {
    FunctionObjective f([](const Curriculum& c) { return c.size() == 1 ? 5.0 : (c.key() == "b,a" ? 5.0 : 1.0); });
    const std::vector<std::string> ids{"a", "b"};
    auto table = exhaustive_table(f, ids, 2, 1, 100);
    CHECK(table.size() == 4);
    CHECK(best_record(table).curriculum == Curriculum{"a"});
    CHECK_THROWS_AS(exhaustive_table(f, ids, 2, 1, 3), GuardExceeded);
    CHECK(exhaustive_optimum(f, ids, 2, 100).curriculum == Curriculum{"a"});
}

TEST_CASE("optimal objective value") {
    auto cfg = small_cfg();
    cfg.final_tasks = {"goal", "a"};
    // goal: 4 moves to the corner (3 x -1 + 200); a: 2 moves (-1 + 200)
    CHECK(optimal_objective_value(small_set(), cfg) == doctest::Approx(3 * 197.0 + 3 * 199.0));
}

TEST_CASE("objective config validation") {
    auto cfg = small_cfg();
    cfg.final_tasks.clear();
    CHECK_THROWS_AS(CurriculumEvaluator(small_set(), cfg), ConfigError);
    cfg = small_cfg();
    cfg.final_tasks = {"nope"};
    CHECK_THROWS_AS(CurriculumEvaluator(small_set(), cfg), ConfigError);
}

TEST_CASE("parallel_for rethrows the first error") {
    std::atomic<int> done{0};
    CHECK_THROWS_AS(parallel_for(50, 4,
                                 [&](std::size_t i) {
                                     if (i == 7) throw ConfigError("boom");
                                     ++done;
                                 }),
                    ConfigError);
}

}
