#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "taskseq/curriculum.hpp"
#include "taskseq/sarsa.hpp"
#include "taskseq/task_io.hpp"

namespace taskseq {

/// Estimated objective P(c,F) of one curriculum.
struct EvaluationRecord {
    Curriculum curriculum;
    double value = 0.0;                          // sum of per_final_task, in key order
    std::map<std::string, double> per_final_task;  // epoch-mean cumulative return per final task
    int epochs = 0;
    std::vector<std::uint64_t> seeds;            // one per epoch

    bool operator==(const EvaluationRecord&) const = default;
};

nlohmann::json record_to_json(const EvaluationRecord& r);
EvaluationRecord record_from_json(const nlohmann::json& j);

/// Thread-safe map from curriculum key to record. Concurrent requests for the
/// same key run the computation once; the first writer wins. When backed by a
/// file, existing lines are loaded on construction and each new record is
/// appended as one JSON line.
class EvaluationCache {
public:
    using Filter = std::function<bool(const EvaluationRecord&)>;

    EvaluationCache() = default;
    /// Rehydrate from `file` (missing file = empty cache), keeping records accepted by `filter`.
    explicit EvaluationCache(const std::filesystem::path& file, Filter filter = {});

    EvaluationCache(const EvaluationCache&) = delete;
    EvaluationCache& operator=(const EvaluationCache&) = delete;

    std::optional<EvaluationRecord> find(const std::string& key) const;
    bool contains(const std::string& key) const { return find(key).has_value(); }
    /// Insert if absent. Returns false (and keeps the old record) if the key exists.
    bool insert(const EvaluationRecord& record);

    /// Return the cached record or run `compute` exactly once for this key.
    /// `computed` is set to true only for the caller that ran the computation.
    EvaluationRecord get_or_compute(const std::string& key,
                                    const std::function<EvaluationRecord()>& compute,
                                    bool* computed = nullptr);

    std::size_t size() const;
    /// Snapshot in insertion order.
    std::vector<EvaluationRecord> records() const;

private:
    void append_locked(const EvaluationRecord& record);

    mutable std::mutex mutex_;
    std::vector<EvaluationRecord> records_;
    std::unordered_map<std::string, std::size_t> index_;
    std::unordered_map<std::string, std::shared_future<EvaluationRecord>> in_flight_;
    std::optional<std::ofstream> file_;
};

/// Black-box objective over curricula, as seen by the search algorithms.
class Objective {
public:
    virtual ~Objective() = default;
    virtual EvaluationRecord evaluate(const Curriculum& c) = 0;
    /// Objective value of learning the final tasks with no curriculum, when known.
    virtual std::optional<double> scratch_value() { return std::nullopt; }
    /// Evaluate many curricula; results are in input order.
    virtual std::vector<EvaluationRecord> evaluate_many(std::span<const Curriculum> cs,
                                                        unsigned threads);
};

/// Objective backed by a plain function; used for synthetic landscapes.
class FunctionObjective : public Objective {
public:
    explicit FunctionObjective(std::function<double(const Curriculum&)> f,
                               std::optional<double> scratch = std::nullopt)
        : f_(std::move(f)), scratch_(scratch) {}

    EvaluationRecord evaluate(const Curriculum& c) override;
    std::optional<double> scratch_value() override { return scratch_; }

private:
    std::function<double(const Curriculum&)> f_;
    std::optional<double> scratch_;
};

struct ObjectiveConfig {
    std::vector<std::string> final_tasks;  // F
    int epochs = 10;
    std::size_t max_length = 3;            // L
    LearnerConfig learner = LearnerConfig::defaults_for(TileCodingConfig{});
    TileCodingConfig tiles;
    std::uint64_t seed = 0;                // master seed for every evaluation

    void validate() const;
};

nlohmann::json learner_to_json(const LearnerConfig& cfg);
LearnerConfig learner_from_json(const nlohmann::json& j, const TileCodingConfig& tiles);
nlohmann::json tiles_to_json(const TileCodingConfig& cfg);
TileCodingConfig tiles_from_json(const nlohmann::json& j);

/// Estimates P(c,F) by chained training with value-function transfer, averaged
/// over epochs. Each curriculum's epoch seeds are a pure function of the
/// master seed, the task set, the configuration and the curriculum, so results
/// do not depend on evaluation order or thread count.
class CurriculumEvaluator : public Objective {
public:
    CurriculumEvaluator(TaskSet tasks, ObjectiveConfig cfg,
                        std::shared_ptr<EvaluationCache> cache = std::make_shared<EvaluationCache>());

    /// Cached record, or a fresh simulation inserted into the cache.
    EvaluationRecord evaluate(const Curriculum& c) override;
    std::vector<EvaluationRecord> evaluate_many(std::span<const Curriculum> cs,
                                                unsigned threads) override;
    /// Final tasks learned from zero weights (cached under the empty key).
    EvaluationRecord evaluate_scratch();
    std::optional<double> scratch_value() override;

    /// When frozen, a cache miss throws ConfigError instead of simulating.
    void set_frozen(bool frozen) { frozen_ = frozen; }
    bool frozen() const { return frozen_; }

    std::vector<std::uint64_t> epoch_seeds(const Curriculum& c) const;
    /// Accepts cached records produced under the current configuration.
    bool is_current(const EvaluationRecord& r) const;

    std::uint64_t episodes_simulated() const { return episodes_.load(); }
    std::uint64_t simulations() const { return simulations_.load(); }

    const TaskSet& tasks() const { return tasks_; }
    const ObjectiveConfig& config() const { return cfg_; }
    EvaluationCache& cache() { return *cache_; }
    std::shared_ptr<EvaluationCache> shared_cache() const { return cache_; }

    /// The task ids that may appear in curricula: every task not in F.
    std::vector<std::string> intermediate_ids() const;

private:
    EvaluationRecord lookup_or_simulate(const Curriculum& c);
    EvaluationRecord simulate(const Curriculum& c);

    TaskSet tasks_;
    ObjectiveConfig cfg_;
    std::shared_ptr<EvaluationCache> cache_;
    std::uint64_t fingerprint_ = 0;
    bool frozen_ = false;
    std::atomic<std::uint64_t> episodes_{0};
    std::atomic<std::uint64_t> simulations_{0};
};

/// File-backed cache that rehydrates only records produced under (tasks, cfg).
std::shared_ptr<EvaluationCache> open_evaluation_cache(const TaskSet& tasks,
                                                       const ObjectiveConfig& cfg,
                                                       const std::filesystem::path& file);

/// Hash of the task set and objective configuration; part of every epoch seed.
std::uint64_t objective_fingerprint(const TaskSet& tasks, const ObjectiveConfig& cfg);

/// Records of every curriculum over `ids` with lengths min_len..max_len, in
/// enumeration order. Throws GuardExceeded if the count is above `guard`.
std::vector<EvaluationRecord> exhaustive_table(Objective& objective,
                                               std::span<const std::string> ids,
                                               std::size_t max_len, std::size_t min_len,
                                               std::uint64_t guard, unsigned threads = 1);

/// Maximizer of a table in enumeration order; ties go to the earlier (shorter) entry.
const EvaluationRecord& best_record(std::span<const EvaluationRecord> table);

/// Best curriculum of C_{<=L} (lengths 1..max_len).
EvaluationRecord exhaustive_optimum(Objective& objective, std::span<const std::string> ids,
                                    std::size_t max_len, std::uint64_t guard,
                                    unsigned threads = 1);

/// Upper normalization anchor: sum over final tasks of eval_episodes times the
/// optimal episode return.
double optimal_objective_value(const TaskSet& tasks, const ObjectiveConfig& cfg);

/// Run `fn(i)` for i in [0, count) on up to `threads` workers. The first
/// exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace taskseq
