#include "taskseq/evaluation.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "taskseq/errors.hpp"

namespace taskseq {

using nlohmann::json;

json record_to_json(const EvaluationRecord& r) {
    return json{{"curriculum", r.curriculum.tasks()},
                {"value", r.value},
                {"per_final_task", r.per_final_task},
                {"epochs", r.epochs},
                {"seeds", r.seeds}};
}

EvaluationRecord record_from_json(const json& j) {
    try {
        EvaluationRecord r;
        r.curriculum = Curriculum(j.at("curriculum").get<std::vector<std::string>>());
        r.value = j.at("value").get<double>();
        r.per_final_task = j.at("per_final_task").get<std::map<std::string, double>>();
        r.epochs = j.at("epochs").get<int>();
        r.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        return r;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed evaluation record: ") + e.what());
    }
}

// ---------------------------------------------------------------- cache

EvaluationCache::EvaluationCache(const std::filesystem::path& file, Filter filter) {
    if (std::filesystem::exists(file)) {
        std::ifstream in(file);
        if (!in) throw ConfigError("cannot read cache file '" + file.string() + "'");
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            json j;
            try {
                j = json::parse(line);
            } catch (const json::parse_error&) {
                // a torn final line from an interrupted run is ignored
                continue;
            }
            EvaluationRecord r = record_from_json(j);
            if (filter && !filter(r)) continue;
            const std::string key = r.curriculum.key();
            if (index_.contains(key)) continue;
            index_.emplace(key, records_.size());
            records_.push_back(std::move(r));
        }
    }
    bool torn_tail = false;
    if (std::filesystem::exists(file) && std::filesystem::file_size(file) > 0) {
        std::ifstream in(file, std::ios::binary);
        in.seekg(-1, std::ios::end);
        torn_tail = in.get() != '\n';
    }
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    file_.emplace(file, std::ios::app);
    if (!*file_) throw ConfigError("cannot open cache file '" + file.string() + "' for append");
    // start new records on a fresh line
    if (torn_tail) *file_ << '\n';
}

std::optional<EvaluationRecord> EvaluationCache::find(const std::string& key) const {
    std::lock_guard lock(mutex_);
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return records_[it->second];
}

void EvaluationCache::append_locked(const EvaluationRecord& record) {
    index_.emplace(record.curriculum.key(), records_.size());
    records_.push_back(record);
    if (file_) {
        *file_ << record_to_json(record).dump() << '\n';
        file_->flush();
    }
}

bool EvaluationCache::insert(const EvaluationRecord& record) {
    std::lock_guard lock(mutex_);
    if (index_.contains(record.curriculum.key())) return false;
    append_locked(record);
    return true;
}

EvaluationRecord EvaluationCache::get_or_compute(const std::string& key,
                                                 const std::function<EvaluationRecord()>& compute,
                                                 bool* computed) {
    if (computed != nullptr) *computed = false;
    std::promise<EvaluationRecord> promise;
    {
        std::unique_lock lock(mutex_);
        if (auto it = index_.find(key); it != index_.end()) return records_[it->second];
        if (auto it = in_flight_.find(key); it != in_flight_.end()) {
            auto pending = it->second;
            lock.unlock();
            return pending.get();
        }
        in_flight_.emplace(key, promise.get_future().share());
    }
    try {
        EvaluationRecord record = compute();
        {
            std::lock_guard lock(mutex_);
            if (auto it = index_.find(key); it != index_.end())
                record = records_[it->second];
            else
                append_locked(record);
            in_flight_.erase(key);
        }
        if (computed != nullptr) *computed = true;
        promise.set_value(record);
        return record;
    } catch (...) {
        {
            std::lock_guard lock(mutex_);
            in_flight_.erase(key);
        }
        promise.set_exception(std::current_exception());
        throw;
    }
}

std::size_t EvaluationCache::size() const {
    std::lock_guard lock(mutex_);
    return records_.size();
}

std::vector<EvaluationRecord> EvaluationCache::records() const {
    std::lock_guard lock(mutex_);
    return records_;
}

// ---------------------------------------------------------------- objectives

std::vector<EvaluationRecord> Objective::evaluate_many(std::span<const Curriculum> cs, unsigned) {
    std::vector<EvaluationRecord> out;
    out.reserve(cs.size());
    for (const auto& c : cs) out.push_back(evaluate(c));
    return out;
}

EvaluationRecord FunctionObjective::evaluate(const Curriculum& c) {
    EvaluationRecord r;
    r.curriculum = c;
    r.value = f_(c);
    r.per_final_task["final"] = r.value;
    r.epochs = 1;
    return r;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next.store(count);
                    return;
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------- configuration

void ObjectiveConfig::validate() const {
    if (final_tasks.empty()) throw ConfigError("objective: the final task set must not be empty");
    if (epochs < 1) throw ConfigError("objective: epochs must be >= 1");
    if (max_length < 1) throw ConfigError("objective: maximum curriculum length must be >= 1");
    learner.validate();
    tiles.validate();
}

json learner_to_json(const LearnerConfig& cfg) {
    return json{{"alpha", cfg.alpha},
                {"lambda", cfg.lambda},
                {"epsilon", cfg.epsilon},
                {"epsilon_decay", cfg.epsilon_decay},
                {"trace_type", cfg.trace_type == TraceType::Replacing ? "replacing" : "accumulating"},
                {"weight_bound", cfg.weight_bound}};
}

LearnerConfig learner_from_json(const json& j, const TileCodingConfig& tiles) {
    LearnerConfig cfg = LearnerConfig::defaults_for(tiles);
    try {
        cfg.alpha = j.value("alpha", cfg.alpha);
        cfg.lambda = j.value("lambda", cfg.lambda);
        cfg.epsilon = j.value("epsilon", cfg.epsilon);
        cfg.epsilon_decay = j.value("epsilon_decay", cfg.epsilon_decay);
        cfg.weight_bound = j.value("weight_bound", cfg.weight_bound);
        const auto trace = j.value("trace_type", std::string("replacing"));
        if (trace == "replacing")
            cfg.trace_type = TraceType::Replacing;
        else if (trace == "accumulating")
            cfg.trace_type = TraceType::Accumulating;
        else
            throw ConfigError("learner: unknown trace_type '" + trace + "'");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("learner config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

json tiles_to_json(const TileCodingConfig& cfg) {
    return json{{"num_tilings", cfg.num_tilings},
                {"tiles_per_dimension", cfg.tiles_per_dimension},
                {"hash_table_size", cfg.hash_table_size},
                {"extent", cfg.extent},
                {"displacement",
                 cfg.displacement == Displacement::Uniform ? "uniform" : "asymmetric"}};
}

TileCodingConfig tiles_from_json(const json& j) {
    TileCodingConfig cfg;
    try {
        cfg.num_tilings = j.value("num_tilings", cfg.num_tilings);
        cfg.tiles_per_dimension = j.value("tiles_per_dimension", cfg.tiles_per_dimension);
        cfg.hash_table_size = j.value("hash_table_size", cfg.hash_table_size);
        cfg.extent = j.value("extent", cfg.extent);
        const auto disp = j.value("displacement", std::string("asymmetric"));
        if (disp == "uniform")
            cfg.displacement = Displacement::Uniform;
        else if (disp == "asymmetric")
            cfg.displacement = Displacement::Asymmetric;
        else
            throw ConfigError("tile coding: unknown displacement '" + disp + "'");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("tile coding config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

std::uint64_t objective_fingerprint(const TaskSet& tasks, const ObjectiveConfig& cfg) {
    json j{{"tasks", task_set_to_json(tasks)},
           {"final_tasks", cfg.final_tasks},
           {"epochs", cfg.epochs},
           {"learner", learner_to_json(cfg.learner)},
           {"tiles", tiles_to_json(cfg.tiles)}};
    return hash_string(j.dump());
}

// ---------------------------------------------------------------- evaluator

CurriculumEvaluator::CurriculumEvaluator(TaskSet tasks, ObjectiveConfig cfg,
                                         std::shared_ptr<EvaluationCache> cache)
    : tasks_(std::move(tasks)), cfg_(std::move(cfg)), cache_(std::move(cache)) {
    cfg_.validate();
    for (const auto& f : cfg_.final_tasks) tasks_.at(f);
    fingerprint_ = objective_fingerprint(tasks_, cfg_);
}

std::vector<std::string> CurriculumEvaluator::intermediate_ids() const {
    std::vector<std::string> out;
    for (const auto& id : tasks_.ids())
        if (std::find(cfg_.final_tasks.begin(), cfg_.final_tasks.end(), id) == cfg_.final_tasks.end())
            out.push_back(id);
    return out;
}

std::vector<std::uint64_t> CurriculumEvaluator::epoch_seeds(const Curriculum& c) const {
    const std::uint64_t base =
        mix_seed(mix_seed(cfg_.seed, fingerprint_), hash_string(c.key()));
    std::vector<std::uint64_t> seeds;
    for (int e = 0; e < cfg_.epochs; ++e) seeds.push_back(mix_seed(base, static_cast<std::uint64_t>(e)));
    return seeds;
}

bool CurriculumEvaluator::is_current(const EvaluationRecord& r) const {
    return r.epochs == cfg_.epochs && r.seeds == epoch_seeds(r.curriculum);
}

EvaluationRecord CurriculumEvaluator::evaluate(const Curriculum& c) {
    validate_curriculum(c, cfg_.max_length);
    for (const auto& id : c.tasks()) tasks_.at(id);
    return lookup_or_simulate(c);
}

EvaluationRecord CurriculumEvaluator::evaluate_scratch() { return lookup_or_simulate(Curriculum{}); }

std::optional<double> CurriculumEvaluator::scratch_value() {
    if (frozen_) {
        auto r = cache_->find("");
        return r ? std::optional<double>(r->value) : std::nullopt;
    }
    return evaluate_scratch().value;
}

std::vector<EvaluationRecord> CurriculumEvaluator::evaluate_many(std::span<const Curriculum> cs,
                                                                 unsigned threads) {
    std::vector<EvaluationRecord> out(cs.size());
    parallel_for(cs.size(), threads, [&](std::size_t i) { out[i] = evaluate(cs[i]); });
    return out;
}

EvaluationRecord CurriculumEvaluator::lookup_or_simulate(const Curriculum& c) {
    const std::string key = c.key();
    if (frozen_) {
        auto r = cache_->find(key);
        if (!r) throw ConfigError("value table has no entry for curriculum '" + key + "'");
        return *r;
    }
    return cache_->get_or_compute(key, [&] { return simulate(c); });
}

EvaluationRecord CurriculumEvaluator::simulate(const Curriculum& c) {
    EvaluationRecord record;
    record.curriculum = c;
    record.epochs = cfg_.epochs;
    record.seeds = epoch_seeds(c);

    const TaskSpec& head = c.empty() ? tasks_.at(cfg_.final_tasks.front()) : tasks_.at(c.tasks().front());
    std::map<std::string, double> totals;
    std::uint64_t episodes = 0;

    for (int e = 0; e < cfg_.epochs; ++e) {
        const std::uint64_t seed = record.seeds[static_cast<std::size_t>(e)];
        Rng rng(seed);
        QFunction q(cfg_.tiles, env_kind(head.env));
        for (const auto& id : c.tasks()) {
            const TaskSpec& task = tasks_.at(id);
            q = sarsa_lambda_train(task, std::move(q), cfg_.learner, task.train_episodes, rng).q;
            episodes += static_cast<std::uint64_t>(task.train_episodes);
        }
        for (const auto& f : cfg_.final_tasks) {
            const TaskSpec& final_task = tasks_.at(f);
            // every final task sees the same exploration stream within an epoch
            Rng final_rng(mix_seed(seed, 0x66696e616cULL));
            auto result = sarsa_lambda_train(final_task, transfer_value_function(q, final_task),
                                             cfg_.learner, final_task.eval_episodes, final_rng);
            totals[f] += cumulative_return(result.returns);
            episodes += static_cast<std::uint64_t>(final_task.eval_episodes);
        }
    }
    for (const auto& [f, total] : totals) record.per_final_task[f] = total / cfg_.epochs;
    for (const auto& [f, v] : record.per_final_task) record.value += v;
    episodes_ += episodes;
    ++simulations_;
    return record;
}

std::shared_ptr<EvaluationCache> open_evaluation_cache(const TaskSet& tasks,
                                                       const ObjectiveConfig& cfg,
                                                       const std::filesystem::path& file) {
    auto probe = std::make_shared<CurriculumEvaluator>(tasks, cfg);
    return std::make_shared<EvaluationCache>(
        file, [probe](const EvaluationRecord& r) { return probe->is_current(r); });
}

// ---------------------------------------------------------------- exhaustive search

std::vector<EvaluationRecord> exhaustive_table(Objective& objective,
                                               std::span<const std::string> ids,
                                               std::size_t max_len, std::size_t min_len,
                                               std::uint64_t guard, unsigned threads) {
    if (max_len > ids.size())
        throw ConfigError("enumerate: maximum length " + std::to_string(max_len) +
                          " exceeds the number of tasks " + std::to_string(ids.size()));
    const std::uint64_t count = count_curricula(ids.size(), max_len, min_len);
    if (count > guard)
        throw GuardExceeded("exhaustive enumeration of " + std::to_string(count) +
                            " curricula exceeds the guard of " + std::to_string(guard));
    const auto curricula = enumerate_curricula(ids, max_len, min_len);
    return objective.evaluate_many(curricula, threads);
}

const EvaluationRecord& best_record(std::span<const EvaluationRecord> table) {
    if (table.empty()) throw ConfigError("best_record: empty table");
    const EvaluationRecord* best = &table.front();
    for (const auto& r : table)
        if (r.value > best->value) best = &r;
    return *best;
}

EvaluationRecord exhaustive_optimum(Objective& objective, std::span<const std::string> ids,
                                    std::size_t max_len, std::uint64_t guard, unsigned threads) {
    const auto table = exhaustive_table(objective, ids, max_len, 1, guard, threads);
    return best_record(table);
}

double optimal_objective_value(const TaskSet& tasks, const ObjectiveConfig& cfg) {
    double total = 0.0;
    for (const auto& f : cfg.final_tasks) {
        const TaskSpec& t = tasks.at(f);
        total += t.eval_episodes * optimal_return(t);
    }
    return total;
}

}  // namespace taskseq
