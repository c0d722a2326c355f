#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "taskseq/evaluation.hpp"
#include "taskseq/metaheuristics.hpp"
#include "taskseq/search.hpp"

namespace taskseq {

/// One entry of an experiment's algorithm list.
struct AlgorithmSpec {
    std::string name;  // htscr | tabu | ga | aco
    TabuConfig tabu;
    GAConfig ga;
    ACOConfig aco;

    bool stochastic() const { return name != "htscr"; }
};

AlgorithmSpec algorithm_from_json(const nlohmann::json& j);
nlohmann::json algorithm_to_json(const AlgorithmSpec& a);

struct ExperimentConfig {
    std::string name;
    std::filesystem::path task_set;                 // resolved against the config file's directory
    std::vector<std::string> final_tasks;
    std::vector<std::string> intermediate_tasks;    // empty: every task that is not final
    std::size_t max_length = 3;
    int epochs = 10;
    std::optional<std::size_t> budget;              // unset: size of the curriculum space
    std::vector<AlgorithmSpec> algorithms;
    std::size_t repeats = 1;
    std::uint64_t master_seed = 0;
    LearnerConfig learner = LearnerConfig::defaults_for(TileCodingConfig{});
    TileCodingConfig tiles;
    bool exhaustive = true;                         // build the value table before searching
    std::uint64_t enumeration_guard = 100000;
    std::optional<double> worst_value;              // normalization floor when there is no table
    std::optional<std::filesystem::path> cache_file;

    void validate() const;
};

ExperimentConfig experiment_from_json(const nlohmann::json& j,
                                      const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment(const std::filesystem::path& file);

/// Seed of repeat `repeat` of `algorithm` under `master_seed`.
std::uint64_t run_seed(std::uint64_t master_seed, const std::string& algorithm, std::size_t repeat);

/// Run one search algorithm on a session.
SearchResult run_search(const AlgorithmSpec& algo, SearchSession& session, std::uint64_t seed);

/// Task set, evaluator and cache of one experiment.
class Experiment {
public:
    /// `cache_file` overrides the configured cache location; empty keeps the cache in memory.
    Experiment(ExperimentConfig cfg, const std::optional<std::filesystem::path>& cache_file);

    const ExperimentConfig& config() const { return cfg_; }
    const TaskSet& tasks() const { return evaluator_->tasks(); }
    CurriculumEvaluator& evaluator() { return *evaluator_; }
    const std::vector<std::string>& ids() const { return ids_; }
    /// |C_{<=L}| over the intermediate tasks.
    std::uint64_t space_size() const;
    std::size_t budget() const;

    /// Records of every curriculum of length 1..L in enumeration order. The
    /// no-curriculum record is evaluated as well; all of them are persisted
    /// to the cache. Throws GuardExceeded.
    std::vector<EvaluationRecord> build_exhaustive_table(unsigned threads);

    SearchResult search(const AlgorithmSpec& algo, std::uint64_t seed, std::size_t budget);

private:
    ExperimentConfig cfg_;
    std::unique_ptr<CurriculumEvaluator> evaluator_;
    std::vector<std::string> ids_;
};

struct CurvePoint {
    std::size_t eval_index = 0;
    double mean = 0.0;             // mean normalized best-so-far over runs
    double ci95_half_width = 0.0;
};

/// Runs shorter than the longest one carry their final best forward.
std::vector<CurvePoint> aggregate_curve(const std::vector<SearchTrace>& runs, double best,
                                        double worst);

struct AlgorithmSummary {
    std::string algorithm;
    std::size_t runs = 0;
    std::vector<std::optional<std::size_t>> evals_to_optimum;  // nullopt: not found
    std::size_t found = 0;
    double mean_evals_to_optimum = 0.0;  // a miss counts as budget + 1
    double mean_final_normalized = 0.0;
    // paired against the single HTS-CR run; ties are dropped
    std::size_t wins_for_htscr = 0;
    std::size_t losses_for_htscr = 0;
    double sign_test_p = 1.0;
};

struct ExperimentSummary {
    std::string name;
    std::size_t num_tasks = 0;
    std::size_t max_length = 0;
    std::size_t budget = 0;
    std::uint64_t space_size = 0;
    double v_best = 0.0;
    double v_worst = 0.0;
    std::optional<EvaluationRecord> optimum;
    std::vector<AlgorithmSummary> algorithms;
    std::map<std::string, std::vector<CurvePoint>> curves;
    std::map<std::string, std::vector<SearchResult>> runs;
};

nlohmann::json summary_to_json(const ExperimentSummary& s);
/// Fixed-width text table of evals-to-optimum per algorithm.
std::string summary_table(const ExperimentSummary& s);

/// Full comparison protocol. Writes traces/<algo>_run<r>.csv, curves.csv,
/// summary.json and summary.txt under `out_dir`.
ExperimentSummary run_experiment(Experiment& experiment, const std::filesystem::path& out_dir,
                                 unsigned threads = 1);

/// Trace file name of one run.
std::string trace_file_name(const std::string& algorithm, std::size_t repeat);

}  // namespace taskseq
