#include "taskseq/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "taskseq/errors.hpp"
#include "taskseq/hts_cr.hpp"
#include "taskseq/stats.hpp"

namespace taskseq {

using nlohmann::json;

namespace {

const std::set<std::string> kAlgorithms = {"htscr", "tabu", "ga", "aco"};

template <typename T>
void read_field(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

std::ofstream open_output(const std::filesystem::path& file) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + file.string() + "'");
    return out;
}

std::string short_double(double v) {
    std::ostringstream out;
    out << std::setprecision(3) << v;
    return out.str();
}

}  // namespace

// ---------------------------------------------------------------- configuration

AlgorithmSpec algorithm_from_json(const json& j) {
    AlgorithmSpec a;
    try {
        if (j.is_string()) {
            a.name = j.get<std::string>();
        } else {
            a.name = j.at("name").get<std::string>();
            read_field(j, "tabu_size", a.tabu.tabu_size);
            read_field(j, "max_iterations", a.tabu.max_iterations);
            read_field(j, "population", a.ga.population);
            read_field(j, "mutation_prob", a.ga.mutation_prob);
            read_field(j, "max_generations", a.ga.max_generations);
            read_field(j, "alpha", a.aco.alpha);
            read_field(j, "beta", a.aco.beta);
            read_field(j, "K", a.aco.K);
            read_field(j, "f_max", a.aco.f_max);
            read_field(j, "rho", a.aco.rho);
            read_field(j, "num_ants", a.aco.num_ants);
            read_field(j, "stop_prob", a.aco.stop_prob);
            if (a.name == "aco") read_field(j, "max_iterations", a.aco.max_iterations);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("algorithm entry: ") + e.what());
    }
    if (!kAlgorithms.contains(a.name))
        throw ConfigError("unknown algorithm '" + a.name + "' (expected htscr, tabu, ga or aco)");
    a.tabu.validate();
    a.ga.validate();
    a.aco.validate();
    return a;
}

json algorithm_to_json(const AlgorithmSpec& a) {
    json j{{"name", a.name}};
    if (a.name == "tabu") {
        j["tabu_size"] = a.tabu.tabu_size;
        j["max_iterations"] = a.tabu.max_iterations;
    } else if (a.name == "ga") {
        j["population"] = a.ga.population;
        j["mutation_prob"] = a.ga.mutation_prob;
        j["max_generations"] = a.ga.max_generations;
    } else if (a.name == "aco") {
        j["alpha"] = a.aco.alpha;
        j["beta"] = a.aco.beta;
        j["K"] = a.aco.K;
        j["f_max"] = a.aco.f_max;
        j["rho"] = a.aco.rho;
        j["num_ants"] = a.aco.num_ants;
        j["stop_prob"] = a.aco.stop_prob;
        j["max_iterations"] = a.aco.max_iterations;
    }
    return j;
}

void ExperimentConfig::validate() const {
    if (name.empty()) throw ConfigError("experiment: name must not be empty");
    if (final_tasks.empty()) throw ConfigError("experiment: final_tasks must not be empty");
    if (max_length < 1) throw ConfigError("experiment: L must be >= 1");
    if (epochs < 1) throw ConfigError("experiment: epochs must be >= 1");
    if (repeats < 1) throw ConfigError("experiment: repeats must be >= 1");
    if (budget && *budget < 1) throw ConfigError("experiment: budget must be >= 1");
    if (algorithms.empty()) throw ConfigError("experiment: algorithms must not be empty");
    std::set<std::string> names;
    for (const auto& a : algorithms)
        if (!names.insert(a.name).second)
            throw ConfigError("experiment: algorithm '" + a.name + "' listed twice");
    learner.validate();
    tiles.validate();
}

ExperimentConfig experiment_from_json(const json& j, const std::filesystem::path& base_dir) {
    ExperimentConfig cfg;
    try {
        cfg.name = j.at("name").get<std::string>();
        cfg.task_set = j.at("task_set").get<std::string>();
        if (cfg.task_set.is_relative() && !base_dir.empty()) cfg.task_set = base_dir / cfg.task_set;
        cfg.final_tasks = j.at("final_tasks").get<std::vector<std::string>>();
        read_field(j, "intermediate_tasks", cfg.intermediate_tasks);
        cfg.max_length = j.at("L").get<std::size_t>();
        read_field(j, "epochs", cfg.epochs);
        if (j.contains("budget") && !j.at("budget").is_null()) cfg.budget = j.at("budget").get<std::size_t>();
        for (const auto& a : j.at("algorithms")) cfg.algorithms.push_back(algorithm_from_json(a));
        read_field(j, "repeats", cfg.repeats);
        read_field(j, "master_seed", cfg.master_seed);
        if (j.contains("tiles")) cfg.tiles = tiles_from_json(j.at("tiles"));
        cfg.learner = learner_from_json(j.value("learner", json::object()), cfg.tiles);
        read_field(j, "exhaustive", cfg.exhaustive);
        read_field(j, "enumeration_guard", cfg.enumeration_guard);
        if (j.contains("worst_value")) cfg.worst_value = j.at("worst_value").get<double>();
        if (j.contains("cache_file")) {
            std::filesystem::path p = j.at("cache_file").get<std::string>();
            if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
            cfg.cache_file = p;
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("experiment config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_experiment(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read experiment config '" + file.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("experiment config '" + file.string() + "': " + e.what());
    }
    return experiment_from_json(j, file.parent_path());
}

// ---------------------------------------------------------------- runs

std::uint64_t run_seed(std::uint64_t master_seed, const std::string& algorithm, std::size_t repeat) {
    return mix_seed(mix_seed(master_seed, hash_string(algorithm)), repeat);
}

SearchResult run_search(const AlgorithmSpec& algo, SearchSession& session, std::uint64_t seed) {
    Rng rng(seed);
    if (algo.name == "htscr") return hts_cr(session);
    if (algo.name == "tabu") return tabu_search(session, algo.tabu, rng);
    if (algo.name == "ga") return ga_search(session, algo.ga, rng);
    if (algo.name == "aco") return aco_search(session, algo.aco, rng);
    throw ConfigError("unknown algorithm '" + algo.name + "'");
}

std::string trace_file_name(const std::string& algorithm, std::size_t repeat) {
    return algorithm + "_run" + std::to_string(repeat) + ".csv";
}

Experiment::Experiment(ExperimentConfig cfg, const std::optional<std::filesystem::path>& cache_file)
    : cfg_(std::move(cfg)) {
    cfg_.validate();
    TaskSet tasks = load_task_set(cfg_.task_set);
    ObjectiveConfig obj;
    obj.final_tasks = cfg_.final_tasks;
    obj.epochs = cfg_.epochs;
    obj.max_length = cfg_.max_length;
    obj.learner = cfg_.learner;
    obj.tiles = cfg_.tiles;
    obj.seed = cfg_.master_seed;
    for (const auto& f : obj.final_tasks)
        if (!tasks.contains(f)) throw ConfigError("experiment: unknown final task '" + f + "'");

    std::shared_ptr<EvaluationCache> cache =
        cache_file ? open_evaluation_cache(tasks, obj, *cache_file) : std::make_shared<EvaluationCache>();
    evaluator_ = std::make_unique<CurriculumEvaluator>(std::move(tasks), obj, std::move(cache));

    ids_ = cfg_.intermediate_tasks.empty() ? evaluator_->intermediate_ids() : cfg_.intermediate_tasks;
    std::set<std::string> seen;
    for (const auto& id : ids_) {
        if (!evaluator_->tasks().contains(id))
            throw ConfigError("experiment: unknown intermediate task '" + id + "'");
        if (std::find(cfg_.final_tasks.begin(), cfg_.final_tasks.end(), id) != cfg_.final_tasks.end())
            throw ConfigError("experiment: task '" + id + "' is both final and intermediate");
        if (!seen.insert(id).second)
            throw ConfigError("experiment: intermediate task '" + id + "' listed twice");
    }
    if (cfg_.max_length > ids_.size())
        throw ConfigError("experiment: L = " + std::to_string(cfg_.max_length) + " exceeds the " +
                          std::to_string(ids_.size()) + " intermediate tasks");
}

std::uint64_t Experiment::space_size() const { return count_curricula(ids_.size(), cfg_.max_length, 1); }

std::size_t Experiment::budget() const {
    return cfg_.budget ? *cfg_.budget : static_cast<std::size_t>(space_size());
}

std::vector<EvaluationRecord> Experiment::build_exhaustive_table(unsigned threads) {
    auto table = exhaustive_table(*evaluator_, ids_, cfg_.max_length, 1, cfg_.enumeration_guard, threads);
    evaluator_->evaluate_scratch();
    return table;
}

SearchResult Experiment::search(const AlgorithmSpec& algo, std::uint64_t seed, std::size_t budget) {
    SearchSession session(*evaluator_, ids_, cfg_.max_length, budget);
    return run_search(algo, session, seed);
}

// ---------------------------------------------------------------- aggregation

std::vector<CurvePoint> aggregate_curve(const std::vector<SearchTrace>& runs, double best,
                                        double worst) {
    std::size_t length = 0;
    for (const auto& r : runs) length = std::max(length, r.size());
    std::vector<CurvePoint> curve;
    std::vector<double> column(runs.size());
    for (std::size_t i = 0; i < length; ++i) {
        std::size_t used = 0;
        for (const auto& r : runs) {
            if (r.empty()) continue;
            const auto& e = r.entries()[std::min(i, r.size() - 1)];
            column[used++] = normalize_value(e.best_so_far, best, worst);
        }
        std::span<const double> xs(column.data(), used);
        curve.push_back({i + 1, mean(xs), ci95_half_width(xs)});
    }
    return curve;
}

json summary_to_json(const ExperimentSummary& s) {
    json j{{"name", s.name},
           {"num_tasks", s.num_tasks},
           {"L", s.max_length},
           {"budget", s.budget},
           {"space_size", s.space_size},
           {"v_best", s.v_best},
           {"v_worst", s.v_worst}};
    if (s.optimum) {
        j["optimum"] = {{"curriculum", s.optimum->curriculum.tasks()},
                        {"value", s.optimum->value},
                        {"normalized", normalize_value(s.optimum->value, s.v_best, s.v_worst)}};
    }
    json algos = json::array();
    for (const auto& a : s.algorithms) {
        json evals = json::array();
        for (const auto& e : a.evals_to_optimum) evals.push_back(e ? json(*e) : json("not found"));
        json entry{{"algorithm", a.algorithm},
                   {"runs", a.runs},
                   {"mean_final_normalized", a.mean_final_normalized}};
        if (s.optimum) {
            entry["evals_to_optimum"] = evals;
            entry["found"] = a.found;
            entry["mean_evals_to_optimum"] = a.mean_evals_to_optimum;
            if (a.algorithm != "htscr") {
                entry["htscr_wins"] = a.wins_for_htscr;
                entry["htscr_losses"] = a.losses_for_htscr;
                entry["sign_test_p"] = a.sign_test_p;
            }
        }
        algos.push_back(std::move(entry));
    }
    j["algorithms"] = std::move(algos);
    return j;
}

std::string summary_table(const ExperimentSummary& s) {
    std::ostringstream out;
    out << "experiment " << s.name << ": n=" << s.num_tasks << " L=" << s.max_length
        << " budget=" << s.budget << " space=" << s.space_size << '\n';
    if (s.optimum)
        out << "global optimum <" << s.optimum->curriculum.key() << "> value "
            << format_double(s.optimum->value) << '\n';
    out << std::left << std::setw(10) << "algorithm" << std::setw(6) << "runs" << std::setw(8)
        << "found" << std::setw(14) << "mean_evals" << std::setw(12) << "sign_p"
        << "evals_to_optimum\n";
    for (const auto& a : s.algorithms) {
        out << std::setw(10) << a.algorithm << std::setw(6) << a.runs;
        if (!s.optimum) {
            out << "(no value table)\n";
            continue;
        }
        out << std::setw(8) << a.found << std::setw(14) << short_double(a.mean_evals_to_optimum)
            << std::setw(12) << (a.algorithm == "htscr" ? std::string("-") : short_double(a.sign_test_p));
        for (std::size_t i = 0; i < a.evals_to_optimum.size(); ++i) {
            if (i > 0) out << ' ';
            const auto& e = a.evals_to_optimum[i];
            out << (e ? std::to_string(*e) : std::string("not found"));
        }
        out << '\n';
    }
    return out.str();
}

ExperimentSummary run_experiment(Experiment& experiment, const std::filesystem::path& out_dir,
                                 unsigned threads) {
    const ExperimentConfig& cfg = experiment.config();
    ExperimentSummary summary;
    summary.name = cfg.name;
    summary.num_tasks = experiment.ids().size();
    summary.max_length = cfg.max_length;
    summary.space_size = experiment.space_size();
    summary.budget = experiment.budget();
    summary.v_best = optimal_objective_value(experiment.tasks(), experiment.evaluator().config());

    CurriculumEvaluator& evaluator = experiment.evaluator();
    if (cfg.exhaustive) {
        const auto table = experiment.build_exhaustive_table(threads);
        summary.optimum = best_record(table);
        summary.v_worst = table.front().value;
        for (const auto& r : table) summary.v_worst = std::min(summary.v_worst, r.value);
        evaluator.set_frozen(true);
    } else if (cfg.worst_value) {
        summary.v_worst = *cfg.worst_value;
    } else {
        throw ConfigError("experiment: worst_value is required when exhaustive is false");
    }
    if (!(summary.v_best > summary.v_worst))
        throw ConfigError("experiment: optimal value " + format_double(summary.v_best) +
                          " does not exceed the worst value " + format_double(summary.v_worst));

    struct Job {
        std::size_t algo;
        std::size_t repeat;
    };
    std::vector<Job> jobs;
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
        const std::size_t runs = cfg.algorithms[a].stochastic() ? cfg.repeats : 1;
        for (std::size_t r = 0; r < runs; ++r) jobs.push_back({a, r});
    }
    std::vector<SearchResult> results(jobs.size());
    try {
        parallel_for(jobs.size(), threads, [&](std::size_t i) {
            const AlgorithmSpec& algo = cfg.algorithms[jobs[i].algo];
            results[i] = experiment.search(algo, run_seed(cfg.master_seed, algo.name, jobs[i].repeat),
                                           summary.budget);
        });
    } catch (...) {
        evaluator.set_frozen(false);
        throw;
    }
    evaluator.set_frozen(false);

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const std::string& name = cfg.algorithms[jobs[i].algo].name;
        auto file = open_output(out_dir / "traces" / trace_file_name(name, jobs[i].repeat));
        results[i].trace.write_csv(file);
        summary.runs[name].push_back(results[i]);
    }

    const double censored = static_cast<double>(std::min<std::uint64_t>(summary.budget, summary.space_size)) + 1.0;
    std::optional<double> htscr_evals;
    for (const auto& algo : cfg.algorithms) {
        AlgorithmSummary a;
        a.algorithm = algo.name;
        const auto& runs = summary.runs[algo.name];
        a.runs = runs.size();
        std::vector<SearchTrace> traces;
        std::vector<double> finals;
        double total = 0.0;
        for (const auto& run : runs) {
            traces.push_back(run.trace);
            finals.push_back(normalize_value(run.best.value, summary.v_best, summary.v_worst));
            if (summary.optimum) {
                auto hit = run.trace.first_index_reaching(summary.optimum->value);
                a.evals_to_optimum.push_back(hit);
                if (hit) ++a.found;
                total += hit ? static_cast<double>(*hit) : censored;
            }
        }
        a.mean_final_normalized = mean(finals);
        if (summary.optimum) {
            a.mean_evals_to_optimum = total / static_cast<double>(runs.size());
            if (algo.name == "htscr") htscr_evals = a.mean_evals_to_optimum;
        }
        summary.curves[algo.name] = aggregate_curve(traces, summary.v_best, summary.v_worst);
        summary.algorithms.push_back(std::move(a));
    }
    if (htscr_evals) {
        for (auto& a : summary.algorithms) {
            if (a.algorithm == "htscr") continue;
            for (const auto& e : a.evals_to_optimum) {
                const double other = e ? static_cast<double>(*e) : censored;
                if (*htscr_evals < other) ++a.wins_for_htscr;
                if (*htscr_evals > other) ++a.losses_for_htscr;
            }
            a.sign_test_p = sign_test_p_value(a.wins_for_htscr, a.losses_for_htscr);
        }
    }

    {
        auto out = open_output(out_dir / "curves.csv");
        out << "algorithm,eval_index,mean_best_so_far,ci95_half_width\n";
        for (const auto& algo : cfg.algorithms)
            for (const auto& p : summary.curves[algo.name])
                out << algo.name << ',' << p.eval_index << ',' << format_double(p.mean) << ','
                    << format_double(p.ci95_half_width) << '\n';
    }
    open_output(out_dir / "summary.json") << summary_to_json(summary).dump(2) << '\n';
    open_output(out_dir / "summary.txt") << summary_table(summary);
    return summary;
}

}  // namespace taskseq
