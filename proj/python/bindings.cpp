#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "taskseq/errors.hpp"
#include "taskseq/experiment.hpp"
#include "taskseq/hts_cr.hpp"
#include "taskseq/metaheuristics.hpp"
#include "taskseq/sarsa.hpp"
#include "taskseq/stats.hpp"

namespace py = pybind11;
using namespace taskseq;

namespace {

py::object to_python(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

py::dict trace_to_python(const SearchResult& r) {
    py::list entries;
    for (const auto& e : r.trace.entries())
        entries.append(py::dict(py::arg("eval_index") = e.eval_index, py::arg("curriculum") = e.curriculum.tasks(),
                                py::arg("value") = e.value, py::arg("best_so_far") = e.best_so_far));
    return py::dict(py::arg("best") = to_python(record_to_json(r.best)), py::arg("trace") = entries);
}

AlgorithmSpec algorithm(const std::string& name, const py::dict& options) {
    nlohmann::json j = nlohmann::json::parse(py::module_::import("json").attr("dumps")(options).cast<std::string>());
    j["name"] = name;
    return algorithm_from_json(j);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Curriculum search over task sequences";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<TransferError>(m, "TransferError", PyExc_ValueError);
    py::register_exception<GuardExceeded>(m, "GuardExceeded", PyExc_RuntimeError);
    py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);
    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);

    m.def("count_curricula", &count_curricula, py::arg("n"), py::arg("max_length"), py::arg("min_length") = 1);
    m.def(
        "enumerate_curricula",
        [](const std::vector<std::string>& ids, std::size_t max_length, std::size_t min_length) {
            std::vector<std::vector<std::string>> out;
            for (const auto& c : enumerate_curricula(ids, max_length, min_length)) out.push_back(c.tasks());
            return out;
        },
        py::arg("ids"), py::arg("max_length"), py::arg("min_length") = 1);
    m.def(
        "aco_selection_prob",
        [](const std::vector<double>& tau, const std::vector<double>& improvements, double alpha, double beta,
           double K) {
            ACOConfig cfg;
            cfg.alpha = alpha;
            cfg.beta = beta;
            cfg.K = K;
            return aco_selection_prob(tau, improvements, cfg);
        },
        py::arg("tau"), py::arg("improvements"), py::arg("alpha") = 1.0, py::arg("beta") = 1.2, py::arg("K") = 5.0);
    m.def("sign_test_p_value", &sign_test_p_value, py::arg("wins"), py::arg("losses"));

    m.def(
        "load_task_set",
        [](const std::filesystem::path& path) { return to_python(task_set_to_json(load_task_set(path))); },
        py::arg("path"), "Validated task set as plain Python data.");
    m.def(
        "optimal_return",
        [](const std::filesystem::path& task_set, const std::string& task_id) {
            return optimal_return(load_task_set(task_set).at(task_id));
        },
        py::arg("task_set"), py::arg("task_id"));
    m.def(
        "train",
        [](const std::filesystem::path& task_set, const std::string& task_id, int episodes, std::uint64_t seed) {
            const TaskSet set = load_task_set(task_set);
            const TaskSpec& task = set.at(task_id);
            const TileCodingConfig tiles;
            Rng rng(seed);
            return sarsa_lambda_train(task, QFunction(tiles, env_kind(task.env)), LearnerConfig::defaults_for(tiles),
                                      episodes, rng)
                .returns;
        },
        py::arg("task_set"), py::arg("task_id"), py::arg("episodes"), py::arg("seed") = 0,
        "Per-episode returns of Sarsa(lambda) from zero weights with default settings.");

    m.def(
        "search_function",
        [](const std::string& algo, const std::function<double(const std::vector<std::string>&)>& objective,
           const std::vector<std::string>& ids, std::size_t max_length, std::size_t budget, std::uint64_t seed,
           std::optional<double> scratch, const py::dict& options) {
            FunctionObjective f([&](const Curriculum& c) { return objective(c.tasks()); }, scratch);
            SearchSession session(f, ids, max_length, budget);
            return trace_to_python(run_search(algorithm(algo, options), session, seed));
        },
        py::arg("algo"), py::arg("objective"), py::arg("ids"), py::arg("max_length"), py::arg("budget"),
        py::arg("seed") = 0, py::arg("scratch") = py::none(), py::arg("options") = py::dict(),
        "Run one search algorithm against a Python objective over curricula (lists of ids).");

    py::class_<Experiment>(m, "Experiment")
        .def(py::init([](const std::filesystem::path& config, std::optional<std::filesystem::path> cache,
                         std::optional<std::uint64_t> seed) {
                 ExperimentConfig cfg = load_experiment(config);
                 if (seed) cfg.master_seed = *seed;
                 return std::make_unique<Experiment>(cfg, cache ? cache : cfg.cache_file);
             }),
             py::arg("config"), py::arg("cache") = py::none(), py::arg("seed") = py::none())
        .def_property_readonly("ids", &Experiment::ids)
        .def_property_readonly("space_size", &Experiment::space_size)
        .def_property_readonly("budget", &Experiment::budget)
        .def(
            "evaluate",
            [](Experiment& e, const std::vector<std::string>& curriculum) {
                EvaluationRecord r;
                {
                    py::gil_scoped_release release;
                    r = e.evaluator().evaluate(Curriculum(curriculum));
                }
                return to_python(record_to_json(r));
            },
            py::arg("curriculum"))
        .def("scratch_value", [](Experiment& e) { return e.evaluator().scratch_value(); })
        .def(
            "enumerate",
            [](Experiment& e, unsigned threads) {
                std::vector<EvaluationRecord> table;
                {
                    py::gil_scoped_release release;
                    table = e.build_exhaustive_table(threads);
                }
                py::list out;
                for (const auto& r : table) out.append(to_python(record_to_json(r)));
                return out;
            },
            py::arg("threads") = 1)
        .def(
            "search",
            [](Experiment& e, const std::string& algo, std::uint64_t seed, std::optional<std::size_t> budget,
               const py::dict& options) {
                const AlgorithmSpec spec = algorithm(algo, options);
                SearchResult r;
                {
                    py::gil_scoped_release release;
                    r = e.search(spec, seed, budget.value_or(e.budget()));
                }
                return trace_to_python(r);
            },
            py::arg("algo"), py::arg("seed") = 0, py::arg("budget") = py::none(), py::arg("options") = py::dict())
        .def(
            "run",
            [](Experiment& e, const std::filesystem::path& out_dir, unsigned threads) {
                ExperimentSummary s;
                {
                    py::gil_scoped_release release;
                    s = run_experiment(e, out_dir, threads);
                }
                return to_python(summary_to_json(s));
            },
            py::arg("out_dir"), py::arg("threads") = 1,
            "Full comparison protocol; writes traces, curves and the summary under out_dir.");
}
