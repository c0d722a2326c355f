// taskseq: curriculum search driver.
//
//   taskseq enumerate --config exp.json --out runs/x
//   taskseq search --algo htscr --config exp.json --out runs/x
//   taskseq bench --config exp.json --out runs/x --threads 8
//   taskseq inspect --config exp.json --out runs/x --curriculum a,b,c

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "taskseq/errors.hpp"
#include "taskseq/experiment.hpp"

namespace fs = std::filesystem;
using namespace taskseq;

namespace {

struct Options {
    std::string config;
    std::string out = "taskseq_out";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> budget;
    unsigned threads = 1;
    std::string algo;
    std::string curriculum;
    std::size_t top = 10;
};

ExperimentConfig load(const Options& opt) {
    ExperimentConfig cfg = load_experiment(opt.config);
    if (opt.seed) cfg.master_seed = *opt.seed;
    if (opt.budget) cfg.budget = *opt.budget;
    cfg.validate();
    return cfg;
}

fs::path cache_path(const ExperimentConfig& cfg, const Options& opt) {
    return cfg.cache_file ? *cfg.cache_file : fs::path(opt.out) / "cache.jsonl";
}

int cmd_enumerate(const Options& opt) {
    ExperimentConfig cfg = load(opt);
    Experiment exp(cfg, cache_path(cfg, opt));
    const auto table = exp.build_exhaustive_table(opt.threads);
    const double best = optimal_objective_value(exp.tasks(), exp.evaluator().config());

    const fs::path file = fs::path(opt.out) / "table.csv";
    fs::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << "curriculum,length,value\n";
    for (const auto& r : table)
        out << curriculum_label(r.curriculum) << ',' << r.curriculum.size() << ',' << format_double(r.value) << '\n';

    const auto& optimum = best_record(table);
    std::cout << table.size() << " curricula evaluated (" << exp.evaluator().simulations()
              << " simulated)\n"
              << "optimum <" << optimum.curriculum.key() << "> value " << format_double(optimum.value)
              << " (optimal-policy value " << format_double(best) << ")\n";
    return 0;
}

int cmd_search(const Options& opt) {
    ExperimentConfig cfg = load(opt);
    AlgorithmSpec algo;
    algo.name = opt.algo;
    for (const auto& a : cfg.algorithms)
        if (a.name == opt.algo) algo = a;
    Experiment exp(cfg, cache_path(cfg, opt));
    const SearchResult result = exp.search(algo, run_seed(cfg.master_seed, algo.name, 0), exp.budget());

    const fs::path file = fs::path(opt.out) / "traces" / trace_file_name(algo.name, 0);
    fs::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    result.trace.write_csv(out);
    std::cout << algo.name << ": " << result.trace.size() << " evaluations, best <"
              << result.best.curriculum.key() << "> value " << format_double(result.best.value)
              << "\ntrace written to " << file.string() << '\n';
    return 0;
}

int cmd_bench(const Options& opt) {
    ExperimentConfig cfg = load(opt);
    Experiment exp(cfg, cache_path(cfg, opt));
    const ExperimentSummary summary = run_experiment(exp, opt.out, opt.threads);
    std::cout << summary_table(summary);
    return 0;
}

int cmd_inspect(const Options& opt) {
    ExperimentConfig cfg = load(opt);
    Experiment exp(cfg, cache_path(cfg, opt));
    EvaluationCache& cache = exp.evaluator().cache();
    if (!opt.curriculum.empty()) {
        auto record = cache.find(Curriculum::from_key(opt.curriculum).key());
        if (!record) {
            std::cerr << "curriculum <" << opt.curriculum << "> is not in the cache\n";
            return 1;
        }
        std::cout << record_to_json(*record).dump(2) << '\n';
        return 0;
    }
    auto records = cache.records();
    std::stable_sort(records.begin(), records.end(),
                     [](const auto& a, const auto& b) { return a.value > b.value; });
    std::cout << records.size() << " cached records\n";
    for (std::size_t i = 0; i < records.size() && i < opt.top; ++i)
        std::cout << format_double(records[i].value) << "  <" << records[i].curriculum.key() << ">\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curriculum search over task sequences"};
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "Output directory");
        sub->add_option("--seed", opt.seed, "Master seed (overrides the config)");
        sub->add_option("--budget", opt.budget, "Evaluation budget per run")->check(CLI::PositiveNumber);
        sub->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
    };

    auto* enumerate = app.add_subcommand("enumerate", "Evaluate every curriculum and write the value table");
    common(enumerate);
    auto* search = app.add_subcommand("search", "Run one search algorithm once");
    common(search);
    search->add_option("--algo", opt.algo, "Search algorithm")
        ->required()
        ->check(CLI::IsMember({"htscr", "tabu", "ga", "aco"}));
    auto* bench = app.add_subcommand("bench", "Run the full comparison experiment");
    common(bench);
    auto* inspect = app.add_subcommand("inspect", "Query the evaluation cache");
    common(inspect);
    inspect->add_option("--curriculum", opt.curriculum, "Comma-separated task ids");
    inspect->add_option("--top", opt.top, "Number of best records to list");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*enumerate) return cmd_enumerate(opt);
        if (*search) return cmd_search(opt);
        if (*bench) return cmd_bench(opt);
        if (*inspect) return cmd_inspect(opt);
    } catch (const GuardExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
