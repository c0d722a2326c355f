#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "taskseq/curriculum.hpp"
#include "taskseq/evaluation.hpp"
#include "taskseq/rng.hpp"

namespace taskseq {

inline constexpr std::size_t kUnlimitedBudget = std::numeric_limits<std::size_t>::max();

struct TraceEntry {
    std::size_t eval_index = 0;  // 1-based
    Curriculum curriculum;
    double value = 0.0;
    double best_so_far = 0.0;

    bool operator==(const TraceEntry&) const = default;
};

/// Log of the distinct curricula a search evaluated, in evaluation order.
class SearchTrace {
public:
    void append(Curriculum c, double value);

    const std::vector<TraceEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    /// First eval_index whose best_so_far is >= target.
    std::optional<std::size_t> first_index_reaching(double target) const;

    /// Header `eval_index,curriculum,value,best_so_far`; curricula are written
    /// with curriculum_label.
    void write_csv(std::ostream& out) const;

    bool operator==(const SearchTrace&) const = default;

private:
    std::vector<TraceEntry> entries_;
};

/// Task ids joined by single spaces. Ids never contain whitespace, so the
/// label is unambiguous inside a CSV cell.
std::string curriculum_label(const Curriculum& c);

/// Shortest round-trip decimal form of a double, used in every text output.
std::string format_double(double v);

/// One search run's view of the objective. Only curricula this run has not
/// evaluated before are charged to the budget and appended to the trace; the
/// shared objective may still answer them from its own cache.
class SearchSession {
public:
    SearchSession(Objective& objective, std::vector<std::string> task_ids, std::size_t max_length,
                  std::size_t budget);

    /// Value of `seq`, or nullopt if it is new and the budget is spent.
    /// Throws ContractViolation for sequences outside C_{<=L}.
    std::optional<double> evaluate(const Sequence& seq);
    std::optional<double> known(const Sequence& seq) const;

    bool exhausted() const { return trace_.size() >= budget_; }
    bool space_covered() const { return values_.size() >= space_size_; }
    std::size_t evaluations() const { return trace_.size(); }
    std::size_t budget() const { return budget_; }

    std::size_t num_tasks() const { return ids_.size(); }
    std::size_t max_length() const { return max_length_; }
    const std::vector<std::string>& ids() const { return ids_; }
    Objective& objective() { return objective_; }

    const SearchTrace& trace() const { return trace_; }
    const std::optional<EvaluationRecord>& best() const { return best_; }

private:
    void check(const Sequence& seq) const;

    Objective& objective_;
    std::vector<std::string> ids_;
    std::size_t max_length_;
    std::size_t budget_;
    std::size_t space_size_;
    std::map<Sequence, double> values_;
    SearchTrace trace_;
    std::optional<EvaluationRecord> best_;
};

struct SearchDiagnostics {
    std::size_t iterations = 0;
    std::size_t max_tabu_list = 0;
    std::vector<std::size_t> population_sizes;  // GA, one entry per generation
    double max_pheromone = 0.0;
};

struct SearchResult {
    EvaluationRecord best;
    SearchTrace trace;
    SearchDiagnostics diagnostics;
};

/// Package a finished session. Throws ConfigError if nothing was evaluated.
SearchResult finish(SearchSession& session, SearchDiagnostics diagnostics = {});

/// Uniform draw from C_{<=L} over n tasks.
Sequence random_sequence(Rng& rng, std::size_t n, std::size_t max_length);

bool is_valid_sequence(const Sequence& seq, std::size_t n, std::size_t max_length);

}  // namespace taskseq
