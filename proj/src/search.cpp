#include "taskseq/search.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include "taskseq/errors.hpp"

namespace taskseq {

void SearchTrace::append(Curriculum c, double value) {
    const double best = entries_.empty() ? value : std::max(entries_.back().best_so_far, value);
    entries_.push_back({entries_.size() + 1, std::move(c), value, best});
}

std::optional<std::size_t> SearchTrace::first_index_reaching(double target) const {
    for (const auto& e : entries_)
        if (e.best_so_far >= target) return e.eval_index;
    return std::nullopt;
}

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

std::string curriculum_label(const Curriculum& c) {
    std::string out;
    for (const auto& id : c.tasks()) {
        if (!out.empty()) out += ' ';
        out += id;
    }
    return out;
}

void SearchTrace::write_csv(std::ostream& out) const {
    out << "eval_index,curriculum,value,best_so_far\n";
    for (const auto& e : entries_)
        out << e.eval_index << ',' << curriculum_label(e.curriculum) << ',' << format_double(e.value)
            << ',' << format_double(e.best_so_far) << '\n';
}

SearchSession::SearchSession(Objective& objective, std::vector<std::string> task_ids,
                             std::size_t max_length, std::size_t budget)
    : objective_(objective),
      ids_(std::move(task_ids)),
      max_length_(max_length),
      budget_(budget),
      space_size_(static_cast<std::size_t>(count_curricula(ids_.size(), max_length, 1))) {
    if (ids_.empty()) throw ConfigError("search: the task set is empty");
    if (max_length_ < 1 || max_length_ > ids_.size())
        throw ConfigError("search: maximum length must lie in [1, number of tasks]");
}

bool is_valid_sequence(const Sequence& seq, std::size_t n, std::size_t max_length) {
    if (seq.empty() || seq.size() > max_length) return false;
    std::vector<bool> used(n, false);
    for (TaskIndex t : seq) {
        if (t >= n || used[t]) return false;
        used[t] = true;
    }
    return true;
}

void SearchSession::check(const Sequence& seq) const {
    if (is_valid_sequence(seq, ids_.size(), max_length_)) return;
    // indices may be out of range, so the message lists them rather than ids
    std::string label;
    for (TaskIndex t : seq) label += (label.empty() ? "" : ",") + std::to_string(t);
    throw ContractViolation("search submitted an invalid curriculum [" + label + "]");
}

std::optional<double> SearchSession::known(const Sequence& seq) const {
    auto it = values_.find(seq);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::optional<double> SearchSession::evaluate(const Sequence& seq) {
    check(seq);
    if (auto v = known(seq)) return v;
    if (exhausted()) return std::nullopt;
    EvaluationRecord record = objective_.evaluate(to_curriculum(seq, ids_));
    values_.emplace(seq, record.value);
    trace_.append(record.curriculum, record.value);
    if (!best_ || record.value > best_->value) best_ = record;
    return record.value;
}

SearchResult finish(SearchSession& session, SearchDiagnostics diagnostics) {
    if (!session.best()) throw ConfigError("search finished without evaluating any curriculum");
    return {*session.best(), session.trace(), std::move(diagnostics)};
}

Sequence random_sequence(Rng& rng, std::size_t n, std::size_t max_length) {
    // length l is drawn with weight n!/(n-l)!, the number of curricula of that length
    const std::uint64_t total = count_curricula(n, max_length, 1);
    std::uint64_t pick = rng.uniform_index(static_cast<std::size_t>(total));
    std::size_t length = 1;
    std::uint64_t falling = n;
    while (pick >= falling) {
        pick -= falling;
        ++length;
        falling *= n - length + 1;
    }
    Sequence pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < length; ++i) {
        const std::size_t j = i + rng.uniform_index(n - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(length);
    return pool;
}

}  // namespace taskseq
