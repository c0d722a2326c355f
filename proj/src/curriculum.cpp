#include "taskseq/curriculum.hpp"

#include <algorithm>
#include <set>

#include "taskseq/errors.hpp"

namespace taskseq {

std::string Curriculum::key() const {
    std::string out;
    for (std::size_t i = 0; i < tasks_.size(); ++i) {
        if (i > 0) out += ',';
        out += tasks_[i];
    }
    return out;
}

Curriculum Curriculum::from_key(std::string_view key) {
    std::vector<std::string> tasks;
    if (key.empty()) return Curriculum{};
    std::size_t begin = 0;
    while (true) {
        const auto comma = key.find(',', begin);
        tasks.emplace_back(key.substr(begin, comma - begin));
        if (comma == std::string_view::npos) break;
        begin = comma + 1;
    }
    return Curriculum(std::move(tasks));
}

bool Curriculum::has_repeats() const {
    std::set<std::string_view> seen;
    for (const auto& t : tasks_)
        if (!seen.insert(t).second) return true;
    return false;
}

void validate_curriculum(const Curriculum& c, std::size_t max_length) {
    if (c.empty()) throw ConfigError("curriculum must contain at least one task");
    if (c.size() > max_length)
        throw ConfigError("curriculum '" + c.key() + "' is longer than the maximum length " +
                          std::to_string(max_length));
    if (c.has_repeats()) throw ConfigError("curriculum '" + c.key() + "' repeats a task");
}

Curriculum to_curriculum(const Sequence& seq, std::span<const std::string> ids) {
    std::vector<std::string> tasks;
    tasks.reserve(seq.size());
    for (TaskIndex i : seq) tasks.push_back(ids[i]);
    return Curriculum(std::move(tasks));
}

std::uint64_t count_curricula(std::size_t n, std::size_t max_len, std::size_t min_len) {
    std::uint64_t total = 0;
    std::uint64_t falling = 1;  // n! / (n-l)!
    for (std::size_t l = 1; l <= max_len && l <= n; ++l) {
        falling *= n - l + 1;
        if (l >= min_len) total += falling;
    }
    return total;
}

namespace {

void extend(const Sequence& pool, std::size_t k, Sequence& prefix, std::vector<bool>& used,
            std::vector<Sequence>& out) {
    if (prefix.size() == k) {
        out.push_back(prefix);
        return;
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        prefix.push_back(pool[i]);
        extend(pool, k, prefix, used, out);
        prefix.pop_back();
        used[i] = false;
    }
}

}  // namespace

std::vector<Sequence> permutations(const Sequence& pool, std::size_t k) {
    std::vector<Sequence> out;
    if (k > pool.size()) return out;
    Sequence sorted = pool;
    std::sort(sorted.begin(), sorted.end());
    Sequence prefix;
    std::vector<bool> used(sorted.size(), false);
    extend(sorted, k, prefix, used, out);
    return out;
}

std::vector<Sequence> enumerate_sequences(std::size_t n, std::size_t max_len, std::size_t min_len) {
    if (min_len < 1) throw ConfigError("enumerate: min_len must be >= 1");
    if (max_len > n)
        throw ConfigError("enumerate: maximum length " + std::to_string(max_len) +
                          " exceeds the number of tasks " + std::to_string(n));
    Sequence all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    std::vector<Sequence> out;
    out.reserve(static_cast<std::size_t>(count_curricula(n, max_len, min_len)));
    for (std::size_t l = min_len; l <= max_len; ++l) {
        auto level = permutations(all, l);
        std::move(level.begin(), level.end(), std::back_inserter(out));
    }
    return out;
}

std::vector<Curriculum> enumerate_curricula(std::span<const std::string> ids, std::size_t max_len,
                                            std::size_t min_len) {
    std::vector<Curriculum> out;
    for (const auto& seq : enumerate_sequences(ids.size(), max_len, min_len))
        out.push_back(to_curriculum(seq, ids));
    return out;
}

double cumulative_return(std::span<const double> series) {
    double total = 0.0;
    for (double g : series) total += g;
    return total;
}

double normalize_value(double v, double best, double worst) {
    if (!(best > worst))
        throw ConfigError("normalize: best value must exceed worst value");
    return std::clamp((v - worst) / (best - worst), 0.0, 1.0);
}

}  // namespace taskseq
