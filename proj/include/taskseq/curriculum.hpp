#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace taskseq {

/// Position of a task inside the ordered candidate set.
using TaskIndex = std::size_t;
using Sequence = std::vector<TaskIndex>;

/// Ordered, repetition-free sequence of task ids.
class Curriculum {
public:
    Curriculum() = default;
    explicit Curriculum(std::vector<std::string> tasks) : tasks_(std::move(tasks)) {}
    Curriculum(std::initializer_list<std::string> tasks) : tasks_(tasks) {}

    const std::vector<std::string>& tasks() const { return tasks_; }
    std::size_t size() const { return tasks_.size(); }
    bool empty() const { return tasks_.empty(); }

    /// Canonical cache key: ids joined by ','. The empty curriculum has key "".
    std::string key() const;
    static Curriculum from_key(std::string_view key);

    bool has_repeats() const;

    auto operator<=>(const Curriculum&) const = default;

private:
    std::vector<std::string> tasks_;
};

/// Throws ConfigError unless 1 <= size <= max_length and no task repeats.
void validate_curriculum(const Curriculum& c, std::size_t max_length);

Curriculum to_curriculum(const Sequence& seq, std::span<const std::string> ids);

/// Number of repetition-free sequences of lengths min_len..max_len over n tasks.
std::uint64_t count_curricula(std::size_t n, std::size_t max_len, std::size_t min_len);

/// Every k-length repetition-free sequence drawn from `pool`, in lexicographic
/// order of task index. k > |pool| yields nothing; k = 0 yields one empty sequence.
std::vector<Sequence> permutations(const Sequence& pool, std::size_t k);

/// All sequences over tasks 0..n-1 with lengths min_len..max_len, ordered by
/// length and then lexicographically. Throws ConfigError if max_len > n or min_len < 1.
std::vector<Sequence> enumerate_sequences(std::size_t n, std::size_t max_len, std::size_t min_len);
std::vector<Curriculum> enumerate_curricula(std::span<const std::string> ids, std::size_t max_len,
                                            std::size_t min_len);

/// Sum of per-episode returns.
double cumulative_return(std::span<const double> series);

/// (v - worst) / (best - worst) clamped to [0,1]. Throws ConfigError if best <= worst.
double normalize_value(double v, double best, double worst);

}  // namespace taskseq
