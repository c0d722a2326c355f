#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "taskseq/search.hpp"

namespace taskseq {

/// Rank sums from the all-pairs phase, indexed by task index. Lower is better.
struct PairScores {
    std::vector<std::size_t> heads;
    std::vector<std::size_t> tails;
};

/// Evaluate every ordered pair <h,t> (h-major, then t, by task index), sort the
/// pairs best-first (stable, so ties keep enumeration order) and add the
/// 1-based rank of each pair to heads[h] and tails[t]. Stops early if the
/// session budget runs out; scores then cover the evaluated pairs only.
PairScores evaluate_pairs(SearchSession& session);

/// The k tasks with the lowest score, lowest task index first among equal scores.
std::vector<TaskIndex> best_by_score(const std::vector<std::size_t>& scores, std::size_t k);

/// Heuristic task sequencing for cumulative return.
///
/// After the pair phase, round r = 1..2(n-1) grows the head candidate count I
/// (odd r) or the tail candidate count J (even r), both capped at n. For every
/// length l = 3..L, head h in Best(heads, I) and tail t in Best(tails, J) with
/// h != t, and every permutation b of l-2 tasks from (H u T) \ {h,t}, the
/// curriculum <h, b, t> is evaluated unless the run has already seen it.
/// Candidates are visited by score rank; permutations in lexicographic order.
SearchResult hts_cr(SearchSession& session);
SearchResult hts_cr(Objective& objective, std::vector<std::string> task_ids, std::size_t max_length,
                    std::size_t budget = kUnlimitedBudget);

}  // namespace taskseq
