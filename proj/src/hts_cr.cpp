#include "taskseq/hts_cr.hpp"

#include <algorithm>
#include <numeric>

#include "taskseq/errors.hpp"

namespace taskseq {

PairScores evaluate_pairs(SearchSession& session) {
    const std::size_t n = session.num_tasks();
    if (n < 2) throw ConfigError("evaluate_pairs needs at least two tasks");

    struct Scored {
        TaskIndex head;
        TaskIndex tail;
        double value;
    };
    std::vector<Scored> pairs;
    pairs.reserve(n * (n - 1));
    bool out_of_budget = false;
    for (TaskIndex h = 0; h < n && !out_of_budget; ++h) {
        for (TaskIndex t = 0; t < n; ++t) {
            if (h == t) continue;
            auto v = session.evaluate({h, t});
            if (!v) {
                out_of_budget = true;
                break;
            }
            pairs.push_back({h, t, *v});
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const Scored& a, const Scored& b) { return a.value > b.value; });
    PairScores scores{std::vector<std::size_t>(n, 0), std::vector<std::size_t>(n, 0)};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        scores.heads[pairs[i].head] += i + 1;
        scores.tails[pairs[i].tail] += i + 1;
    }
    return scores;
}

std::vector<TaskIndex> best_by_score(const std::vector<std::size_t>& scores, std::size_t k) {
    std::vector<TaskIndex> order(scores.size());
    std::iota(order.begin(), order.end(), TaskIndex{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](TaskIndex a, TaskIndex b) { return scores[a] < scores[b]; });
    order.resize(std::min(k, order.size()));
    return order;
}

SearchResult hts_cr(SearchSession& session) {
    const std::size_t n = session.num_tasks();
    const std::size_t max_len = session.max_length();
    if (n < 2) throw ConfigError("hts_cr needs at least two tasks");
    if (max_len < 2) throw ConfigError("hts_cr needs a maximum length of at least 2");

    const PairScores scores = evaluate_pairs(session);
    SearchDiagnostics diag;
    std::size_t heads_wanted = 1;
    std::size_t tails_wanted = 1;

    for (std::size_t round = 1; round <= 2 * (n - 1); ++round) {
        if (session.exhausted()) break;
        ++diag.iterations;
        if (round % 2 == 1)
            heads_wanted = std::min(heads_wanted + 1, n);
        else
            tails_wanted = std::min(tails_wanted + 1, n);
        const auto heads = best_by_score(scores.heads, heads_wanted);
        const auto tails = best_by_score(scores.tails, tails_wanted);

        Sequence candidates = heads;
        for (TaskIndex t : tails)
            if (std::find(candidates.begin(), candidates.end(), t) == candidates.end())
                candidates.push_back(t);

        for (std::size_t len = 3; len <= max_len; ++len) {
            for (TaskIndex h : heads) {
                for (TaskIndex t : tails) {
                    if (h == t) continue;
                    Sequence middle_pool;
                    for (TaskIndex m : candidates)
                        if (m != h && m != t) middle_pool.push_back(m);
                    for (const auto& middle : permutations(middle_pool, len - 2)) {
                        Sequence c;
                        c.reserve(len);
                        c.push_back(h);
                        c.insert(c.end(), middle.begin(), middle.end());
                        c.push_back(t);
                        if (!session.evaluate(c)) return finish(session, diag);
                    }
                }
            }
        }
    }
    return finish(session, diag);
}

SearchResult hts_cr(Objective& objective, std::vector<std::string> task_ids, std::size_t max_length,
                    std::size_t budget) {
    if (budget < 1) throw ConfigError("hts_cr: budget must be >= 1");
    SearchSession session(objective, std::move(task_ids), max_length, budget);
    return hts_cr(session);
}

}  // namespace taskseq
