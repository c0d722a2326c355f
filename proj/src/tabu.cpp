#include <algorithm>
#include <deque>
#include <set>

#include "taskseq/errors.hpp"
#include "taskseq/metaheuristics.hpp"

namespace taskseq {

void TabuConfig::validate() const {
    if (tabu_size < 1) throw ConfigError("tabu: tabu_size must be >= 1");
}

std::vector<Sequence> tabu_neighborhood(const Sequence& c, std::size_t n, std::size_t max_length) {
    std::vector<Sequence> reduced;
    if (c.size() > 1) reduced.emplace_back(c.begin(), c.end() - 1);
    if (c.size() < max_length) {
        for (TaskIndex t = 0; t < n; ++t) {
            if (std::find(c.begin(), c.end(), t) != c.end()) continue;
            Sequence longer = c;
            longer.push_back(t);
            reduced.push_back(std::move(longer));
        }
    }

    std::vector<Sequence> out;
    std::set<Sequence> seen;
    auto add = [&](Sequence s) {
        if (seen.insert(s).second) out.push_back(std::move(s));
    };
    for (const auto& r : reduced) add(r);
    for (const auto& r : reduced) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            for (std::size_t j = i + 1; j < r.size(); ++j) {
                Sequence swapped = r;
                std::swap(swapped[i], swapped[j]);
                add(std::move(swapped));
            }
        }
    }
    return out;
}

SearchResult tabu_search(SearchSession& session, const TabuConfig& cfg, Rng& rng) {
    cfg.validate();
    const std::size_t n = session.num_tasks();
    const std::size_t max_len = session.max_length();
    SearchDiagnostics diag;

    std::deque<Sequence> tabu;
    auto visit = [&](const Sequence& s) {
        tabu.push_back(s);
        if (tabu.size() > cfg.tabu_size) tabu.pop_front();
        diag.max_tabu_list = std::max(diag.max_tabu_list, tabu.size());
    };
    auto is_tabu = [&](const Sequence& s) { return std::find(tabu.begin(), tabu.end(), s) != tabu.end(); };

    Sequence current = random_sequence(rng, n, max_len);
    if (!session.evaluate(current)) return finish(session, diag);
    visit(current);

    while (!session.exhausted() && !session.space_covered() && diag.iterations < cfg.max_iterations) {
        ++diag.iterations;
        std::optional<Sequence> best_move;
        double best_move_value = 0.0;
        for (const auto& nb : tabu_neighborhood(current, n, max_len)) {
            if (is_tabu(nb)) {
                auto v = session.known(nb);
                if (!v || !session.best() || *v <= session.best()->value) continue;
            }
            auto v = session.evaluate(nb);
            if (!v) return finish(session, diag);
            if (!best_move || *v > best_move_value) {
                best_move = nb;
                best_move_value = *v;
            }
        }
        if (!best_move) {
            // every neighbour is tabu: restart from a fresh random curriculum
            current = random_sequence(rng, n, max_len);
            if (!session.evaluate(current)) return finish(session, diag);
        } else {
            current = *best_move;
        }
        visit(current);
    }
    return finish(session, diag);
}

}  // namespace taskseq
