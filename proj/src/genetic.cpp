#include <algorithm>
#include <numeric>

#include "taskseq/errors.hpp"
#include "taskseq/metaheuristics.hpp"

namespace taskseq {

void GAConfig::validate() const {
    if (population < 2) throw ConfigError("ga: population must be >= 2");
    if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0))
        throw ConfigError("ga: mutation_prob must lie in [0,1]");
}

Sequence ga_repair(const Sequence& s, std::size_t max_length) {
    Sequence out;
    for (TaskIndex t : s) {
        if (out.size() == max_length) break;
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
    return out;
}

std::pair<Sequence, Sequence> ga_crossover(const Sequence& a, const Sequence& b,
                                           std::size_t max_length, Rng& rng) {
    // cuts in [1, len] keep both children non-empty
    const std::size_t cut_a = 1 + rng.uniform_index(a.size());
    const std::size_t cut_b = 1 + rng.uniform_index(b.size());
    Sequence first(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(cut_a));
    first.insert(first.end(), b.begin() + static_cast<std::ptrdiff_t>(cut_b), b.end());
    Sequence second(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(cut_b));
    second.insert(second.end(), a.begin() + static_cast<std::ptrdiff_t>(cut_a), a.end());
    return {ga_repair(first, max_length), ga_repair(second, max_length)};
}

namespace {

Sequence unused_tasks(const Sequence& s, std::size_t n) {
    Sequence out;
    for (TaskIndex t = 0; t < n; ++t)
        if (std::find(s.begin(), s.end(), t) == s.end()) out.push_back(t);
    return out;
}

}  // namespace

Sequence ga_mutate(const Sequence& s, std::size_t n, std::size_t max_length, Rng& rng) {
    Sequence out = s;
    if (rng.bernoulli(0.5)) {
        // task-wise: each position changes with probability 1/l
        const double p = 1.0 / static_cast<double>(out.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (!rng.bernoulli(p)) continue;
            const Sequence unused = unused_tasks(out, n);
            if (unused.empty()) break;
            out[i] = unused[rng.uniform_index(unused.size())];
        }
        return out;
    }
    // length-wise: drop or insert with equal probability, falling back to the
    // other operation when the chosen one would leave [1, L]
    const bool can_drop = out.size() > 1;
    const bool can_insert = out.size() < max_length && out.size() < n;
    bool drop = rng.bernoulli(0.5);
    if (drop && !can_drop) drop = false;
    if (!drop && !can_insert) drop = can_drop;
    if (drop && can_drop) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(rng.uniform_index(out.size())));
    } else if (!drop && can_insert) {
        const Sequence unused = unused_tasks(out, n);
        const TaskIndex t = unused[rng.uniform_index(unused.size())];
        const std::size_t pos = rng.uniform_index(out.size() + 1);
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), t);
    }
    return out;
}

std::size_t roulette_select(std::span<const double> values, Rng& rng, std::size_t exclude) {
    if (values.empty()) throw ContractViolation("roulette_select: empty population");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double eps = 1e-6 * std::max(1.0, *hi_it - lo);
    std::vector<double> fitness(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        fitness[i] = i == exclude ? 0.0 : values[i] - lo + eps;
    const double total = std::accumulate(fitness.begin(), fitness.end(), 0.0);
    if (!(total > 0.0)) throw ContractViolation("roulette_select: nothing to select");
    double spin = rng.uniform01() * total;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        if (fitness[i] <= 0.0) continue;
        if (spin < fitness[i]) return i;
        spin -= fitness[i];
    }
    // rounding left the spin past the end: take the last eligible entry
    for (std::size_t i = fitness.size(); i-- > 0;)
        if (fitness[i] > 0.0) return i;
    return 0;
}

SearchResult ga_search(SearchSession& session, const GAConfig& cfg, Rng& rng) {
    cfg.validate();
    const std::size_t n = session.num_tasks();
    const std::size_t max_len = session.max_length();
    if (n < 2) throw ConfigError("ga_search needs at least two tasks");
    SearchDiagnostics diag;

    std::vector<Sequence> population;
    std::vector<double> values;
    for (std::size_t i = 0; i < cfg.population; ++i) {
        population.push_back(random_sequence(rng, n, max_len));
        auto v = session.evaluate(population.back());
        if (!v) return finish(session, diag);
        values.push_back(*v);
    }

    while (!session.exhausted() && !session.space_covered() &&
           diag.iterations < cfg.max_generations) {
        ++diag.iterations;
        const std::size_t first = roulette_select(values, rng);
        const std::size_t second = roulette_select(values, rng, first);
        const Sequence parent_a = population[first];
        const Sequence parent_b = population[second];
        const double value_a = values[first];
        const double value_b = values[second];

        std::vector<Sequence> children;
        while (children.size() < cfg.population) {
            auto [x, y] = ga_crossover(parent_a, parent_b, max_len, rng);
            children.push_back(std::move(x));
            if (children.size() < cfg.population) children.push_back(std::move(y));
        }
        for (auto& child : children)
            if (rng.bernoulli(cfg.mutation_prob)) child = ga_mutate(child, n, max_len, rng);

        std::vector<double> child_values;
        for (const auto& child : children) {
            auto v = session.evaluate(child);
            if (!v) return finish(session, diag);
            child_values.push_back(*v);
        }

        // elitism: parents join, then the two worst members leave
        children.push_back(parent_a);
        child_values.push_back(value_a);
        children.push_back(parent_b);
        child_values.push_back(value_b);
        std::vector<std::size_t> order(children.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return child_values[a] > child_values[b];
        });
        order.resize(cfg.population);
        std::sort(order.begin(), order.end());
        population.clear();
        values.clear();
        for (std::size_t i : order) {
            population.push_back(children[i]);
            values.push_back(child_values[i]);
        }
        diag.population_sizes.push_back(population.size());
    }
    return finish(session, diag);
}

}  // namespace taskseq
