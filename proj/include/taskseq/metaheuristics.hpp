#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "taskseq/search.hpp"

namespace taskseq {

// ---------------------------------------------------------------- tabu search

struct TabuConfig {
    std::size_t tabu_size = 30;
    std::size_t max_iterations = 10000;

    void validate() const;
};

/// R = {c without its last task} u {c + one unused task}, then every pairwise
/// swap of every member of R; duplicates removed, first occurrence kept.
std::vector<Sequence> tabu_neighborhood(const Sequence& c, std::size_t n, std::size_t max_length);

/// Starts from a uniform draw of C_{<=L}; each iteration evaluates the non-tabu
/// neighbours and moves to the best one even when it is worse. Visited
/// curricula enter a FIFO tabu list of tabu_size entries. A tabu neighbour
/// already known to beat the best-ever value is admitted (aspiration).
SearchResult tabu_search(SearchSession& session, const TabuConfig& cfg, Rng& rng);

// ---------------------------------------------------------------- genetic algorithm

struct GAConfig {
    std::size_t population = 50;  // Q
    double mutation_prob = 0.5;   // p_m
    std::size_t max_generations = 2000;

    void validate() const;
};

/// Single-point crossover at independent random cuts of both parents, then
/// repair (drop repeated tasks keeping the first occurrence, truncate to L).
std::pair<Sequence, Sequence> ga_crossover(const Sequence& a, const Sequence& b,
                                           std::size_t max_length, Rng& rng);
/// Drop repeated tasks (first occurrence wins) and truncate to max_length.
Sequence ga_repair(const Sequence& s, std::size_t max_length);
/// Task-wise or length-wise mutation with equal probability.
Sequence ga_mutate(const Sequence& s, std::size_t n, std::size_t max_length, Rng& rng);
/// Roulette wheel on values shifted so the worst entry keeps a small positive weight.
std::size_t roulette_select(std::span<const double> values, Rng& rng,
                            std::size_t exclude = static_cast<std::size_t>(-1));

/// Generational GA: two roulette-selected parents produce Q children by
/// crossover, children mutate with probability p_m, and the parents join the
/// children before the two worst members are dropped (population stays Q).
SearchResult ga_search(SearchSession& session, const GAConfig& cfg, Rng& rng);

// ---------------------------------------------------------------- ant colony

struct ACOConfig {
    double alpha = 1.0;
    double beta = 1.2;
    double K = 5.0;
    double f_max = 50.0;
    double rho = 0.2;
    std::size_t num_ants = 20;
    double stop_prob = 0.5;  // chance an ant stops when no extension improves
    std::size_t max_iterations = 1000;

    void validate() const;
};

/// Pheromone on (trail prefix -> next task) edges, kept within [0, f_max].
class PheromoneState {
public:
    double tau(const Sequence& prefix, TaskIndex task) const;
    void deposit(const Sequence& prefix, TaskIndex task, double amount, double f_max);
    /// tau <- (1 - rho) * tau on every edge.
    void evaporate(double rho, double f_max);
    double max() const;
    std::size_t edges() const { return tau_.size(); }

private:
    std::map<std::pair<Sequence, TaskIndex>, double> tau_;
};

/// P(m_i) = [(tau_i + K)^alpha + I_i^beta] / sum_j [(tau_j + K)^alpha + I_j^beta].
/// Improvements must be non-negative.
std::vector<double> aco_selection_prob(std::span<const double> tau,
                                       std::span<const double> improvements,
                                       const ACOConfig& cfg);

/// Each ant grows a trail one unused task at a time; the visibility of task m
/// is max(0, value(trail + m) - value(trail)), which costs one evaluation per
/// candidate extension. The first step measures improvement against the
/// no-curriculum value when the objective provides it.
SearchResult aco_search(SearchSession& session, const ACOConfig& cfg, Rng& rng);

}  // namespace taskseq
