#pragma once

#include "taskseq/mdp.hpp"
#include "taskseq/qfunction.hpp"

namespace taskseq {

enum class TraceType { Replacing, Accumulating };

struct LearnerConfig {
    double alpha = 0.1 / 8;
    double lambda = 0.9;
    double epsilon = 0.1;
    double epsilon_decay = 0.995;  // multiplicative, applied after every episode
    TraceType trace_type = TraceType::Replacing;
    double weight_bound = 1e7;     // divergence guard on |weight|

    /// alpha = 0.1 / num_tilings, other fields at their defaults.
    static LearnerConfig defaults_for(const TileCodingConfig& tiles);
    void validate() const;
    bool operator==(const LearnerConfig&) const = default;
};

/// With probability epsilon a uniform action, else argmax with ties broken uniformly.
int epsilon_greedy(const QFunction& q, std::span<const std::size_t> features, double epsilon,
                   Rng& rng);
int epsilon_greedy(const QFunction& q, const EnvState& state, double epsilon, Rng& rng);

struct TrainResult {
    QFunction q;
    ReturnSeries returns;
};

/// Sarsa(lambda) with eligibility traces over `episodes` episodes of `task`,
/// starting from `q_init`. Traces are cleared between episodes and reaching
/// max_steps is not treated as termination (the last update bootstraps).
TrainResult sarsa_lambda_train(const TaskSpec& task, QFunction q_init, const LearnerConfig& cfg,
                               int episodes, Rng& rng);

/// Budget check for a training run: the mean of the last `tail_fraction` of
/// the series (at least one episode) lies within tolerance * |best| of the
/// best return observed. An empty series has not converged.
bool has_converged(std::span<const double> returns, double tail_fraction = 0.1,
                   double tolerance = 0.01);

}  // namespace taskseq
