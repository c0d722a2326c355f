#include <algorithm>
#include <cmath>

#include "taskseq/errors.hpp"
#include "taskseq/metaheuristics.hpp"

namespace taskseq {

void ACOConfig::validate() const {
    if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("aco: rho must lie in [0,1]");
    if (!(f_max > 0.0)) throw ConfigError("aco: f_max must be > 0");
    if (!(K > 0.0)) throw ConfigError("aco: K must be > 0");
    if (num_ants < 1) throw ConfigError("aco: num_ants must be >= 1");
    if (!(stop_prob >= 0.0 && stop_prob <= 1.0)) throw ConfigError("aco: stop_prob must lie in [0,1]");
}

double PheromoneState::tau(const Sequence& prefix, TaskIndex task) const {
    auto it = tau_.find({prefix, task});
    return it == tau_.end() ? 0.0 : it->second;
}

void PheromoneState::deposit(const Sequence& prefix, TaskIndex task, double amount, double f_max) {
    double& t = tau_[{prefix, task}];
    t = std::clamp(t + amount, 0.0, f_max);
}

void PheromoneState::evaporate(double rho, double f_max) {
    for (auto& [edge, t] : tau_) t = std::clamp((1.0 - rho) * t, 0.0, f_max);
}

double PheromoneState::max() const {
    double m = 0.0;
    for (const auto& [edge, t] : tau_) m = std::max(m, t);
    return m;
}

std::vector<double> aco_selection_prob(std::span<const double> tau,
                                       std::span<const double> improvements,
                                       const ACOConfig& cfg) {
    if (tau.empty() || tau.size() != improvements.size())
        throw ContractViolation("aco_selection_prob: need matching, non-empty inputs");
    std::vector<double> weight(tau.size());
    double total = 0.0;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (improvements[i] < 0.0)
            throw ContractViolation("aco_selection_prob: improvements must be non-negative");
        weight[i] = std::pow(tau[i] + cfg.K, cfg.alpha) + std::pow(improvements[i], cfg.beta);
        total += weight[i];
    }
    for (double& w : weight) w /= total;
    return weight;
}

namespace {

std::size_t sample(const std::vector<double>& probs, Rng& rng) {
    double u = rng.uniform01();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (u < probs[i]) return i;
        u -= probs[i];
    }
    return probs.size() - 1;
}

}  // namespace

SearchResult aco_search(SearchSession& session, const ACOConfig& cfg, Rng& rng) {
    cfg.validate();
    const std::size_t n = session.num_tasks();
    const std::size_t max_len = session.max_length();
    SearchDiagnostics diag;
    PheromoneState pheromone;
    const std::optional<double> scratch = session.objective().scratch_value();

    while (!session.exhausted() && !session.space_covered() && diag.iterations < cfg.max_iterations) {
        ++diag.iterations;
        std::vector<std::pair<Sequence, double>> trails;

        for (std::size_t ant = 0; ant < cfg.num_ants; ++ant) {
            Sequence trail;
            std::optional<double> trail_value = scratch;
            while (trail.size() < max_len) {
                Sequence candidates;
                std::vector<double> values;
                for (TaskIndex m = 0; m < n; ++m) {
                    if (std::find(trail.begin(), trail.end(), m) != trail.end()) continue;
                    Sequence extended = trail;
                    extended.push_back(m);
                    auto v = session.evaluate(extended);
                    if (!v) return finish(session, diag);
                    candidates.push_back(m);
                    values.push_back(*v);
                }
                std::vector<double> improvement(candidates.size(), 0.0);
                std::vector<double> tau(candidates.size());
                bool any_gain = false;
                for (std::size_t i = 0; i < candidates.size(); ++i) {
                    if (trail_value) improvement[i] = std::max(0.0, values[i] - *trail_value);
                    any_gain = any_gain || improvement[i] > 0.0;
                    tau[i] = pheromone.tau(trail, candidates[i]);
                }
                if (!trail.empty() && !any_gain && rng.bernoulli(cfg.stop_prob)) break;
                const std::size_t pick = sample(aco_selection_prob(tau, improvement, cfg), rng);
                trail.push_back(candidates[pick]);
                trail_value = values[pick];
            }
            trails.emplace_back(std::move(trail), *trail_value);
        }

        // deposit proportional to the trail's value, normalized over what this run has seen
        double lo = trails.front().second;
        double hi = lo;
        for (const auto& e : session.trace().entries()) {
            lo = std::min(lo, e.value);
            hi = std::max(hi, e.value);
        }
        for (const auto& [trail, value] : trails) {
            const double quality = hi > lo ? (value - lo) / (hi - lo) : 1.0;
            Sequence prefix;
            for (TaskIndex t : trail) {
                pheromone.deposit(prefix, t, cfg.f_max * quality, cfg.f_max);
                prefix.push_back(t);
            }
        }
        diag.max_pheromone = std::max(diag.max_pheromone, pheromone.max());
        pheromone.evaporate(cfg.rho, cfg.f_max);
    }
    return finish(session, diag);
}

}  // namespace taskseq
