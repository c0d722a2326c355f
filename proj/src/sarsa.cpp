#include "taskseq/sarsa.hpp"

#include <algorithm>
#include <cmath>

#include "taskseq/errors.hpp"

namespace taskseq {

namespace {

constexpr double kTraceCutoff = 1e-4;

int greedy_or_random(const std::vector<double>& q, double epsilon, Rng& rng) {
    const auto n = q.size();
    if (epsilon > 0.0 && rng.uniform01() < epsilon)
        return static_cast<int>(rng.uniform_index(n));
    double best = q[0];
    std::size_t ties = 1;
    for (std::size_t a = 1; a < n; ++a) {
        if (q[a] > best) {
            best = q[a];
            ties = 1;
        } else if (q[a] == best) {
            ++ties;
        }
    }
    std::size_t pick = ties > 1 ? rng.uniform_index(ties) : 0;
    for (std::size_t a = 0; a < n; ++a) {
        if (q[a] != best) continue;
        if (pick == 0) return static_cast<int>(a);
        --pick;
    }
    return 0;  // unreachable
}

// Sparse eligibility traces over (feature, action) slots.
class Traces {
public:
    explicit Traces(std::size_t slots) : value_(slots, 0.0) {}

    void mark(std::size_t slot, TraceType type) {
        double& e = value_[slot];
        if (e == 0.0) active_.push_back(slot);
        e = type == TraceType::Replacing ? 1.0 : e + 1.0;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t slot : active_) f(slot, value_[slot]);
    }

    void decay(double factor) {
        std::size_t kept = 0;
        for (std::size_t slot : active_) {
            double& e = value_[slot];
            e *= factor;
            if (e < kTraceCutoff) {
                e = 0.0;
            } else {
                active_[kept++] = slot;
            }
        }
        active_.resize(kept);
    }

    void clear() {
        for (std::size_t slot : active_) value_[slot] = 0.0;
        active_.clear();
    }

private:
    std::vector<double> value_;
    std::vector<std::size_t> active_;
};

}  // namespace

LearnerConfig LearnerConfig::defaults_for(const TileCodingConfig& tiles) {
    LearnerConfig cfg;
    cfg.alpha = 0.1 / tiles.num_tilings;
    return cfg;
}

void LearnerConfig::validate() const {
    if (!(alpha > 0.0)) throw ConfigError("learner: alpha must be > 0");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("learner: lambda must lie in [0,1]");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ConfigError("learner: epsilon must lie in [0,1]");
    if (!(epsilon_decay > 0.0 && epsilon_decay <= 1.0))
        throw ConfigError("learner: epsilon_decay must lie in (0,1]");
    if (!(weight_bound > 0.0)) throw ConfigError("learner: weight_bound must be > 0");
}

int epsilon_greedy(const QFunction& q, std::span<const std::size_t> features, double epsilon,
                   Rng& rng) {
    std::vector<double> values;
    q.values(features, values);
    return greedy_or_random(values, epsilon, rng);
}

int epsilon_greedy(const QFunction& q, const EnvState& state, double epsilon, Rng& rng) {
    return epsilon_greedy(q, tile_features(observe(state), q.config()), epsilon, rng);
}

TrainResult sarsa_lambda_train(const TaskSpec& task, QFunction q_init, const LearnerConfig& cfg,
                               int episodes, Rng& rng) {
    cfg.validate();
    QFunction q = transfer_value_function(q_init, task);
    TrainResult result{std::move(q), {}};
    QFunction& qf = result.q;
    if (episodes <= 0) return result;
    result.returns.reserve(static_cast<std::size_t>(episodes));

    auto& w = qf.weights();
    Traces traces(w.size());
    std::vector<std::size_t> features;
    std::vector<std::size_t> next_features;
    std::vector<double> qvals;
    double epsilon = cfg.epsilon;

    auto apply = [&](double delta) {
        const double step = cfg.alpha * delta;
        traces.for_each([&](std::size_t slot, double e) {
            double& weight = w[slot];
            weight += step * e;
            if (!(std::abs(weight) <= cfg.weight_bound))
                throw DivergenceError("sarsa: weight magnitude exceeded " +
                                      std::to_string(cfg.weight_bound) + " on task '" +
                                      task.task_id + "'");
        });
    };

    for (int episode = 0; episode < episodes; ++episode) {
        traces.clear();
        EnvState state = initial_state(task.env);
        tile_features(observe(state), qf.config(), features);
        qf.values(features, qvals);
        int action = greedy_or_random(qvals, epsilon, rng);
        double ret = 0.0;
        double discount = 1.0;

        for (int t = 0; t < task.max_steps; ++t) {
            Transition tr = env_step(task.env, state, action);
            ret += discount * tr.reward;
            discount *= task.gamma;

            const double q_sa = qf.value(features, action);
            for (std::size_t f : features) traces.mark(qf.slot(f, action), cfg.trace_type);

            if (tr.done) {
                apply(tr.reward - q_sa);
                break;
            }
            tile_features(observe(tr.next), qf.config(), next_features);
            qf.values(next_features, qvals);
            const int next_action = greedy_or_random(qvals, epsilon, rng);
            apply(tr.reward + task.gamma * qvals[static_cast<std::size_t>(next_action)] - q_sa);
            traces.decay(task.gamma * cfg.lambda);

            state = std::move(tr.next);
            std::swap(features, next_features);
            action = next_action;
        }
        result.returns.push_back(ret);
        epsilon *= cfg.epsilon_decay;
    }
    return result;
}

bool has_converged(std::span<const double> returns, double tail_fraction, double tolerance) {
    if (returns.empty()) return false;
    const auto tail = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(returns.size()))));
    const double best = *std::max_element(returns.begin(), returns.end());
    double sum = 0.0;
    for (std::size_t i = returns.size() - tail; i < returns.size(); ++i) sum += returns[i];
    return sum / static_cast<double>(tail) >= best - tolerance * std::abs(best);
}

}  // namespace taskseq
