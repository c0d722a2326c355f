#include "taskseq/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "taskseq/errors.hpp"

namespace taskseq {

void TaskSpec::validate() const {
    if (task_id.empty()) throw ConfigError("task_id must not be empty");
    if (task_id.find_first_of(", \t\n") != std::string::npos)
        throw ConfigError("task_id '" + task_id + "' must not contain commas or whitespace");
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw ConfigError("task '" + task_id + "': gamma must lie in [0,1]");
    if (max_steps < 1) throw ConfigError("task '" + task_id + "': max_steps must be >= 1");
    if (train_episodes < 1)
        throw ConfigError("task '" + task_id + "': train_episodes must be >= 1");
    if (eval_episodes < 1) throw ConfigError("task '" + task_id + "': eval_episodes must be >= 1");
    try {
        std::visit([](const auto& spec) { spec.validate(); }, env);
    } catch (const ConfigError& e) {
        throw ConfigError("task '" + task_id + "': " + e.what());
    }
}

double discounted_return(std::span<const double> rewards, double gamma) {
    double total = 0.0;
    double discount = 1.0;
    for (double r : rewards) {
        total += discount * r;
        discount *= gamma;
    }
    return total;
}

EnvKind env_kind(const EnvSpec& env) {
    return std::holds_alternative<GridWorldSpec>(env) ? EnvKind::GridWorld : EnvKind::BlockDude;
}

const char* env_kind_name(EnvKind kind) {
    return kind == EnvKind::GridWorld ? "gridworld" : "blockdude";
}

int num_actions(const EnvSpec& env) {
    return env_kind(env) == EnvKind::GridWorld ? kGridActions : kBlockDudeActions;
}

EnvState initial_state(const EnvSpec& env) {
    if (const auto* g = std::get_if<GridWorldSpec>(&env)) return g->start;
    return blockdude_initial_state(std::get<BlockDudeSpec>(env));
}

Transition env_step(const EnvSpec& env, const EnvState& state, int action) {
    if (const auto* g = std::get_if<GridWorldSpec>(&env)) {
        const auto* cell = std::get_if<Cell>(&state);
        if (cell == nullptr) throw ContractViolation("env_step: gridworld needs a cell state");
        auto s = gridworld_step(*g, *cell, static_cast<GridAction>(action));
        return {s.next, s.reward, s.done};
    }
    const auto* bd = std::get_if<BlockDudeState>(&state);
    if (bd == nullptr) throw ContractViolation("env_step: blockdude needs a blockdude state");
    auto s = blockdude_step(std::get<BlockDudeSpec>(env), *bd, static_cast<BlockDudeAction>(action));
    return {std::move(s.next), s.reward, s.done};
}

Observation observe(const EnvState& state) {
    if (const auto* c = std::get_if<Cell>(&state))
        return {{static_cast<double>(c->x), static_cast<double>(c->y)}, 0};
    const auto& s = std::get<BlockDudeState>(state);
    std::uint64_t h = mix_seed(static_cast<std::uint64_t>(s.facing) + 1,
                               static_cast<std::uint64_t>(s.carrying) + 1);
    for (Cell b : s.boxes) {
        h = mix_seed(h, static_cast<std::uint64_t>(static_cast<std::uint32_t>(b.x)));
        h = mix_seed(h, static_cast<std::uint64_t>(static_cast<std::uint32_t>(b.y)));
    }
    return {{static_cast<double>(s.agent.x), static_cast<double>(s.agent.y)}, h};
}

std::string state_key(const EnvState& state) {
    if (const auto* c = std::get_if<Cell>(&state))
        return std::to_string(c->x) + "," + std::to_string(c->y);
    const auto& s = std::get<BlockDudeState>(state);
    std::string key = std::to_string(s.agent.x) + "," + std::to_string(s.agent.y) +
                      (s.facing == Facing::Left ? "L" : "R") + (s.carrying ? "c" : "-");
    for (Cell b : s.boxes) key += ";" + std::to_string(b.x) + "," + std::to_string(b.y);
    return key;
}

EpisodeResult run_episode(const TaskSpec& task, const Policy& policy, Rng& rng) {
    std::visit([](const auto& spec) { spec.validate(); }, task.env);
    EpisodeResult result;
    EnvState state = initial_state(task.env);
    double discount = 1.0;
    while (result.steps < task.max_steps) {
        const int action = policy(state, rng);
        Transition t = env_step(task.env, state, action);
        result.discounted_return += discount * t.reward;
        discount *= task.gamma;
        ++result.steps;
        if (t.done) {
            result.termination = Termination::Absorbing;
            return result;
        }
        state = std::move(t.next);
    }
    result.termination = Termination::StepLimit;
    return result;
}

double optimal_return(const TaskSpec& task) {
    task.validate();
    const int actions = num_actions(task.env);

    // Breadth-first enumeration of states reachable within the horizon.
    std::vector<EnvState> states;
    std::unordered_map<std::string, std::size_t> index;
    struct Edge {
        std::size_t next;
        double reward;
        bool done;
    };
    std::vector<Edge> edges;  // states.size() * actions

    auto intern = [&](const EnvState& s) {
        auto [it, inserted] = index.try_emplace(state_key(s), states.size());
        if (inserted) states.push_back(s);
        return it->second;
    };
    intern(initial_state(task.env));
    std::size_t frontier_begin = 0;
    for (int depth = 0; depth < task.max_steps && frontier_begin < states.size(); ++depth) {
        const std::size_t frontier_end = states.size();
        for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
            for (int a = 0; a < actions; ++a) {
                Transition t = env_step(task.env, states[i], a);
                const std::size_t next = t.done ? 0 : intern(t.next);
                edges.resize(std::max(edges.size(), (i + 1) * static_cast<std::size_t>(actions)));
                edges[i * static_cast<std::size_t>(actions) + static_cast<std::size_t>(a)] = {
                    next, t.reward, t.done};
            }
        }
        frontier_begin = frontier_end;
    }
    // States discovered in the last layer have no outgoing edges; they are
    // only ever read with zero remaining horizon.
    const std::size_t expanded = edges.size() / static_cast<std::size_t>(actions);

    std::vector<double> value(states.size(), 0.0);
    std::vector<double> next_value(states.size(), 0.0);
    for (int horizon = 1; horizon <= task.max_steps; ++horizon) {
        for (std::size_t s = 0; s < expanded; ++s) {
            double best = -std::numeric_limits<double>::infinity();
            for (int a = 0; a < actions; ++a) {
                const Edge& e = edges[s * static_cast<std::size_t>(actions) + static_cast<std::size_t>(a)];
                const double q = e.reward + (e.done ? 0.0 : task.gamma * value[e.next]);
                best = std::max(best, q);
            }
            next_value[s] = best;
        }
        std::swap(value, next_value);
    }
    return value[0];
}

}  // namespace taskseq
