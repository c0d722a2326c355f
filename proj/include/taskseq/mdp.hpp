#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "taskseq/blockdude.hpp"
#include "taskseq/gridworld.hpp"
#include "taskseq/rng.hpp"

namespace taskseq {

using EnvSpec = std::variant<GridWorldSpec, BlockDudeSpec>;
using EnvState = std::variant<Cell, BlockDudeState>;

/// A parameterized episodic task.
struct TaskSpec {
    std::string task_id;
    EnvSpec env;
    double gamma = 1.0;
    int max_steps = 100;
    int train_episodes = 100;  // episodes run when the task appears inside a curriculum
    int eval_episodes = 50;    // N, episodes measured when the task is a final task

    void validate() const;
    bool operator==(const TaskSpec&) const = default;
};

enum class Termination { Absorbing, StepLimit };

struct EpisodeResult {
    double discounted_return = 0.0;
    int steps = 0;
    Termination termination = Termination::StepLimit;

    bool operator==(const EpisodeResult&) const = default;
};

/// G_f^i for consecutive episodes.
using ReturnSeries = std::vector<double>;

/// Sum of gamma^t * rewards[t], t zero-based.
double discounted_return(std::span<const double> rewards, double gamma);

struct Transition {
    EnvState next;
    double reward = 0.0;
    bool done = false;
};

/// Continuous coordinates for tiling plus a hashed discrete context.
struct Observation {
    std::array<double, 2> coords{};
    std::uint64_t context = 0;
};

/// Identifies the action set; value functions only transfer within one kind.
enum class EnvKind { GridWorld, BlockDude };

EnvKind env_kind(const EnvSpec& env);
const char* env_kind_name(EnvKind kind);
int num_actions(const EnvSpec& env);
EnvState initial_state(const EnvSpec& env);
Transition env_step(const EnvSpec& env, const EnvState& state, int action);
Observation observe(const EnvState& state);
/// Injective text encoding of a state, used by exact planners.
std::string state_key(const EnvState& state);

using Policy = std::function<int(const EnvState&, Rng&)>;

/// Run one episode from the start state. Stops on an absorbing state or at max_steps.
EpisodeResult run_episode(const TaskSpec& task, const Policy& policy, Rng& rng);

/// Best achievable discounted return within max_steps, by finite-horizon
/// dynamic programming over the reachable (deterministic) state space.
double optimal_return(const TaskSpec& task);

}  // namespace taskseq
