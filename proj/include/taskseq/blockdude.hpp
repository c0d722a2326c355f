#pragma once

#include <string>
#include <vector>

#include "taskseq/gridworld.hpp"

namespace taskseq {

enum class Facing { Left = 0, Right = 1 };

enum class BlockDudeAction { Left = 0, Right = 1, Up = 2, Pick = 3, Put = 4 };
inline constexpr int kBlockDudeActions = 5;

/// Static level description. Rows below the map count as solid floor.
struct BlockDudeSpec {
    int width = 0;
    int height = 0;
    std::vector<Cell> walls;  // sorted
    std::vector<Cell> boxes;  // sorted, initial positions
    Cell exit;
    Cell agent_start;
    Facing agent_facing = Facing::Right;

    bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height; }
    bool is_wall(Cell c) const;

    void validate() const;

    /// Parse `#` wall, `b` box, `E` exit, `s`/`z` agent start facing right/left, `.` empty.
    static BlockDudeSpec from_ascii(const std::vector<std::string>& rows);
    std::vector<std::string> to_ascii() const;

    bool operator==(const BlockDudeSpec&) const = default;
};

struct BlockDudeState {
    Cell agent;
    Facing facing = Facing::Right;
    bool carrying = false;
    std::vector<Cell> boxes;  // placed boxes, sorted; the carried box sits above the agent

    bool operator==(const BlockDudeState&) const = default;
};

BlockDudeState blockdude_initial_state(const BlockDudeSpec& spec);

struct BlockDudeStep {
    BlockDudeState next;
    double reward = -1.0;
    bool done = false;
};

/// Standard mechanics; inapplicable actions are no-ops that still cost -1.
/// The step limit is enforced by the episode runner, not here.
BlockDudeStep blockdude_step(const BlockDudeSpec& spec, const BlockDudeState& state,
                             BlockDudeAction action);

}  // namespace taskseq
