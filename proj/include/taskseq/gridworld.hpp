#pragma once

#include <compare>
#include <string>
#include <vector>

namespace taskseq {

/// Grid coordinate. y grows downward (row index of the ASCII map).
struct Cell {
    int x = 0;
    int y = 0;
    auto operator<=>(const Cell&) const = default;
};

enum class GridCell { Free, Fire, Pit, Treasure };

enum class GridAction { North = 0, South = 1, East = 2, West = 3 };
inline constexpr int kGridActions = 4;

namespace gridworld_reward {
inline constexpr double kPit = -2500.0;
inline constexpr double kFire = -500.0;
inline constexpr double kFireAdjacent = -250.0;
inline constexpr double kTreasure = 200.0;
inline constexpr double kDefault = -1.0;
}  // namespace gridworld_reward

struct GridWorldSpec {
    int width = 0;
    int height = 0;
    std::vector<GridCell> cells;  // row-major, y * width + x
    Cell start;

    bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height; }
    GridCell at(Cell c) const { return cells[static_cast<std::size_t>(c.y * width + c.x)]; }
    void set(Cell c, GridCell v) { cells[static_cast<std::size_t>(c.y * width + c.x)] = v; }

    /// Throws ConfigError unless dimensions, start and treasure constraints hold.
    void validate() const;

    /// Parse `.`, `F`, `P`, `T`, `S` rows. Exactly one `S` is required.
    static GridWorldSpec from_ascii(const std::vector<std::string>& rows);
    std::vector<std::string> to_ascii() const;

    bool operator==(const GridWorldSpec&) const = default;
};

/// True if any 4-neighbour of c is a Fire cell.
bool next_to_fire(const GridWorldSpec& spec, Cell c);

/// Reward for entering cell c. Precedence: Pit > Fire > Treasure > fire-adjacent > default.
double gridworld_entry_reward(const GridWorldSpec& spec, Cell c);

struct GridStep {
    Cell next;
    double reward = 0.0;
    bool done = false;
};

/// Deterministic move. Bumping the boundary leaves the agent in place and
/// charges the entry reward of the occupied cell.
GridStep gridworld_step(const GridWorldSpec& spec, Cell state, GridAction action);

}  // namespace taskseq
