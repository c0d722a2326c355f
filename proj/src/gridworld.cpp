#include "taskseq/gridworld.hpp"

#include <algorithm>

#include "taskseq/errors.hpp"

namespace taskseq {

void GridWorldSpec::validate() const {
    if (width <= 0 || height <= 0)
        throw ConfigError("gridworld: width and height must be positive");
    if (cells.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw ConfigError("gridworld: cell count does not match width*height");
    if (!in_bounds(start)) throw ConfigError("gridworld: start outside the grid");
    if (at(start) != GridCell::Free) throw ConfigError("gridworld: start cell must be free");
    if (std::none_of(cells.begin(), cells.end(), [](GridCell c) { return c == GridCell::Treasure; }))
        throw ConfigError("gridworld: at least one treasure is required");
}

GridWorldSpec GridWorldSpec::from_ascii(const std::vector<std::string>& rows) {
    if (rows.empty()) throw ConfigError("gridworld map is empty");
    GridWorldSpec spec;
    spec.height = static_cast<int>(rows.size());
    spec.width = static_cast<int>(rows.front().size());
    spec.cells.assign(static_cast<std::size_t>(spec.width * spec.height), GridCell::Free);
    int starts = 0;
    for (int y = 0; y < spec.height; ++y) {
        const auto& row = rows[static_cast<std::size_t>(y)];
        if (static_cast<int>(row.size()) != spec.width)
            throw ConfigError("gridworld map row " + std::to_string(y) + " has length " +
                              std::to_string(row.size()) + ", expected " +
                              std::to_string(spec.width));
        for (int x = 0; x < spec.width; ++x) {
            GridCell cell = GridCell::Free;
            switch (row[static_cast<std::size_t>(x)]) {
                case '.': break;
                case 'F': cell = GridCell::Fire; break;
                case 'P': cell = GridCell::Pit; break;
                case 'T': cell = GridCell::Treasure; break;
                case 'S':
                    spec.start = {x, y};
                    ++starts;
                    break;
                default:
                    throw ConfigError(std::string("gridworld map: unknown symbol '") +
                                      row[static_cast<std::size_t>(x)] + "' at row " +
                                      std::to_string(y) + ", column " + std::to_string(x));
            }
            spec.set({x, y}, cell);
        }
    }
    if (starts != 1) throw ConfigError("gridworld map needs exactly one 'S'");
    spec.validate();
    return spec;
}

std::vector<std::string> GridWorldSpec::to_ascii() const {
    std::vector<std::string> rows;
    for (int y = 0; y < height; ++y) {
        std::string row;
        for (int x = 0; x < width; ++x) {
            if (Cell{x, y} == start) {
                row += 'S';
                continue;
            }
            switch (at({x, y})) {
                case GridCell::Free: row += '.'; break;
                case GridCell::Fire: row += 'F'; break;
                case GridCell::Pit: row += 'P'; break;
                case GridCell::Treasure: row += 'T'; break;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

bool next_to_fire(const GridWorldSpec& spec, Cell c) {
    const Cell neighbours[] = {{c.x, c.y - 1}, {c.x, c.y + 1}, {c.x + 1, c.y}, {c.x - 1, c.y}};
    return std::any_of(std::begin(neighbours), std::end(neighbours), [&](Cell n) {
        return spec.in_bounds(n) && spec.at(n) == GridCell::Fire;
    });
}

double gridworld_entry_reward(const GridWorldSpec& spec, Cell c) {
    switch (spec.at(c)) {
        case GridCell::Pit: return gridworld_reward::kPit;
        case GridCell::Fire: return gridworld_reward::kFire;
        case GridCell::Treasure: return gridworld_reward::kTreasure;
        case GridCell::Free: break;
    }
    return next_to_fire(spec, c) ? gridworld_reward::kFireAdjacent : gridworld_reward::kDefault;
}

GridStep gridworld_step(const GridWorldSpec& spec, Cell state, GridAction action) {
    if (!spec.in_bounds(state))
        throw ContractViolation("gridworld_step: state (" + std::to_string(state.x) + "," +
                                std::to_string(state.y) + ") is outside the grid");
    Cell next = state;
    switch (action) {
        case GridAction::North: --next.y; break;
        case GridAction::South: ++next.y; break;
        case GridAction::East: ++next.x; break;
        case GridAction::West: --next.x; break;
    }
    if (!spec.in_bounds(next)) next = state;
    const GridCell kind = spec.at(next);
    return {next, gridworld_entry_reward(spec, next),
            kind == GridCell::Pit || kind == GridCell::Treasure};
}

}  // namespace taskseq
