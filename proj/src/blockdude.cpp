#include "taskseq/blockdude.hpp"

#include <algorithm>

#include "taskseq/errors.hpp"

namespace taskseq {

namespace {

bool contains(const std::vector<Cell>& sorted, Cell c) {
    return std::binary_search(sorted.begin(), sorted.end(), c);
}

std::string cell_str(Cell c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }

// Out-of-bounds cells are solid, including the implicit floor below the map.
bool solid(const BlockDudeSpec& spec, const std::vector<Cell>& boxes, Cell c) {
    if (!spec.in_bounds(c)) return true;
    return spec.is_wall(c) || contains(boxes, c);
}

void fall(const BlockDudeSpec& spec, const std::vector<Cell>& boxes, Cell& c) {
    while (!solid(spec, boxes, {c.x, c.y + 1})) ++c.y;
}

}  // namespace

bool BlockDudeSpec::is_wall(Cell c) const { return contains(walls, c); }

void BlockDudeSpec::validate() const {
    if (width <= 0 || height <= 0)
        throw ConfigError("blockdude: width and height must be positive");
    if (!std::is_sorted(walls.begin(), walls.end()) || !std::is_sorted(boxes.begin(), boxes.end()))
        throw ConfigError("blockdude: walls and boxes must be sorted");
    for (Cell c : walls)
        if (!in_bounds(c)) throw ConfigError("blockdude: wall " + cell_str(c) + " out of bounds");
    if (!in_bounds(exit) || is_wall(exit))
        throw ConfigError("blockdude: exit must be in bounds and not inside a wall");
    if (!in_bounds(agent_start) || is_wall(agent_start))
        throw ConfigError("blockdude: agent start must be in bounds and not inside a wall");
    if (contains(boxes, agent_start) || contains(boxes, exit))
        throw ConfigError("blockdude: boxes may not overlap the agent start or exit");
    for (Cell b : boxes) {
        if (!in_bounds(b) || is_wall(b))
            throw ConfigError("blockdude: box " + cell_str(b) + " out of bounds or inside a wall");
        if (!solid(*this, boxes, {b.x, b.y + 1}))
            throw ConfigError("blockdude: box " + cell_str(b) + " is floating");
    }
}

BlockDudeSpec BlockDudeSpec::from_ascii(const std::vector<std::string>& rows) {
    if (rows.empty()) throw ConfigError("blockdude map is empty");
    BlockDudeSpec spec;
    spec.height = static_cast<int>(rows.size());
    spec.width = static_cast<int>(rows.front().size());
    int agents = 0;
    int exits = 0;
    for (int y = 0; y < spec.height; ++y) {
        const auto& row = rows[static_cast<std::size_t>(y)];
        if (static_cast<int>(row.size()) != spec.width)
            throw ConfigError("blockdude map row " + std::to_string(y) + " has length " +
                              std::to_string(row.size()) + ", expected " +
                              std::to_string(spec.width));
        for (int x = 0; x < spec.width; ++x) {
            switch (row[static_cast<std::size_t>(x)]) {
                case '.': break;
                case '#': spec.walls.push_back({x, y}); break;
                case 'b': spec.boxes.push_back({x, y}); break;
                case 'E':
                    spec.exit = {x, y};
                    ++exits;
                    break;
                case 's':
                case 'z':
                    spec.agent_start = {x, y};
                    spec.agent_facing = row[static_cast<std::size_t>(x)] == 's' ? Facing::Right
                                                                                : Facing::Left;
                    ++agents;
                    break;
                default:
                    throw ConfigError(std::string("blockdude map: unknown symbol '") +
                                      row[static_cast<std::size_t>(x)] + "' at row " +
                                      std::to_string(y) + ", column " + std::to_string(x));
            }
        }
    }
    if (agents != 1) throw ConfigError("blockdude map needs exactly one agent ('s' or 'z')");
    if (exits != 1) throw ConfigError("blockdude map needs exactly one exit 'E'");
    std::sort(spec.walls.begin(), spec.walls.end());
    std::sort(spec.boxes.begin(), spec.boxes.end());
    spec.validate();
    return spec;
}

std::vector<std::string> BlockDudeSpec::to_ascii() const {
    std::vector<std::string> rows(static_cast<std::size_t>(height),
                                  std::string(static_cast<std::size_t>(width), '.'));
    auto put = [&](Cell c, char ch) {
        rows[static_cast<std::size_t>(c.y)][static_cast<std::size_t>(c.x)] = ch;
    };
    for (Cell w : walls) put(w, '#');
    for (Cell b : boxes) put(b, 'b');
    put(exit, 'E');
    put(agent_start, agent_facing == Facing::Right ? 's' : 'z');
    return rows;
}

BlockDudeState blockdude_initial_state(const BlockDudeSpec& spec) {
    return {spec.agent_start, spec.agent_facing, false, spec.boxes};
}

BlockDudeStep blockdude_step(const BlockDudeSpec& spec, const BlockDudeState& state,
                             BlockDudeAction action) {
    BlockDudeStep out{state, -1.0, false};
    BlockDudeState& s = out.next;
    const auto& boxes = s.boxes;
    auto blocked = [&](Cell c) { return solid(spec, boxes, c); };

    switch (action) {
        case BlockDudeAction::Left:
        case BlockDudeAction::Right: {
            s.facing = action == BlockDudeAction::Left ? Facing::Left : Facing::Right;
            const int dx = s.facing == Facing::Left ? -1 : 1;
            const Cell target{s.agent.x + dx, s.agent.y};
            if (blocked(target)) break;
            if (s.carrying && blocked({target.x, target.y - 1})) break;
            s.agent = target;
            fall(spec, boxes, s.agent);
            break;
        }
        case BlockDudeAction::Up: {
            const int dx = s.facing == Facing::Left ? -1 : 1;
            const Cell front{s.agent.x + dx, s.agent.y};
            const Cell dest{front.x, front.y - 1};
            if (!spec.in_bounds(front) || !blocked(front)) break;
            if (!spec.in_bounds(dest) || blocked(dest)) break;
            if (blocked({s.agent.x, s.agent.y - 1})) break;
            if (s.carrying &&
                (blocked({s.agent.x, s.agent.y - 2}) || blocked({dest.x, dest.y - 1})))
                break;
            s.agent = dest;
            break;
        }
        case BlockDudeAction::Pick: {
            if (s.carrying) break;
            const int dx = s.facing == Facing::Left ? -1 : 1;
            const Cell front{s.agent.x + dx, s.agent.y};
            if (!contains(boxes, front)) break;
            const Cell above_box{front.x, front.y - 1};
            if (spec.in_bounds(above_box) && blocked(above_box)) break;
            if (blocked({s.agent.x, s.agent.y - 1})) break;
            s.boxes.erase(std::lower_bound(s.boxes.begin(), s.boxes.end(), front));
            s.carrying = true;
            break;
        }
        case BlockDudeAction::Put: {
            if (!s.carrying) break;
            const int dx = s.facing == Facing::Left ? -1 : 1;
            Cell drop{s.agent.x + dx, s.agent.y - 1};
            if (blocked(drop)) break;
            fall(spec, boxes, drop);
            s.boxes.insert(std::lower_bound(s.boxes.begin(), s.boxes.end(), drop), drop);
            s.carrying = false;
            break;
        }
    }
    out.done = s.agent == spec.exit;
    return out;
}

}  // namespace taskseq
