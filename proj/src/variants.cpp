#include "taskseq/variants.hpp"

#include <algorithm>

#include "taskseq/errors.hpp"

namespace taskseq {

namespace {

std::string where(Cell c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }

void edit_grid(GridWorldSpec& g, const TaskEdit& e) {
    switch (e.kind) {
        case TaskEdit::Kind::Resize: {
            if (e.width <= 0 || e.height <= 0) throw ConfigError("resize: size must be positive");
            GridWorldSpec out;
            out.width = e.width;
            out.height = e.height;
            out.start = g.start;
            out.cells.assign(static_cast<std::size_t>(e.width * e.height), GridCell::Free);
            for (int y = 0; y < std::min(g.height, e.height); ++y)
                for (int x = 0; x < std::min(g.width, e.width); ++x) out.set({x, y}, g.at({x, y}));
            if (!out.in_bounds(out.start)) throw ConfigError("resize: start falls outside the crop");
            g = std::move(out);
            break;
        }
        case TaskEdit::Kind::AddElement: {
            if (!g.in_bounds(e.at)) throw ConfigError("add: cell " + where(e.at) + " out of bounds");
            if (g.at(e.at) != GridCell::Free || g.start == e.at)
                throw ConfigError("add: cell " + where(e.at) + " is occupied");
            GridCell kind{};
            switch (e.element) {
                case Element::Fire: kind = GridCell::Fire; break;
                case Element::Pit: kind = GridCell::Pit; break;
                case Element::Treasure: kind = GridCell::Treasure; break;
                default: throw ConfigError("add: walls and boxes do not exist in gridworld");
            }
            g.set(e.at, kind);
            break;
        }
        case TaskEdit::Kind::RemoveElement:
            if (!g.in_bounds(e.at) || g.at(e.at) == GridCell::Free)
                throw ConfigError("remove: no element at " + where(e.at));
            g.set(e.at, GridCell::Free);
            break;
        case TaskEdit::Kind::MoveStart:
            g.start = e.at;
            break;
    }
}

void edit_blockdude(BlockDudeSpec& b, const TaskEdit& e) {
    auto has = [](const std::vector<Cell>& v, Cell c) {
        return std::binary_search(v.begin(), v.end(), c);
    };
    switch (e.kind) {
        case TaskEdit::Kind::Resize: {
            if (e.width <= 0 || e.height <= 0) throw ConfigError("resize: size must be positive");
            auto outside = [&](Cell c) { return c.x >= e.width || c.y >= e.height; };
            std::erase_if(b.walls, outside);
            std::erase_if(b.boxes, outside);
            b.width = e.width;
            b.height = e.height;
            if (outside(b.exit) || outside(b.agent_start))
                throw ConfigError("resize: exit or agent start falls outside the crop");
            break;
        }
        case TaskEdit::Kind::AddElement: {
            if (!b.in_bounds(e.at)) throw ConfigError("add: cell " + where(e.at) + " out of bounds");
            if (has(b.walls, e.at) || has(b.boxes, e.at) || b.exit == e.at || b.agent_start == e.at)
                throw ConfigError("add: cell " + where(e.at) + " is occupied");
            std::vector<Cell>* target = nullptr;
            if (e.element == Element::Wall)
                target = &b.walls;
            else if (e.element == Element::Box)
                target = &b.boxes;
            else
                throw ConfigError("add: only walls and boxes exist in blockdude");
            target->insert(std::lower_bound(target->begin(), target->end(), e.at), e.at);
            break;
        }
        case TaskEdit::Kind::RemoveElement: {
            auto erase = [&](std::vector<Cell>& v) {
                auto it = std::lower_bound(v.begin(), v.end(), e.at);
                if (it == v.end() || *it != e.at) return false;
                v.erase(it);
                return true;
            };
            if (!erase(b.walls) && !erase(b.boxes))
                throw ConfigError("remove: no wall or box at " + where(e.at));
            break;
        }
        case TaskEdit::Kind::MoveStart:
            b.agent_start = e.at;
            break;
    }
}

}  // namespace

TaskSpec apply_edits(const TaskSpec& base, const std::vector<TaskEdit>& edits,
                     std::string task_id) {
    TaskSpec out = base;
    out.task_id = std::move(task_id);
    for (const auto& e : edits) {
        if (auto* g = std::get_if<GridWorldSpec>(&out.env))
            edit_grid(*g, e);
        else
            edit_blockdude(std::get<BlockDudeSpec>(out.env), e);
    }
    out.validate();
    return out;
}

std::vector<TaskSpec> generate_task_variants(const TaskSpec& base,
                                             const std::vector<TaskEdit>& edits) {
    if (edits.empty()) return {base};
    std::vector<TaskSpec> out;
    out.reserve(edits.size());
    for (std::size_t k = 0; k < edits.size(); ++k) {
        std::string id = edits[k].task_id.value_or(base.task_id + "_v" + std::to_string(k + 1));
        out.push_back(apply_edits(base, {edits[k]}, std::move(id)));
    }
    return out;
}

}  // namespace taskseq
