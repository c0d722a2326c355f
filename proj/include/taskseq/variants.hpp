#pragma once

#include <optional>
#include <string>
#include <vector>

#include "taskseq/mdp.hpp"

namespace taskseq {

enum class Element { Fire, Pit, Treasure, Wall, Box };

/// One layout edit used to derive intermediate tasks from a base task.
struct TaskEdit {
    enum class Kind { Resize, AddElement, RemoveElement, MoveStart };

    Kind kind = Kind::Resize;
    int width = 0;   // Resize: new size, cropping/extending at the origin corner
    int height = 0;
    Cell at;         // AddElement / RemoveElement / MoveStart
    Element element = Element::Fire;
    std::optional<std::string> task_id;  // id of the produced variant

    static TaskEdit resize(int w, int h) { return {Kind::Resize, w, h, {}, Element::Fire, {}}; }
    static TaskEdit add(Element e, Cell c) { return {Kind::AddElement, 0, 0, c, e, {}}; }
    static TaskEdit remove(Cell c) { return {Kind::RemoveElement, 0, 0, c, Element::Fire, {}}; }
    static TaskEdit move_start(Cell c) { return {Kind::MoveStart, 0, 0, c, Element::Fire, {}}; }
};

/// Apply every edit in order to a copy of `base`. Throws ConfigError with a
/// diagnostic if an edit is inapplicable or the result violates its invariants.
TaskSpec apply_edits(const TaskSpec& base, const std::vector<TaskEdit>& edits,
                     std::string task_id);

/// One variant per edit, each derived from `base` independently. An empty
/// edit list yields a single copy of `base`. Variant ids default to
/// `<base>_v<k>`.
std::vector<TaskSpec> generate_task_variants(const TaskSpec& base,
                                             const std::vector<TaskEdit>& edits);

}  // namespace taskseq
