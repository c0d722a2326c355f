#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "taskseq/mdp.hpp"

namespace taskseq {

/// Ordered collection of tasks with unique ids.
class TaskSet {
public:
    TaskSet() = default;
    explicit TaskSet(std::vector<TaskSpec> tasks);

    const std::vector<TaskSpec>& tasks() const { return tasks_; }
    std::size_t size() const { return tasks_.size(); }
    bool contains(const std::string& id) const;
    /// Throws ConfigError for unknown ids.
    const TaskSpec& at(const std::string& id) const;
    std::vector<std::string> ids() const;

private:
    std::vector<TaskSpec> tasks_;
};

nlohmann::json task_to_json(const TaskSpec& task);
TaskSpec task_from_json(const nlohmann::json& j);

nlohmann::json task_set_to_json(const TaskSet& set);
TaskSet task_set_from_json(const nlohmann::json& j);

TaskSet load_task_set(const std::filesystem::path& path);
void save_task_set(const TaskSet& set, const std::filesystem::path& path);

}  // namespace taskseq
