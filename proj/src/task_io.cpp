#include "taskseq/task_io.hpp"

#include <fstream>
#include <set>

#include "taskseq/errors.hpp"

namespace taskseq {

using nlohmann::json;

TaskSet::TaskSet(std::vector<TaskSpec> tasks) : tasks_(std::move(tasks)) {
    std::set<std::string> seen;
    for (const auto& t : tasks_) {
        t.validate();
        if (!seen.insert(t.task_id).second)
            throw ConfigError("duplicate task_id '" + t.task_id + "' in task set");
    }
}

bool TaskSet::contains(const std::string& id) const {
    for (const auto& t : tasks_)
        if (t.task_id == id) return true;
    return false;
}

const TaskSpec& TaskSet::at(const std::string& id) const {
    for (const auto& t : tasks_)
        if (t.task_id == id) return t;
    throw ConfigError("unknown task_id '" + id + "'");
}

std::vector<std::string> TaskSet::ids() const {
    std::vector<std::string> out;
    out.reserve(tasks_.size());
    for (const auto& t : tasks_) out.push_back(t.task_id);
    return out;
}

json task_to_json(const TaskSpec& task) {
    json env;
    env["kind"] = env_kind_name(env_kind(task.env));
    env["map"] = std::visit([](const auto& spec) { return spec.to_ascii(); }, task.env);
    return json{{"task_id", task.task_id},
                {"env", env},
                {"gamma", task.gamma},
                {"max_steps", task.max_steps},
                {"train_episodes", task.train_episodes},
                {"eval_episodes", task.eval_episodes}};
}

TaskSpec task_from_json(const json& j) {
    try {
        TaskSpec t;
        t.task_id = j.at("task_id").get<std::string>();
        const auto& env = j.at("env");
        const auto kind = env.at("kind").get<std::string>();
        const auto rows = env.at("map").get<std::vector<std::string>>();
        if (kind == "gridworld")
            t.env = GridWorldSpec::from_ascii(rows);
        else if (kind == "blockdude")
            t.env = BlockDudeSpec::from_ascii(rows);
        else
            throw ConfigError("unknown environment kind '" + kind + "'");
        t.gamma = j.value("gamma", 1.0);
        t.max_steps = j.at("max_steps").get<int>();
        t.train_episodes = j.at("train_episodes").get<int>();
        t.eval_episodes = j.at("eval_episodes").get<int>();
        t.validate();
        return t;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed task entry: ") + e.what());
    }
}

json task_set_to_json(const TaskSet& set) {
    json tasks = json::array();
    for (const auto& t : set.tasks()) tasks.push_back(task_to_json(t));
    return json{{"tasks", tasks}};
}

TaskSet task_set_from_json(const json& j) {
    if (!j.contains("tasks") || !j["tasks"].is_array())
        throw ConfigError("task set must contain a 'tasks' array");
    std::vector<TaskSpec> tasks;
    for (const auto& entry : j["tasks"]) tasks.push_back(task_from_json(entry));
    return TaskSet(std::move(tasks));
}

TaskSet load_task_set(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open task set file '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("task set file '" + path.string() + "': " + e.what());
    }
    return task_set_from_json(j);
}

void save_task_set(const TaskSet& set, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write task set file '" + path.string() + "'");
    out << task_set_to_json(set).dump(2) << '\n';
}

}  // namespace taskseq
