#pragma once

#include <filesystem>
#include <string>

#include "taskseq/task_io.hpp"

namespace taskseq::test {

inline std::filesystem::path fixture(const std::string& rel) {
    return std::filesystem::path(TASKSEQ_FIXTURE_DIR) / rel;
}

inline TaskSpec grid_task(const std::string& id, std::vector<std::string> rows, int max_steps = 100,
                          double gamma = 1.0) {
    TaskSpec t;
    t.task_id = id;
    t.env = GridWorldSpec::from_ascii(rows);
    t.gamma = gamma;
    t.max_steps = max_steps;
    return t;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("taskseq_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace taskseq::test
