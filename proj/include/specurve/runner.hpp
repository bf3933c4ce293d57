#ifndef SPECURVE_RUNNER_HPP
#define SPECURVE_RUNNER_HPP

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "specurve/config.hpp"

namespace specurve {

inline constexpr std::string_view kVersion = "0.1.0";

const std::vector<std::string>& task_names();

struct TaskOutput {
  json document;
  // Plot-ready rows; empty text when the task has no samples.
  std::string csv;
};

// Runs one task on a parsed config. Throws Error.
TaskOutput run_task(const std::string& task, const JobConfig& config);

// Loads the config, runs the task and writes the JSON document to out_path
// (stdout when empty) and the CSV next to it. Returns the process exit status.
int run(const std::string& task, const std::string& config_path, const std::string& out_path, std::ostream& console);

}  // namespace specurve

#endif  // SPECURVE_RUNNER_HPP
