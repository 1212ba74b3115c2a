#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "expinterp/scenario.hpp"

namespace expinterp {

std::string library_version();

struct RunOptions {
  std::uint64_t seed = 0;  // task i draws from seed + i
  bool parallel = false;
};

struct PlotCurve {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

enum class TaskErrorKind { none, precondition, domain, configuration, resource, internal };
std::string to_string(TaskErrorKind k);

struct TaskOutcome {
  std::size_t index = 0;
  std::string kind;
  std::string id;
  TaskErrorKind error = TaskErrorKind::none;
  std::string error_message;
  std::string result_json;  // compact JSON of the result record; "null" on error
  std::vector<PlotCurve> plots;
  double elapsed_seconds = 0.0;
};

struct RunResult {
  std::vector<TaskOutcome> outcomes;  // in task order
  std::string report;                 // canonical report text, deterministic
  int exit_code = 0;                  // 0 ok, 1 task precondition errors, 4 resource cap hit
};

// Runs every task; failures become outcome records rather than exceptions.
RunResult run_scenario(const Scenario& s, const RunOptions& opts = {});

// Writes report.json, report.meta.json and (for emit_plot tasks)
// task<index>_<curve>.csv into out_dir, creating it if needed.
void write_outputs(const std::string& out_dir, const Scenario& s, const RunOptions& opts, const RunResult& r);

}  // namespace expinterp
