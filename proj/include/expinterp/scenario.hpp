#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "expinterp/exponents.hpp"
#include "expinterp/interp.hpp"
#include "expinterp/nodes.hpp"

namespace expinterp {

inline constexpr std::string_view kScenarioSchema = "expinterp.scenario/1";
inline constexpr std::string_view kReportSchema = "expinterp.report/1";

// Default-on limits keeping runs at desk scale; a scenario may override them.
struct ResourceCaps {
  std::size_t criterion_prefix = 10000;
  std::size_t solve_dimension = kMaxSolveDimension;
  std::size_t trials = 10000;
  std::size_t exponent_count = 2000;
  std::size_t samples = 100000;
  std::size_t grid = 1024;
  bool operator==(const ResourceCaps&) const = default;
};

// Explicit interpolation problem as written in a scenario.
struct ProblemSpec {
  std::vector<Node> nodes;
  std::vector<cplx> exponents;
  std::vector<cplx> data;
  bool operator==(const ProblemSpec&) const = default;
};

struct CriterionTask {
  std::size_t prefix = kDefaultCriterionPrefix;
  double angle_tolerance = 1e-9;
  double projection_tolerance = 1e-10;
  bool operator==(const CriterionTask&) const = default;
};

// Either an explicit problem, or `size` nodes from the node set paired with
// the sparse subsequence of the exponent set along the criterion witnesses,
// solved for `trials` random data vectors with |b| <= data_bound.
struct SolveTask {
  std::optional<ProblemSpec> problem;
  std::size_t size = 8;
  std::size_t trials = 1;
  double data_bound = 1.0;
  double tolerance = 1e-8;
  bool operator==(const SolveTask&) const = default;
};

struct CrudeTask {
  ProblemSpec problem;
  std::vector<double> delta;
  double tolerance = 1e-8;
  bool operator==(const CrudeTask&) const = default;
};

// Two-node obstruction: every sum over the constructed exponents agrees at
// mu_l and mu_k; the two-node system is also solved and must be singular.
struct ObstructionTask {
  cplx mu_l;
  cplx mu_k;
  std::size_t count = 25;
  std::size_t trials = 100;
  bool operator==(const ObstructionTask&) const = default;
};

enum class GrowthMode { bound, failure };

// bound: random sums over the first `count` exponents with |c_n| <= e^{-decay n},
// checked at `samples` points of (0, x_max].
// failure: defeating data at `nodes` and the pinch-off demonstration.
struct GrowthTask {
  GrowthMode mode = GrowthMode::bound;
  double eps = 0.5;
  std::size_t count = 20;
  std::size_t trials = 100;
  double decay = 2.0;
  double x_max = 50.0;
  std::size_t samples = 100;
  std::vector<double> nodes;
  bool operator==(const GrowthTask&) const = default;
};

struct ExpolyTermSpec {
  std::vector<cplx> coefficients;  // ascending degree
  cplx exponent;
  bool operator==(const ExpolyTermSpec&) const = default;
};

// Lower bound, zero-free angle scan and membership certificate for one
// exponential polynomial. The sequence is explicit or the sparse
// subsequence of the exponent set along alpha.
struct ExpolyTask {
  std::vector<ExpolyTermSpec> terms;
  double alpha = 0.0;
  double delta = 0.1;
  double eps = 0.25;
  std::optional<double> radius;  // default: the certified radius
  std::size_t grid = 64;
  std::optional<std::vector<cplx>> sequence;
  std::size_t sequence_count = 12;
  bool operator==(const ExpolyTask&) const = default;
};

using TaskBody = std::variant<CriterionTask, SolveTask, CrudeTask, ObstructionTask, GrowthTask, ExpolyTask>;

struct Task {
  std::string id;
  TaskBody body;
  bool emit_plot = false;
  std::optional<ExponentSet> exponent_set;  // overrides the scenario's
  std::optional<NodeSet> node_set;
  bool operator==(const Task&) const = default;
};

std::string task_kind(const TaskBody& body);

struct Scenario {
  std::string name;
  ExponentSet exponent_set;
  NodeSet node_set;
  std::vector<Task> tasks;
  ResourceCaps caps;
  bool operator==(const Scenario&) const = default;

  const ExponentSet& exponents_for(const Task& t) const { return t.exponent_set ? *t.exponent_set : exponent_set; }
  const NodeSet& nodes_for(const Task& t) const { return t.node_set ? *t.node_set : node_set; }
};

enum class DiagnosticKind { syntax, schema, validation, resource };

struct Diagnostic {
  DiagnosticKind kind = DiagnosticKind::validation;
  std::string path;  // JSON pointer-like location, or "line:column" for syntax errors
  std::string message;
  std::string format() const;
};

// Either a scenario or the diagnostics that prevented decoding it.
struct ParseResult {
  std::optional<Scenario> scenario;
  std::vector<Diagnostic> diagnostics;
};

ParseResult parse_scenario(std::string_view text);
ParseResult load_scenario(const std::string& path);

// Canonical JSON text; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& s);

// Semantic checks without running anything. Empty means runnable.
std::vector<Diagnostic> validate_scenario(const Scenario& s);

}  // namespace expinterp
