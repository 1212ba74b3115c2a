#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "expinterp/exponents.hpp"
#include "expinterp/geometry.hpp"

namespace expinterp {

// Parameters t_k > 0 of the nodes a + t_k e^{i beta} on one ray.
struct ExplicitParams {
  std::vector<double> values;
  std::vector<int> multiplicities;
  bool operator==(const ExplicitParams&) const = default;
};

// t_k = first + k * step, k = 0, 1, ... (an infinite portion).
struct ArithmeticParams {
  double first = 1.0;
  double step = 1.0;
  int multiplicity = 1;
  bool operator==(const ArithmeticParams&) const = default;
};

using ParamRule = std::variant<ExplicitParams, ArithmeticParams>;

struct RayPortion {
  Ray ray;
  ParamRule params;
  bool operator==(const RayPortion&) const = default;
};

struct OffRayNode {
  cplx point;
  int multiplicity = 1;
  bool operator==(const OffRayNode&) const = default;
};

struct Node {
  cplx point;
  int multiplicity = 1;
  bool operator==(const Node&) const = default;
};

// Where a node comes from: ray index and position on it, or an off-ray index.
struct NodeLocation {
  bool on_ray = true;
  std::size_t index = 0;     // ray index or off-ray index
  std::size_t position = 0;  // position along the ray (0-based)
  std::string describe() const;
  bool operator==(const NodeLocation&) const = default;
};

struct LocatedNode {
  Node node;
  NodeLocation where;
};

struct NodeSet {
  std::vector<RayPortion> rays;
  std::vector<OffRayNode> off_ray;

  // Up to `prefix` nodes of one ray, in increasing t.
  std::vector<Node> ray_nodes(std::size_t ray, std::size_t prefix) const;
  // All examined nodes: each ray's prefix, then the off-ray nodes.
  std::vector<LocatedNode> examined(std::size_t prefix) const;

  // Structural problems on the examined prefix: non-increasing or
  // nonpositive parameters, bad multiplicities, duplicate points (relative
  // 1e-10). Empty when valid.
  std::vector<std::string> diagnostics(std::size_t prefix) const;
  // Throws ConfigurationError with the first diagnostic.
  void validate(std::size_t prefix) const;

  bool operator==(const NodeSet&) const = default;
};

struct RayWitness {
  std::size_t ray = 0;
  std::optional<Direction> direction;  // empty when no limit direction qualifies
  double margin = 0.0;                 // cos(beta + alpha) of the best candidate
};

struct NoDirection {
  std::size_t ray;
  bool operator==(const NoDirection&) const = default;
};

struct ProjectionCollision {
  std::size_t ray;
  cplx mu_l;  // node on the ray
  cplx mu_k;  // colliding node
  double projection;
  bool operator==(const ProjectionCollision&) const = default;
};

using Violation = std::variant<NoDirection, ProjectionCollision>;

struct CriterionVerdict {
  bool holds = false;
  std::vector<RayWitness> witnesses;
  std::vector<Violation> violations;
  std::size_t prefix = 0;
  std::vector<Direction> limit_directions;
};

struct CriterionTolerances {
  double angle = 1e-9;        // witness accepted iff cos(beta + alpha) > angle
  double projection = 1e-10;  // collision iff |diff| <= projection (1 + |mu_l| + |mu_k|)
};

inline constexpr std::size_t kDefaultCriterionPrefix = 200;

// Condition (i): for each ray the direction alpha in P maximizing
// cos(beta + alpha); ties broken by smallest |alpha|.
std::vector<RayWitness> check_condition_i(const NodeSet& M, std::span<const Direction> P,
                                          CriterionTolerances tol = {});

// Condition (ii): for every ray j with witness alpha, no examined node shares
// the projection Re(mu e^{i alpha}) of a node of ray j.
std::vector<ProjectionCollision> check_condition_ii(const NodeSet& M, std::span<const RayWitness> witnesses,
                                                    std::size_t prefix = kDefaultCriterionPrefix,
                                                    CriterionTolerances tol = {});

CriterionVerdict check_criterion(const NodeSet& M, const ExponentSet& lambda,
                                 std::size_t prefix = kDefaultCriterionPrefix, CriterionTolerances tol = {});

}  // namespace expinterp
