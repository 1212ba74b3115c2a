#include "expinterp/nodes.hpp"

#include <algorithm>
#include <tuple>
#include <cmath>
#include <numeric>
#include <sstream>

#include "expinterp/errors.hpp"

namespace expinterp {

std::string NodeLocation::describe() const {
  std::ostringstream os;
  if (on_ray) os << "ray " << index << " node " << position;
  else os << "off-ray node " << index;
  return os.str();
}

namespace {

struct ParamList {
  std::vector<double> t;
  std::vector<int> m;
};

ParamList params_of(const ParamRule& rule, std::size_t prefix) {
  ParamList out;
  if (const auto* e = std::get_if<ExplicitParams>(&rule)) {
    const std::size_t n = std::min(prefix, e->values.size());
    out.t.assign(e->values.begin(), e->values.begin() + static_cast<std::ptrdiff_t>(n));
    for (std::size_t k = 0; k < n; ++k) out.m.push_back(k < e->multiplicities.size() ? e->multiplicities[k] : 1);
  } else {
    const auto& a = std::get<ArithmeticParams>(rule);
    for (std::size_t k = 0; k < prefix; ++k) {
      out.t.push_back(a.first + static_cast<double>(k) * a.step);
      out.m.push_back(a.multiplicity);
    }
  }
  return out;
}

bool same_point(cplx a, cplx b) {
  return std::abs(a - b) <= 1e-10 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

std::vector<Node> NodeSet::ray_nodes(std::size_t ray, std::size_t prefix) const {
  const RayPortion& r = rays.at(ray);
  const ParamList p = params_of(r.params, prefix);
  std::vector<Node> out;
  for (std::size_t k = 0; k < p.t.size(); ++k) out.push_back({r.ray.point(p.t[k]), p.m[k]});
  return out;
}

std::vector<LocatedNode> NodeSet::examined(std::size_t prefix) const {
  std::vector<LocatedNode> out;
  for (std::size_t j = 0; j < rays.size(); ++j) {
    const auto nodes = ray_nodes(j, prefix);
    for (std::size_t k = 0; k < nodes.size(); ++k) out.push_back({nodes[k], {true, j, k}});
  }
  for (std::size_t i = 0; i < off_ray.size(); ++i)
    out.push_back({{off_ray[i].point, off_ray[i].multiplicity}, {false, i, 0}});
  return out;
}

std::vector<std::string> NodeSet::diagnostics(std::size_t prefix) const {
  std::vector<std::string> diag;
  if (rays.empty()) diag.emplace_back("node set has no rays; at least one ray portion is required");
  for (std::size_t j = 0; j < rays.size(); ++j) {
    const std::string where = "ray " + std::to_string(j);
    if (!std::isfinite(rays[j].ray.angle)) diag.push_back(where + ": angle is not finite");
    if (const auto* e = std::get_if<ExplicitParams>(&rays[j].params)) {
      if (!e->multiplicities.empty() && e->multiplicities.size() != e->values.size())
        diag.push_back(where + ": multiplicities length differs from parameter count");
    } else {
      const auto& a = std::get<ArithmeticParams>(rays[j].params);
      if (!(a.step > 0.0)) diag.push_back(where + ": arithmetic step must be positive");
    }
    const ParamList p = params_of(rays[j].params, prefix);
    if (p.t.empty()) diag.push_back(where + ": no nodes in the examined prefix");
    for (std::size_t k = 0; k < p.t.size(); ++k) {
      if (!(p.t[k] > 0.0)) diag.push_back(where + " node " + std::to_string(k) + ": parameter must be > 0");
      if (k > 0 && !(p.t[k] > p.t[k - 1]))
        diag.push_back(where + " node " + std::to_string(k) + ": parameters must be strictly increasing");
      if (p.m[k] < 1) diag.push_back(where + " node " + std::to_string(k) + ": multiplicity must be >= 1");
    }
  }
  for (std::size_t i = 0; i < off_ray.size(); ++i) {
    if (off_ray[i].multiplicity < 1)
      diag.push_back("off-ray node " + std::to_string(i) + ": multiplicity must be >= 1");
  }

  // Duplicates: sweep in order of real part.
  auto nodes = examined(prefix);
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return nodes[a].node.point.real() < nodes[b].node.point.real();
  });
  double max_abs = 1.0;
  for (const auto& n : nodes) max_abs = std::max(max_abs, std::abs(n.node.point));
  const double window = 1e-10 * max_abs;
  std::vector<std::pair<std::size_t, std::size_t>> dups;
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const cplx pa = nodes[order[a]].node.point, pb = nodes[order[b]].node.point;
      if (pb.real() - pa.real() > window) break;
      if (same_point(pa, pb)) dups.emplace_back(std::min(order[a], order[b]), std::max(order[a], order[b]));
    }
  }
  std::sort(dups.begin(), dups.end());
  for (auto [a, b] : dups) {
    std::ostringstream os;
    os << "duplicate node " << nodes[a].node.point << " at " << nodes[a].where.describe() << " and "
       << nodes[b].where.describe();
    diag.push_back(os.str());
  }
  return diag;
}

void NodeSet::validate(std::size_t prefix) const {
  const auto diag = diagnostics(prefix);
  if (!diag.empty()) throw ConfigurationError(diag.front());
}

// ---------------------------------------------------------------------------

std::vector<RayWitness> check_condition_i(const NodeSet& M, std::span<const Direction> P, CriterionTolerances tol) {
  if (P.empty()) throw DomainError("check_condition_i: empty direction set");
  std::vector<RayWitness> out;
  for (std::size_t j = 0; j < M.rays.size(); ++j) {
    const double beta = M.rays[j].ray.angle;
    const Direction* best = nullptr;
    double best_margin = -2.0;
    for (const Direction& alpha : P) {
      const double margin = std::cos(normalize_angle(beta + alpha.angle()));
      const bool better = margin > best_margin + 1e-12 ||
                          (std::abs(margin - best_margin) <= 1e-12 && best &&
                           std::abs(alpha.angle()) < std::abs(best->angle()));
      if (!best || better) {
        best = &alpha;
        best_margin = margin;
      }
    }
    RayWitness w{j, std::nullopt, best_margin};
    if (best_margin > tol.angle) w.direction = *best;
    out.push_back(w);
  }
  return out;
}

std::vector<ProjectionCollision> check_condition_ii(const NodeSet& M, std::span<const RayWitness> witnesses,
                                                    std::size_t prefix, CriterionTolerances tol) {
  const auto nodes = M.examined(prefix);
  double max_abs = 0.0;
  for (const auto& n : nodes) max_abs = std::max(max_abs, std::abs(n.node.point));
  const double window = tol.projection * (1.0 + 2.0 * max_abs);

  struct Found {
    std::size_t ray, l, k;
    ProjectionCollision c;
  };
  std::vector<Found> found;
  for (const RayWitness& w : witnesses) {
    if (!w.direction) continue;
    const double alpha = w.direction->angle();
    std::vector<double> proj(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) proj[i] = projection(nodes[i].node.point, alpha);
    std::vector<std::size_t> order(nodes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return proj[a] < proj[b]; });

    auto on_this_ray = [&](std::size_t i) { return nodes[i].where.on_ray && nodes[i].where.index == w.ray; };
    for (std::size_t a = 0; a < order.size(); ++a) {
      for (std::size_t b = a + 1; b < order.size(); ++b) {
        const std::size_t i = order[a], k = order[b];
        if (proj[k] - proj[i] > window) break;
        if (!on_this_ray(i) && !on_this_ray(k)) continue;
        const cplx pi = nodes[i].node.point, pk = nodes[k].node.point;
        if (std::abs(proj[k] - proj[i]) > tol.projection * (1.0 + std::abs(pi) + std::abs(pk))) continue;
        // mu_l is the node of ray j; when both are, the earlier one.
        std::size_t l = i, other = k;
        if (!on_this_ray(i) || (on_this_ray(k) && k < i)) std::swap(l, other);
        found.push_back({w.ray, l, other, {w.ray, nodes[l].node.point, nodes[other].node.point, proj[l]}});
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    return std::tie(a.ray, a.l, a.k) < std::tie(b.ray, b.l, b.k);
  });
  std::vector<ProjectionCollision> out;
  for (const auto& f : found) out.push_back(f.c);
  return out;
}

CriterionVerdict check_criterion(const NodeSet& M, const ExponentSet& lambda, std::size_t prefix,
                                 CriterionTolerances tol) {
  M.validate(prefix);
  CriterionVerdict v;
  v.prefix = prefix;
  v.limit_directions = limit_directions(lambda);
  v.witnesses = check_condition_i(M, v.limit_directions, tol);
  for (const RayWitness& w : v.witnesses)
    if (!w.direction) v.violations.emplace_back(NoDirection{w.ray});
  for (auto& c : check_condition_ii(M, v.witnesses, prefix, tol)) v.violations.emplace_back(c);
  v.holds = v.violations.empty();
  return v;
}

}  // namespace expinterp
