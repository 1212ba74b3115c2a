#include "expinterp/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "expinterp/errors.hpp"

namespace expinterp {

double normalize_angle(double angle) {
  double r = std::remainder(angle, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double projection(cplx sigma, double theta) {
  return sigma.real() * std::cos(theta) - sigma.imag() * std::sin(theta);
}

Direction::Direction(double angle)
    : angle_(normalize_angle(angle)), unit_(std::cos(angle_), std::sin(angle_)) {}

Direction Direction::from_angle(double angle) { return Direction(angle); }

Direction Direction::of(cplx z) {
  if (z == cplx{}) throw DomainError("direction of zero is undefined");
  return Direction(std::arg(z));
}

double angular_distance(double a, double b) { return std::abs(normalize_angle(a - b)); }

namespace {

double cross(cplx o, cplx a, cplx b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

double max_pairwise_extent(std::span<const cplx> pts) {
  // Bounding-box diagonal: within a factor sqrt(2) of the true diameter,
  // which is all the tolerance scaling needs.
  double xmin = pts[0].real(), xmax = xmin, ymin = pts[0].imag(), ymax = ymin;
  for (cplx p : pts) {
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  return std::hypot(xmax - xmin, ymax - ymin);
}

}  // namespace

ConvexCompact convex_hull(std::span<const cplx> points) {
  if (points.empty()) throw DomainError("convex_hull: empty point set");

  std::vector<cplx> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  const double diam = max_pairwise_extent(pts);
  const double merge_tol = 1e-10 * diam;
  const double turn_tol = 1e-10 * diam * diam;

  std::vector<cplx> unique;
  for (cplx p : pts) {
    if (unique.empty() || std::abs(p - unique.back()) > merge_tol) unique.push_back(p);
  }

  ConvexCompact K;
  if (unique.size() <= 2) {
    K.vertices_ = unique;
    if (unique.size() == 2 && std::abs(unique[1] - unique[0]) <= merge_tol) K.vertices_.pop_back();
    return K;
  }

  std::vector<cplx> hull(2 * unique.size());
  std::size_t k = 0;
  for (cplx p : unique) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= turn_tol) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = unique.size() - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], unique[i]) <= turn_tol) --k;
    hull[k++] = unique[i];
  }
  hull.resize(k - 1);
  K.vertices_ = std::move(hull);
  return K;
}

ConvexCompact ConvexCompact::hull_of(std::span<const cplx> points) { return convex_hull(points); }

ConvexCompact ConvexCompact::disc(cplx center, double radius, int vertex_count) {
  if (!(radius > 0.0)) throw DomainError("disc radius must be positive");
  if (vertex_count < 3) throw DomainError("disc polygon needs at least 3 vertices");
  std::vector<cplx> v;
  v.reserve(static_cast<std::size_t>(vertex_count));
  for (int j = 0; j < vertex_count; ++j) {
    v.push_back(center + std::polar(radius, 2.0 * kPi * j / vertex_count));
  }
  ConvexCompact K = convex_hull(v);
  K.slack_ = 1.0 - std::cos(kPi / vertex_count);
  return K;
}

double ConvexCompact::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) d = std::max(d, std::abs(vertices_[i] - vertices_[j]));
  return d;
}

ConvexCompact ConvexCompact::translated(cplx offset) const {
  ConvexCompact K = *this;
  for (cplx& v : K.vertices_) v += offset;
  return K;
}

double support_function(const ConvexCompact& K, double theta) {
  const auto& v = K.vertices();
  if (v.empty()) throw DomainError("support_function: empty compact set");
  double best = projection(v[0], theta);
  for (std::size_t i = 1; i < v.size(); ++i) best = std::max(best, projection(v[i], theta));
  return best;
}

double support_function_complex(const ConvexCompact& K, cplx z) {
  if (z == cplx{}) return 0.0;
  return support_function(K, std::arg(z)) * std::abs(z);
}

ExtremePoint extreme_point_in_direction(const ConvexCompact& K, const Direction& alpha) {
  const auto& v = K.vertices();
  if (v.empty()) throw DomainError("extreme_point_in_direction: empty compact set");
  std::size_t best = 0;
  double best_val = projection(v[0], alpha.angle());
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double p = projection(v[i], alpha.angle());
    if (p > best_val) {
      best_val = p;
      best = i;
    }
  }
  const double tol = 1e-10 * K.diameter();
  bool unique = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != best && best_val - projection(v[i], alpha.angle()) <= tol) unique = false;
  }
  return {v[best], unique};
}

}  // namespace expinterp
