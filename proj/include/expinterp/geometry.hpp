#pragma once

#include <complex>
#include <span>
#include <vector>

namespace expinterp {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Reduce an angle to (-pi, pi].
double normalize_angle(double angle);

// Re(sigma * e^{i theta}): projection used by every support-function evaluation.
double projection(cplx sigma, double theta);

// A point of the unit circle, s = e^{i angle} with angle in (-pi, pi].
class Direction {
 public:
  Direction() = default;
  static Direction from_angle(double angle);
  // Direction of a nonzero complex number.
  static Direction of(cplx z);

  double angle() const { return angle_; }
  cplx unit() const { return unit_; }

  bool operator==(const Direction&) const = default;

 private:
  explicit Direction(double angle);
  double angle_ = 0.0;
  cplx unit_ = 1.0;
};

// Circular distance between two angles, in [0, pi].
double angular_distance(double a, double b);

struct Ray {
  cplx origin;
  double angle = 0.0;  // normalized on construction via make()

  static Ray make(cplx origin, double angle) { return Ray{origin, normalize_angle(angle)}; }
  cplx point(double t) const { return origin + t * std::polar(1.0, angle); }

  bool operator==(const Ray&) const = default;
};

// Planar convex compact set stored as its vertex polygon (counterclockwise,
// no three consecutive vertices collinear). Degenerate sets keep 1 or 2
// vertices. Discs are inscribed regular polygons.
class ConvexCompact {
 public:
  static constexpr int kDefaultDiscVertices = 256;

  // Builds the hull of arbitrary points; see convex_hull().
  static ConvexCompact hull_of(std::span<const cplx> points);
  static ConvexCompact disc(cplx center, double radius, int vertex_count = kDefaultDiscVertices);

  const std::vector<cplx>& vertices() const { return vertices_; }
  double diameter() const;
  ConvexCompact translated(cplx offset) const;

  // Relative slack of the inscribed polygon: h_poly >= cos(pi/n) * h_disc
  // for a disc centered at the origin. Zero for sets not built by disc().
  double polygonization_slack() const { return slack_; }

 private:
  friend ConvexCompact convex_hull(std::span<const cplx> points);
  std::vector<cplx> vertices_;
  double slack_ = 0.0;
};

// h_K(theta) = max over vertices of Re(sigma e^{i theta}). Throws DomainError on empty K.
double support_function(const ConvexCompact& K, double theta);

// H_K(z) = h_K(arg z) |z|.
double support_function_complex(const ConvexCompact& K, cplx z);

// Monotone-chain hull with collinearity tolerance 1e-10 relative to the
// input diameter. Throws DomainError on empty input.
ConvexCompact convex_hull(std::span<const cplx> points);

struct ExtremePoint {
  cplx vertex;
  bool is_unique = true;
};

// Vertex maximizing Re(sigma e^{i alpha}). Ties are detected at 1e-10 times
// the hull diameter.
ExtremePoint extreme_point_in_direction(const ConvexCompact& K, const Direction& alpha);

}  // namespace expinterp
