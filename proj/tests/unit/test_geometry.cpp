#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "expinterp/errors.hpp"
#include "expinterp/geometry.hpp"

using namespace expinterp;

namespace {

// O(n^3) oracle: a point is a hull vertex iff it is strictly extreme in some
// direction, i.e. not inside (or on an edge of) any triangle of other points
// and not between two others on a segment. Here: brute-force edge test,
// (p, q) is a hull edge iff every other point lies strictly left of p->q.
std::vector<cplx> brute_hull(const std::vector<cplx>& pts) {
  std::vector<cplx> vertices;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      bool edge = true;
      for (std::size_t k = 0; k < pts.size() && edge; ++k) {
        if (k == i || k == j) continue;
        const cplx a = pts[j] - pts[i], b = pts[k] - pts[i];
        if (a.real() * b.imag() - a.imag() * b.real() <= 0.0) edge = false;
      }
      if (edge) vertices.push_back(pts[i]);
    }
  }
  return vertices;
}

bool same_set(std::vector<cplx> a, std::vector<cplx> b) {
  auto less = [](cplx x, cplx y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  return a == b;
}

}  // namespace

TEST_CASE("normalize_angle maps into (-pi, pi]") {
  CHECK(normalize_angle(kPi) == doctest::Approx(kPi));
  CHECK(normalize_angle(-kPi) == doctest::Approx(kPi));
  CHECK(normalize_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
  CHECK(normalize_angle(0.25) == doctest::Approx(0.25));
}

TEST_CASE("Direction unit and angle agree") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 200; ++i) {
    const Direction d = Direction::from_angle(u(rng));
    CHECK(std::abs(std::abs(d.unit()) - 1.0) <= 1e-12);
    CHECK(std::abs(d.unit() - std::polar(1.0, d.angle())) <= 1e-12);
    CHECK(d.angle() > -kPi);
    CHECK(d.angle() <= kPi);
  }
  CHECK_THROWS_AS(Direction::of(0.0), DomainError);
}

TEST_CASE("support function examples") {
  const std::vector<cplx> square{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  CHECK(support_function(convex_hull(square), 0.0) == doctest::Approx(1.0));

  const ConvexCompact disc = ConvexCompact::disc(0.0, 3.0, 64);
  for (double theta : {0.0, 0.3, 1.7, -2.9}) {
    const double h = support_function(disc, theta);
    CHECK(h <= 3.0 + 1e-12);
    CHECK(h >= 3.0 * std::cos(kPi / 64) - 1e-12);
    CHECK(std::abs(h - 3.0) < 0.01);
  }

  const std::vector<cplx> seg{0.0, 1.0};
  const ConvexCompact s = convex_hull(seg);
  CHECK(s.vertices().size() == 2);
  CHECK(support_function(s, 2 * kPi / 3) == doctest::Approx(0.0).epsilon(1e-15));

  CHECK_THROWS_AS(support_function(ConvexCompact{}, 0.0), DomainError);
}

TEST_CASE("convex hull examples") {
  const std::vector<cplx> tri{0.0, 1.0, {0, 1}, {0.25, 0.25}};
  CHECK(same_set(convex_hull(tri).vertices(), {0.0, 1.0, {0, 1}}));

  const std::vector<cplx> line{0.0, 1.0, 2.0};
  CHECK(same_set(convex_hull(line).vertices(), {0.0, 2.0}));

  const std::vector<cplx> one{{3, 4}};
  CHECK(convex_hull(one).vertices().size() == 1);
  CHECK_THROWS_AS(convex_hull(std::vector<cplx>{}), DomainError);
}

TEST_CASE("convex hull matches the brute-force edge oracle") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> pts;
    while (pts.size() < 100) {
      const cplx z(u(rng), u(rng));
      if (std::abs(z) <= 1.0) pts.push_back(z);
    }
    const ConvexCompact K = convex_hull(pts);
    CHECK(same_set(K.vertices(), brute_hull(pts)));
    // counterclockwise, strictly convex
    const auto& v = K.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const cplx a = v[(i + 1) % v.size()] - v[i], b = v[(i + 2) % v.size()] - v[(i + 1) % v.size()];
      CHECK(a.real() * b.imag() - a.imag() * b.real() > 0.0);
    }
  }
}

TEST_CASE("hull preserves the support function; translation covariance") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5, 5), ang(-kPi, kPi);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<cplx> pts;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) pts.emplace_back(u(rng), u(rng));
    const ConvexCompact K = convex_hull(pts);
    const double theta = ang(rng);
    double direct = -INFINITY;
    for (cplx p : pts) direct = std::max(direct, projection(p, theta));
    CHECK(support_function(K, theta) == doctest::Approx(direct).epsilon(1e-12));

    const cplx c(u(rng), u(rng));
    CHECK(support_function(K.translated(c), theta) ==
          doctest::Approx(support_function(K, theta) + (c * std::polar(1.0, theta)).real()).epsilon(1e-12));
  }
}

TEST_CASE("extreme point in direction") {
  const std::vector<cplx> tri{0.0, 1.0, {0, 1}};
  auto e = extreme_point_in_direction(convex_hull(tri), Direction::from_angle(0));
  CHECK(e.vertex == cplx(1.0));
  CHECK(e.is_unique);

  const std::vector<cplx> square{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  CHECK_FALSE(extreme_point_in_direction(convex_hull(square), Direction::from_angle(0)).is_unique);

  const std::vector<cplx> pts{0.0, {2, 1}, {1, 3}};
  const Direction a = Direction::from_angle(-kPi / 4);
  const ConvexCompact K = convex_hull(pts);
  e = extreme_point_in_direction(K, a);
  cplx best = pts[0];
  for (cplx p : pts)
    if (projection(p, a.angle()) > projection(best, a.angle())) best = p;
  CHECK(e.vertex == best);
  CHECK(projection(e.vertex, a.angle()) == support_function(K, a.angle()));
}

TEST_CASE("Ray points and disc slack") {
  const Ray r = Ray::make({1, 1}, 5 * kPi / 2);
  CHECK(r.angle == doctest::Approx(kPi / 2));
  CHECK(std::abs(r.point(2.0) - cplx(1, 3)) < 1e-12);
  CHECK(ConvexCompact::disc(0.0, 1.0, 256).polygonization_slack() == doctest::Approx(1 - std::cos(kPi / 256)));
}
