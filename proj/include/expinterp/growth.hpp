#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "expinterp/geometry.hpp"

namespace expinterp {

// h(x) = max_n (Re(l_n) x - |l_n|) over a finite prefix. x > 0.
double h_direct(std::span<const cplx> prefix, double x);

// eps * h(x / eps): the exponent of the growth bound
//   |u(x)| <= C exp(eps h(x/eps)),  C = sum |c_n| e^{eps |l_n|}.
double growth_exponent(std::span<const cplx> prefix, double eps, double x);

struct SupportPoint {
  double l;  // abscissa (real part)
  double v;  // value |l + i min|Im||
  bool operator==(const SupportPoint&) const = default;
};

// Lower convex envelope Phi of finitely many points (l_k, v_k), +inf outside [l_1, l_K].
class GrowthMajorant {
 public:
  // Points must have strictly increasing abscissas.
  static GrowthMajorant from_points(std::vector<SupportPoint> points);

  // Keeps exponents with Re > 0, groups equal real parts (relative 1e-12)
  // and takes the smallest |Im| in each group.
  static GrowthMajorant from_exponents(std::span<const cplx> prefix);

  const std::vector<SupportPoint>& support_points() const { return points_; }
  // Vertices of the lower hull, a subset of support_points().
  const std::vector<SupportPoint>& hull() const { return hull_; }

  // The reduced exponents l_k + i min|Im| (only meaningful for from_exponents).
  std::vector<cplx> reduced_exponents() const;

 private:
  std::vector<SupportPoint> points_;
  std::vector<SupportPoint> hull_;
  std::vector<double> min_abs_imag_;
};

double phi(const GrowthMajorant& gm, double t);

// sup_t (x t - Phi(t)), attained at a hull vertex. x > 0.
double phi_star(const GrowthMajorant& gm, double x);

struct ExpTerm {
  cplx coefficient;
  cplx exponent;
  bool operator==(const ExpTerm&) const = default;
};

// Finite exponential sum u(z) = sum c_n e^{l_n z}.
class ExpSum {
 public:
  ExpSum() = default;
  explicit ExpSum(std::vector<ExpTerm> terms);

  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  cplx operator()(cplx z) const { return derivative(z, 0); }
  // u^{(j)}(z) = sum c_n l_n^j e^{l_n z}.
  cplx derivative(cplx z, int order) const;
  // log|u(z)| evaluated with the largest exponential factored out, so that
  // values far beyond double range stay finite. -inf for u(z) = 0.
  double log_abs(cplx z) const;

 private:
  std::vector<ExpTerm> terms_;
};

// sum |c_n| exp(H_K(l_n)), H_K(l) = h_K(arg l) |l|.
double tail_norm(const ExpSum& u, const ConvexCompact& K);

struct GrowthSample {
  double x;
  double log_abs_u;
  double log_bound;
  bool pass;
};

struct GrowthReport {
  double log_constant;  // ln C
  std::vector<GrowthSample> samples;
  std::size_t failures = 0;
  bool passed() const { return failures == 0; }
};

// Checks |u(x)| <= C exp(eps h(x/eps)) (1 + 1e-9) at each x (compared in
// log space). Requires eps > 0, every x > 0, every exponent with Re >= 0.
GrowthReport growth_bound_check(const ExpSum& u, double eps, std::span<const double> xs);

// b_k = k exp(eps h(mu_k / eps)): data that no sum with C <= 1 can match at
// nodes k >= 2. Returned as logarithms to survive large arguments.
std::vector<double> defeating_data_log(std::span<const cplx> prefix, std::span<const double> nodes, double eps);
std::vector<double> defeating_data(std::span<const cplx> prefix, std::span<const double> nodes, double eps);

}  // namespace expinterp
