#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expinterp/exponents.hpp"
#include "expinterp/geometry.hpp"

namespace expinterp {

inline constexpr std::size_t kMaxPolynomialDegree = 64;

// Dense polynomial, coefficients in ascending degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coefficients);
  static Polynomial constant(cplx c) { return Polynomial({c}); }

  const std::vector<cplx>& coefficients() const { return coefficients_; }
  // Degree after dropping trailing zeros; -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return degree() < 0; }
  cplx operator()(cplx z) const;

  bool operator==(const Polynomial&) const = default;

 private:
  std::vector<cplx> coefficients_;
};

struct ExpPolyTerm {
  Polynomial coefficient;
  cplx exponent;

  bool operator==(const ExpPolyTerm&) const = default;
};

// p(z) = sum a_k(z) e^{mu_k z}, mu_k pairwise distinct.
class ExpPolynomial {
 public:
  ExpPolynomial() = default;
  explicit ExpPolynomial(std::vector<ExpPolyTerm> terms);
  // sum_k c_k e^{mu_k z} with constant coefficients.
  static ExpPolynomial from_exponentials(std::span<const cplx> coefficients, std::span<const cplx> exponents);

  const std::vector<ExpPolyTerm>& terms() const { return terms_; }
  bool is_zero() const;

  cplx operator()(cplx z) const;
  // ln|p(z)|, finite far beyond double range of e^{mu z}; -inf when p(z) = 0.
  double log_abs(cplx z) const;

  bool operator==(const ExpPolynomial&) const = default;

 private:
  std::vector<ExpPolyTerm> terms_;
};

ExpPolynomial operator+(const ExpPolynomial& p, const ExpPolynomial& q);

struct DominantSplit {
  ExpPolyTerm leading;  // a_tau, mu_tau
  ExpPolynomial rest;
  // Re(mu_tau e^{i alpha}) - max over the rest; +inf when the rest is empty.
  double gap = 0.0;
};

// Term maximizing Re(mu_k e^{i alpha}) among terms with nonzero coefficient.
// Throws DomainError for the zero polynomial and TiedExtremePointError when
// the maximum is attained twice within 1e-10 max(1, max|mu_k|).
DominantSplit dominant_split(const ExpPolynomial& p, const Direction& alpha);

struct AngleBound {
  DominantSplit split;
  double alpha = 0.0;
  double delta = 0.0;
  double eps = 0.0;
  double c_eps = 0.0;  // over-bound of |rest(z)| e^{-(h_rest(theta) + eps)|z|}
  double radius = 0.0;  // beyond it C_eps e^{-eps|z|} <= |a_tau(z)| / 2

  bool in_angle(cplx z) const;
  // e^{Re(mu_tau z)} (|a_tau(z)| - C_eps e^{-eps|z|}); may be <= 0 inside the radius.
  double bound(cplx z) const;
  // ln of bound(z), -inf when it is not positive.
  double log_bound(cplx z) const;
};

// Lower bound |p(z)| >= bound(z) on the angle |arg z - alpha| <= delta.
// Requires gap >= 2 eps (PreconditionError) and checks on a 101-point
// theta grid that Re(mu_tau e^{i theta}) - h_rest(theta) >= 2 eps persists
// (PreconditionError otherwise). C_eps is 1.5 times the sampled supremum.
AngleBound lower_bound_in_angle(const ExpPolynomial& p, const Direction& alpha, double delta, double eps);

struct ZeroFreeSample {
  cplx z;
  double abs_p;
  double bound;
};

struct ZeroFreeReport {
  double radius = 0.0;            // inner radius sampled from
  double certified_radius = 0.0;  // from lower_bound_in_angle
  std::size_t samples = 0;
  double min_abs = 0.0;
  cplx min_location;
  // min over samples of |p(z)| / (|a_tau(z)| e^{Re(mu_tau z)}); at least 1/2
  // beyond the certified radius, near 0 close to a zero.
  double min_normalized = 0.0;
  cplx min_normalized_location;
  std::vector<ZeroFreeSample> failures;  // bound <= 0 or |p| < bound
  bool passed = false;
};

// Samples |p| on grid x grid polar points of {|arg z - alpha| <= delta,
// radius < |z| <= 4 radius + 10}. Passes iff radius >= the certified radius
// and every sample has a positive bound that |p| meets.
ZeroFreeReport zero_free_angle_check(const ExpPolynomial& p, const Direction& alpha, double delta, double eps,
                                     double radius, std::size_t grid);

enum class MembershipVerdict { zero_element, certified, inconclusive };
std::string to_string(MembershipVerdict v);

struct MembershipReport {
  MembershipVerdict verdict = MembershipVerdict::inconclusive;
  std::optional<AngleBound> bound;  // absent for the zero element
  std::size_t in_angle_beyond_radius = 0;
  std::size_t certified_count = 0;
  std::optional<std::size_t> first_index;  // 0-based index into the sequence
  cplx first_point;
  double first_log_abs = 0.0;
  double first_log_bound = 0.0;
};

// Certifies that p cannot vanish on all of seq: takes eps = gap / 4 (gap
// capped at 4), halves delta from pi/4 until the gap persists, and checks
// ln|p(l_n)| >= ln bound(l_n) > -inf at the sequence points in the angle
// beyond the certified radius. Precondition errors of the bound propagate.
MembershipReport membership_contradiction(const ExpPolynomial& p, std::span<const cplx> seq, const Direction& alpha);

}  // namespace expinterp
