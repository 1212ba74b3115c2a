#include <cmath>
#include <random>

#include "doctest.h"
#include "expinterp/errors.hpp"
#include "expinterp/expoly.hpp"

using namespace expinterp;

namespace {

ExpPolynomial exps(std::vector<cplx> c, std::vector<cplx> mu) { return ExpPolynomial::from_exponentials(c, mu); }

}  // namespace

TEST_CASE("polynomial basics") {
  const Polynomial p({1.0, 2.0, 0.0, 0.0});
  CHECK(p.degree() == 1);
  CHECK(p(2.0) == cplx(5.0));
  CHECK(Polynomial({0.0}).is_zero());
  CHECK(Polynomial().degree() == -1);
  CHECK_THROWS_AS(Polynomial(std::vector<cplx>(kMaxPolynomialDegree + 2, 1.0)), DomainError);
}

TEST_CASE("exponential polynomial evaluation") {
  CHECK(exps({1.0}, {0.0})(3.7) == cplx(1.0));
  CHECK(std::abs(exps({1.0, -1.0}, {1.0, 2.0})(std::log(2.0)) - cplx(-2.0)) < 1e-14);
  const ExpPolynomial ze({{Polynomial({0.0, 1.0}), 1.0}});
  CHECK(std::abs(ze(1.0) - std::exp(1.0)) < 1e-14);
  CHECK(ze.log_abs(0.0) == -INFINITY);
  CHECK(exps({1.0}, {2.0}).log_abs(1000.0) == doctest::Approx(2000.0));
  CHECK_THROWS_AS(exps({1.0, 2.0}, {1.0, 1.0}), DomainError);
  CHECK(ExpPolynomial().is_zero());
  CHECK(exps({0.0}, {1.0}).is_zero());
}

TEST_CASE("evaluation is linear") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  auto rc = [&] { return cplx(g(rng), g(rng)); };
  for (int t = 0; t < 1000; ++t) {
    const cplx a = rc(), b = rc(), z = rc() * 0.5;
    const std::vector<cplx> mp{rc(), rc()}, mq{rc() + 10.0, rc() - 10.0};
    const auto p = ExpPolynomial({{Polynomial({rc(), rc()}), mp[0]}, {Polynomial({rc()}), mp[1]}});
    const auto q = ExpPolynomial({{Polynomial({rc()}), mq[0]}, {Polynomial({rc(), rc(), rc()}), mq[1]}});
    auto scale = [](const ExpPolynomial& e, cplx s) {
      std::vector<ExpPolyTerm> terms;
      for (const auto& t : e.terms()) {
        auto c = t.coefficient.coefficients();
        for (auto& x : c) x *= s;
        terms.push_back({Polynomial(c), t.exponent});
      }
      return ExpPolynomial(terms);
    };
    const cplx lhs = (scale(p, a) + scale(q, b))(z);
    const cplx rhs = a * p(z) + b * q(z);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1 + std::abs(a * p(z)) + std::abs(b * q(z))));
  }
}

TEST_CASE("dominant split") {
  const auto p = exps({1.0, 1.0}, {1.0, 2.0});
  auto s = dominant_split(p, Direction::from_angle(0));
  CHECK(s.leading.exponent == cplx(2.0));
  CHECK(s.gap == doctest::Approx(1.0));
  s = dominant_split(p, Direction::from_angle(kPi));
  CHECK(s.leading.exponent == cplx(1.0));
  CHECK(s.gap == doctest::Approx(1.0));
  CHECK_THROWS_AS(dominant_split(p, Direction::from_angle(kPi / 2)), TiedExtremePointError);
  CHECK_THROWS_AS(dominant_split(ExpPolynomial(), Direction::from_angle(0)), DomainError);
  CHECK(dominant_split(exps({3.0}, {1.0}), Direction::from_angle(0)).gap == INFINITY);
  // zero-coefficient terms are ignored
  s = dominant_split(exps({1.0, 0.0}, {1.0, 5.0}), Direction::from_angle(0));
  CHECK(s.leading.exponent == cplx(1.0));

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-3, 3), ang(-kPi, kPi);
  for (int t = 0; t < 200; ++t) {
    std::vector<cplx> mu, c;
    for (int k = 0; k < 5; ++k) mu.push_back({u(rng), u(rng)}), c.push_back(1.0);
    const Direction a = Direction::from_angle(ang(rng));
    DominantSplit sp;
    try {
      sp = dominant_split(exps(c, mu), a);
    } catch (const TiedExtremePointError&) {
      continue;
    }
    std::vector<cplx> rest;
    for (cplx m : mu)
      if (m != sp.leading.exponent) rest.push_back(m);
    const double oracle = support_function(convex_hull(mu), a.angle()) - support_function(convex_hull(rest), a.angle());
    CHECK(sp.gap == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("lower bound in an angle") {
  const auto p = exps({1.0, 1.0}, {1.0, 2.0});
  const auto b = lower_bound_in_angle(p, Direction::from_angle(0), 0.1, 0.25);
  CHECK(b.radius > 0);
  for (int k = 1; k <= 10; ++k)
    for (double th : {-0.1, -0.03, 0.0, 0.05, 0.1}) {
      const cplx z = std::polar(b.radius + k, th);
      CHECK(b.in_angle(z));
      CHECK(std::abs(p(z)) >= b.bound(z));
      CHECK(b.bound(z) > 0);
    }
  CHECK_FALSE(b.in_angle(std::polar(5.0, 0.5)));

  const auto single = lower_bound_in_angle(exps({2.0}, {{1, 1}}), Direction::from_angle(0.3), 0.2, 0.1);
  CHECK(single.radius == 0.0);
  CHECK(single.c_eps == 0.0);

  const auto minus = exps({1.0, -1.0}, {1.0, 2.0});
  const auto bm = lower_bound_in_angle(minus, Direction::from_angle(0), 0.1, 0.25);
  for (int k = 1; k <= 10; ++k) CHECK(std::abs(minus(bm.radius + k)) >= bm.bound(bm.radius + k));

  CHECK_THROWS_AS(lower_bound_in_angle(p, Direction::from_angle(0), 0.1, 0.6), PreconditionError);
  CHECK_THROWS_AS(lower_bound_in_angle(p, Direction::from_angle(0), 0.1, 0.0), DomainError);
  CHECK_THROWS_AS(lower_bound_in_angle(p, Direction::from_angle(0), 2.0, 0.1), DomainError);
}

TEST_CASE("zero-free angle check") {
  const Direction zero = Direction::from_angle(0);
  const auto p = exps({1.0, 1.0}, {1.0, 2.0});
  const auto b = lower_bound_in_angle(p, zero, 0.1, 0.25);
  auto r = zero_free_angle_check(p, zero, 0.1, 0.25, b.radius, 64);
  CHECK(r.passed);
  CHECK(r.samples == 64 * 64);
  CHECK(r.min_normalized >= 0.5);

  const auto one = exps({1.0}, {0.0});
  CHECK(zero_free_angle_check(one, zero, 0.3, 0.1, 0.0, 16).passed);

  // e^z - e has its zeros at 1 + 2 pi i k, off the positive-axis angle beyond r
  const auto shifted = exps({1.0, -std::exp(1.0)}, {1.0, 0.0});
  const auto bs = lower_bound_in_angle(shifted, zero, 0.1, 0.25);
  CHECK(zero_free_angle_check(shifted, zero, 0.1, 0.25, bs.radius, 32).passed);

  // e^{2z} - e^{20} e^z vanishes at z = 20; sampling from r = 10 must fail
  const auto neg = exps({-std::exp(20.0), 1.0}, {1.0, 2.0});
  r = zero_free_angle_check(neg, zero, 0.1, 0.25, 10.0, 64);
  CHECK_FALSE(r.passed);
  CHECK(r.certified_radius > 10.0);
  CHECK(std::abs(r.min_normalized_location - 20.0) < 1.0);
  CHECK(r.min_normalized < 0.1);

  CHECK_THROWS_AS(zero_free_angle_check(p, zero, 0.1, 0.25, 1.0, 0), DomainError);
  CHECK_THROWS_AS(zero_free_angle_check(p, zero, 0.1, 0.25, 1.0, 5000), ResourceError);
}

TEST_CASE("membership contradiction") {
  const ExponentSet naturals{{}, {Generator::arithmetic(1.0)}};
  const Direction zero = Direction::from_angle(0);
  const auto seq = sparse_subsequence(naturals, std::span<const Direction>(&zero, 1), 12);
  const auto p = exps({1.0, 1.0}, {1.0, 2.0});
  auto r = membership_contradiction(p, seq, zero);
  CHECK(r.verdict == MembershipVerdict::certified);
  REQUIRE(r.first_index.has_value());
  CHECK(r.first_log_abs >= r.first_log_bound);
  CHECK(std::abs(p(r.first_point)) > 0);
  CHECK(r.certified_count == r.in_angle_beyond_radius);

  CHECK(membership_contradiction(ExpPolynomial(), seq, zero).verdict == MembershipVerdict::zero_element);
  const auto tied = exps({1.0, -1.0}, {1.0, 2.0});
  CHECK_THROWS_AS(membership_contradiction(tied, seq, Direction::from_angle(kPi / 2)), TiedExtremePointError);
  CHECK(to_string(MembershipVerdict::certified) == "certified");
}
