#include <cmath>

#include "doctest.h"
#include "expinterp/errors.hpp"
#include "expinterp/exponents.hpp"

using namespace expinterp;

namespace {

ExponentSet naturals() { return {{}, {Generator::arithmetic(1.0)}}; }

// Direct product oracle in long double.
long double direct_product(const std::vector<cplx>& seq, cplx z, std::size_t N) {
  std::complex<long double> p = 1.0L;
  for (std::size_t n = 0; n < N; ++n)
    p *= 1.0L - std::complex<long double>(z) / std::complex<long double>(seq[n]);
  return std::abs(p);
}

// (1/|l_n|) ln(1/|G'_N(l_n)|), G'_N(l_n) = (-1/l_n) prod_{m != n} (1 - l_n/l_m).
long double direct_term(const std::vector<cplx>& seq, std::size_t N, std::size_t n) {
  const std::complex<long double> ln(seq[n - 1]);
  std::complex<long double> g = -1.0L / ln;
  for (std::size_t m = 1; m <= N; ++m)
    if (m != n) g *= 1.0L - ln / std::complex<long double>(seq[m - 1]);
  return std::log(1.0L / std::abs(g)) / std::abs(ln);
}

std::vector<cplx> powers(double q, int count) {
  std::vector<cplx> out;
  for (int n = 1; n <= count; ++n) out.push_back(std::pow(q, n));
  return out;
}

}  // namespace

TEST_CASE("enumeration is ordered by modulus then angle and deterministic") {
  const ExponentSet s{{{0.5, 0.0}}, {Generator::arithmetic({0, 1}, IndexRange::nonzero), Generator::arithmetic(1.0)}};
  const auto a = enumerate_prefix(s, 50), b = enumerate_prefix(s, 50);
  CHECK(a == b);
  CHECK(a.front() == cplx(0.5, 0.0));
  for (std::size_t i = 1; i < a.size(); ++i) {
    CHECK(std::abs(a[i]) >= std::abs(a[i - 1]));
    if (std::abs(a[i]) == std::abs(a[i - 1])) CHECK(std::arg(a[i]) > std::arg(a[i - 1]));
  }
  // duplicates across generators are emitted once
  const ExponentSet dup{{{2.0, 0.0}}, {Generator::arithmetic(1.0), Generator::geometric(1.0, 2.0)}};
  const auto d = enumerate_prefix(dup, 10);
  for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i] != d[i - 1]);
}

TEST_CASE("enumeration caps raise resource errors") {
  const ExponentSet s{{}, {Generator::geometric(1.0, 10.0)}};
  CHECK_THROWS_AS(enumerate_prefix(s, 20, {1e12, 1000}), ResourceError);
  CHECK_THROWS_AS(enumerate_prefix(naturals(), 50, {1e12, 10}), ResourceError);
  const ExponentSet bounded{{{1.0, 0.0}, {2.0, 0.0}}, {}};
  CHECK(enumerate_prefix(bounded, 5).size() == 2);
}

TEST_CASE("limit directions") {
  const cplx c = 2 * kPi * std::polar(1.0, kPi / 2);
  const auto p = limit_directions({{}, {Generator::arithmetic(c, IndexRange::nonzero)}});
  REQUIRE(p.size() == 2);
  CHECK(p[0].angle() == doctest::Approx(-kPi / 2));
  CHECK(p[1].angle() == doctest::Approx(kPi / 2));

  const auto one = limit_directions(naturals());
  REQUIRE(one.size() == 1);
  CHECK(one[0].angle() == 0.0);

  const ExponentSet two{{}, {Generator::arithmetic(1.0), Generator::geometric({0, 1}, 2.0)}};
  const auto pd = limit_directions(two);
  REQUIRE(pd.size() == 2);
  // empirical directions of far points converge to the claimed ones
  const auto far = enumerate_prefix(two, 10000);
  for (std::size_t i = far.size() - 20; i < far.size(); ++i) {
    const cplx u = far[i] / std::abs(far[i]);
    CHECK((std::abs(u - pd[0].unit()) < 1e-6 || std::abs(u - pd[1].unit()) < 1e-6));
  }

  CHECK_THROWS_AS(limit_directions({{{1.0, 0.0}}, {}}), BoundedSetError);
}

TEST_CASE("limit directions: offset and rotation") {
  const ExponentSet base{{}, {Generator::arithmetic({1, 1}), Generator::geometric({-1, 0}, 3.0)}};
  const cplx rot = std::polar(2.0, 0.7);
  ExponentSet rotated = base;
  for (auto& g : rotated.generators) g.scale *= rot;
  const auto p = limit_directions(base), q = limit_directions(rotated);
  REQUIRE(p.size() == q.size());
  for (const Direction& d : p) CHECK(contains_direction(q, Direction::of(d.unit() * rot)));
  // offsetting explicit points does not change P
  ExponentSet shifted = base;
  shifted.explicit_points = {{5.0, -3.0}, {100.0, 0.0}};
  CHECK(limit_directions(shifted) == p);
}

TEST_CASE("sparse subsequence") {
  const Direction one = Direction::from_angle(0);
  const auto s = sparse_subsequence(naturals(), std::span<const Direction>(&one, 1), 5);
  CHECK(s.points() == std::vector<cplx>{1.0, 3.0, 7.0, 15.0, 31.0});

  const auto first = sparse_subsequence(naturals(), std::span<const Direction>(&one, 1), 1);
  CHECK(first.points() == std::vector<cplx>{1.0});

  const ExponentSet two{{}, {Generator::arithmetic(1.0), Generator::geometric({0, 1}, 2.0)}};
  const std::vector<Direction> targets{Direction::from_angle(0), Direction::from_angle(kPi / 2)};
  const auto alt = sparse_subsequence(two, targets, 4);
  for (std::size_t n = 0; n < alt.size(); ++n) {
    CHECK(std::abs(alt.points()[n] / std::abs(alt.points()[n]) - targets[n % 2].unit()) < std::ldexp(1.0, -int(n + 1)));
    if (n > 0) CHECK(std::abs(alt.points()[n]) > 2 * std::abs(alt.points()[n - 1]));
  }

  const Direction down = Direction::from_angle(-kPi / 2);
  CHECK_THROWS_AS(sparse_subsequence(naturals(), std::span<const Direction>(&down, 1), 3), UnreachableDirectionError);
  CHECK_THROWS_AS(SparseSequence::make({1.0, 2.0}), DomainError);
}

TEST_CASE("canonical product against the direct product oracle") {
  const std::vector<cplx> seq{2, 4, 8, 16, 32};
  const auto v = canonical_product(seq, 3.0, 5);
  CHECK(std::abs(v.value) == doctest::Approx(double(direct_product(seq, 3.0, 5))).epsilon(1e-14));
  CHECK(v.tail_bound == 0.0);

  const auto at0 = canonical_product(seq, 0.0, 5);
  CHECK(at0.value == cplx(1.0));
  CHECK(at0.tail_bound == 0.0);
  CHECK(canonical_product(seq, 8.0, 3).value == cplx(0.0));

  // multiplicative under extension
  for (std::size_t N = 1; N <= 5; ++N) {
    const cplx z(1.3, -0.4);
    CHECK(canonical_product(seq, z, N).value == canonical_product(seq, z, N - 1).value * (1.0 - z / seq[N - 1]));
  }
  CHECK(canonical_product(seq, 1.0, 2).tail_bound > 0.0);
}

TEST_CASE("condensation terms match the direct oracle") {
  const auto seq = powers(2.0, 25);
  for (std::size_t N : {3u, 10u, 25u})
    for (std::size_t n = 1; n <= N; ++n)
      CHECK(condensation_term(seq, N, n) == doctest::Approx(double(direct_term(seq, N, n))).epsilon(1e-12));
}

TEST_CASE("condensation index estimate") {
  const auto two = powers(2.0, 25), three = powers(3.0, 25);
  CHECK(std::isfinite(condensation_index_estimate(two, 3)));
  CHECK(condensation_index_estimate(two, 25) <= 0.05);
  CHECK(condensation_index_estimate(three, 20) <= condensation_index_estimate(two, 20));
  double prev = INFINITY;
  for (std::size_t N : {10u, 15u, 20u, 25u}) {
    const double e = condensation_index_estimate(two, N);
    CHECK(e <= prev);
    prev = e;
  }
  CHECK_THROWS_AS(condensation_index_estimate(two, 2), DomainError);
}

TEST_CASE("generator validation") {
  CHECK_THROWS_AS(Generator::arithmetic(0.0).validate(), DomainError);
  CHECK_THROWS_AS(Generator::geometric(1.0, 1.0).validate(), DomainError);
}
