#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "expinterp/geometry.hpp"

namespace expinterp {

enum class GeneratorKind { arithmetic, geometric };
enum class IndexRange { positive, nonzero };

// A parametric family of exponents: arithmetic c*n (n >= 1 or n != 0) or
// geometric c*q^n (n >= 1, q > 1).
struct Generator {
  GeneratorKind kind = GeneratorKind::arithmetic;
  cplx scale{1.0, 0.0};
  double ratio = 2.0;  // geometric only
  IndexRange index_range = IndexRange::positive;

  static Generator arithmetic(cplx scale, IndexRange range = IndexRange::positive);
  static Generator geometric(cplx scale, double ratio);
  void validate() const;

  bool operator==(const Generator&) const = default;
};

struct ExponentSet {
  std::vector<cplx> explicit_points;
  std::vector<Generator> generators;

  bool bounded() const { return generators.empty(); }
  bool operator==(const ExponentSet&) const = default;
};

struct EnumerationCaps {
  double max_modulus = 1e12;
  std::size_t max_points = 1'000'000;
};

// Streams the points of an exponent set by increasing modulus, ties broken
// by increasing angle in (-pi, pi]. Exact duplicates are emitted once.
class ExponentEnumerator {
 public:
  explicit ExponentEnumerator(const ExponentSet& set, EnumerationCaps caps = {});

  // Next point, or nullopt when a bounded set is exhausted. Throws
  // ResourceError when a cap would be exceeded.
  std::optional<cplx> next();
  std::size_t emitted() const { return emitted_; }

 private:
  struct Stream {
    cplx scale;
    double ratio;
    bool geometric;
    std::int64_t sign;
    std::int64_t index;
    cplx explicit_point;
    bool is_explicit;
  };
  struct Head {
    double modulus;
    double angle;
    cplx value;
    std::size_t stream;
  };
  struct HeadOrder {
    bool operator()(const Head& a, const Head& b) const {
      if (a.modulus != b.modulus) return a.modulus > b.modulus;
      if (a.angle != b.angle) return a.angle > b.angle;
      return a.stream > b.stream;
    }
  };

  Head head_of(std::size_t stream) const;
  void advance(std::size_t stream);

  std::vector<Stream> streams_;
  std::priority_queue<Head, std::vector<Head>, HeadOrder> heap_;
  std::vector<cplx> recent_;  // emitted points sharing the current modulus
  double recent_modulus_ = -1.0;
  EnumerationCaps caps_;
  std::size_t emitted_ = 0;
};

// First `count` points in enumeration order (fewer for exhausted bounded sets).
std::vector<cplx> enumerate_prefix(const ExponentSet& set, std::size_t count, EnumerationCaps caps = {});

// Closed-form limit directions at infinity, deduplicated within 1e-9 rad and
// sorted by angle. Throws BoundedSetError for explicit-only sets.
std::vector<Direction> limit_directions(const ExponentSet& set);

bool contains_direction(std::span<const Direction> directions, const Direction& d, double tol = 1e-9);

// Sequence with |l_{n+1}| > 2 |l_n|. Construct through make() or sparse_subsequence().
class SparseSequence {
 public:
  static SparseSequence make(std::vector<cplx> points);
  const std::vector<cplx>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  operator std::span<const cplx>() const { return points_; }

 private:
  std::vector<cplx> points_;
};

// Greedy extraction over the modulus-ordered enumeration: the n-th accepted
// point is the first with |l| > 2|l_{n-1}| and |l/|l| - s_{target(n)}| < 2^{-n},
// targets visited cyclically.
SparseSequence sparse_subsequence(const ExponentSet& set, std::span<const Direction> targets, std::size_t count,
                                  EnumerationCaps caps = {});

struct ProductValue {
  cplx value;
  double tail_bound = 0.0;
};

// Partial canonical product prod_{n<=N} (1 - z/l_n) with the bound
// |value| (exp(sum_{n>N} |z|/|l_n|) - 1) on the neglected available factors.
ProductValue canonical_product(std::span<const cplx> sequence, cplx z, std::size_t N);

// Finite surrogate of the Gelfond-Leont'ev condensation index
//   delta = limsup (1/|l_n|) ln(1/|G'(l_n)|):
// the largest |(1/|l_n|) ln(1/|G'_N(l_n)|)| over the tail window
// max(2, ceil(N/2)) <= n <= N, with G_N the product truncated at N.
double condensation_index_estimate(std::span<const cplx> sequence, std::size_t N);

// (1/|l_n|) ln(1/|G'_N(l_n)|) for one index n (1-based).
double condensation_term(std::span<const cplx> sequence, std::size_t N, std::size_t n);

}  // namespace expinterp
