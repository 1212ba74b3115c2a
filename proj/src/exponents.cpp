#include "expinterp/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "expinterp/errors.hpp"

namespace expinterp {

Generator Generator::arithmetic(cplx scale, IndexRange range) {
  Generator g{GeneratorKind::arithmetic, scale, 2.0, range};
  g.validate();
  return g;
}

Generator Generator::geometric(cplx scale, double ratio) {
  Generator g{GeneratorKind::geometric, scale, ratio, IndexRange::positive};
  g.validate();
  return g;
}

void Generator::validate() const {
  if (scale == cplx{} || !std::isfinite(scale.real()) || !std::isfinite(scale.imag()))
    throw DomainError("generator scale must be a finite nonzero complex number");
  if (kind == GeneratorKind::geometric) {
    if (!(ratio > 1.0) || !std::isfinite(ratio)) throw DomainError("geometric generator needs ratio > 1");
    if (index_range != IndexRange::positive) throw DomainError("geometric generator is indexed by n >= 1 only");
  }
}

// ---------------------------------------------------------------------------
// Enumeration

ExponentEnumerator::ExponentEnumerator(const ExponentSet& set, EnumerationCaps caps) : caps_(caps) {
  for (cplx p : set.explicit_points) streams_.push_back({cplx{}, 0.0, false, 1, 0, p, true});
  for (const Generator& g : set.generators) {
    g.validate();
    const bool geometric = g.kind == GeneratorKind::geometric;
    streams_.push_back({g.scale, g.ratio, geometric, 1, 1, cplx{}, false});
    if (!geometric && g.index_range == IndexRange::nonzero) {
      streams_.push_back({g.scale, g.ratio, false, -1, 1, cplx{}, false});
    }
  }
  for (std::size_t s = 0; s < streams_.size(); ++s) heap_.push(head_of(s));
}

ExponentEnumerator::Head ExponentEnumerator::head_of(std::size_t stream) const {
  const Stream& st = streams_[stream];
  cplx v;
  if (st.is_explicit) {
    v = st.explicit_point;
  } else if (st.geometric) {
    v = st.scale * std::pow(st.ratio, static_cast<double>(st.index));
  } else {
    v = st.scale * static_cast<double>(st.sign * st.index);
  }
  const double angle = v == cplx{} ? 0.0 : normalize_angle(std::arg(v));
  return {std::abs(v), angle, v, stream};
}

void ExponentEnumerator::advance(std::size_t stream) {
  Stream& st = streams_[stream];
  if (st.is_explicit) return;  // one-shot
  ++st.index;
  heap_.push(head_of(stream));
}

std::optional<cplx> ExponentEnumerator::next() {
  while (!heap_.empty()) {
    const Head h = heap_.top();
    heap_.pop();
    advance(h.stream);

    if (std::abs(h.modulus - recent_modulus_) > 1e-12 * h.modulus) {
      recent_.clear();
      recent_modulus_ = h.modulus;
    }
    const bool duplicate = std::any_of(recent_.begin(), recent_.end(), [&](cplx r) {
      return std::abs(r - h.value) <= 1e-12 * std::max(1.0, h.modulus);
    });
    if (duplicate) continue;

    if (h.modulus > caps_.max_modulus)
      throw ResourceError("exponent enumeration exceeded modulus cap " + std::to_string(caps_.max_modulus));
    if (emitted_ >= caps_.max_points)
      throw ResourceError("exponent enumeration exceeded point cap " + std::to_string(caps_.max_points));
    recent_.push_back(h.value);
    ++emitted_;
    return h.value;
  }
  return std::nullopt;
}

std::vector<cplx> enumerate_prefix(const ExponentSet& set, std::size_t count, EnumerationCaps caps) {
  ExponentEnumerator e(set, caps);
  std::vector<cplx> out;
  out.reserve(count);
  while (out.size() < count) {
    auto p = e.next();
    if (!p) break;
    out.push_back(*p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Limit directions

bool contains_direction(std::span<const Direction> directions, const Direction& d, double tol) {
  return std::any_of(directions.begin(), directions.end(),
                     [&](const Direction& x) { return angular_distance(x.angle(), d.angle()) <= tol; });
}

std::vector<Direction> limit_directions(const ExponentSet& set) {
  if (set.bounded())
    throw BoundedSetError("exponent set has no generators: a bounded set has no limit directions at infinity");
  std::vector<Direction> out;
  auto add = [&](cplx c) {
    const Direction d = Direction::of(c);
    if (!contains_direction(out, d)) out.push_back(d);
  };
  for (const Generator& g : set.generators) {
    g.validate();
    add(g.scale);
    if (g.kind == GeneratorKind::arithmetic && g.index_range == IndexRange::nonzero) add(-g.scale);
  }
  std::sort(out.begin(), out.end(), [](const Direction& a, const Direction& b) { return a.angle() < b.angle(); });
  return out;
}

// ---------------------------------------------------------------------------
// Sparse extraction

SparseSequence SparseSequence::make(std::vector<cplx> points) {
  for (std::size_t n = 0; n + 1 < points.size(); ++n) {
    if (!(std::abs(points[n + 1]) > 2.0 * std::abs(points[n])))
      throw DomainError("sparse sequence requires |l_{n+1}| > 2|l_n| at index " + std::to_string(n + 1));
  }
  for (cplx p : points)
    if (p == cplx{}) throw DomainError("sparse sequence points must be nonzero");
  SparseSequence s;
  s.points_ = std::move(points);
  return s;
}

SparseSequence sparse_subsequence(const ExponentSet& set, std::span<const Direction> targets, std::size_t count,
                                  EnumerationCaps caps) {
  if (count == 0) throw DomainError("sparse_subsequence: count must be >= 1");
  if (targets.empty()) throw DomainError("sparse_subsequence: no target directions");
  const auto P = limit_directions(set);
  for (const Direction& t : targets) {
    if (!contains_direction(P, t))
      throw UnreachableDirectionError("target direction " + std::to_string(t.angle()) +
                                      " is not a limit direction of the exponent set");
  }

  ExponentEnumerator e(set, caps);
  std::vector<cplx> chosen;
  chosen.reserve(count);
  double prev_modulus = 0.0;
  for (std::size_t n = 1; n <= count; ++n) {
    const Direction& target = targets[(n - 1) % targets.size()];
    const double bound = std::ldexp(1.0, -static_cast<int>(n));
    for (;;) {
      auto p = e.next();
      if (!p) throw ResourceError("sparse_subsequence: exponent enumeration exhausted");
      const double m = std::abs(*p);
      if (m == 0.0 || !(m > 2.0 * prev_modulus)) continue;
      if (std::abs(*p / m - target.unit()) < bound) {
        chosen.push_back(*p);
        prev_modulus = m;
        break;
      }
    }
  }
  return SparseSequence::make(std::move(chosen));
}

// ---------------------------------------------------------------------------
// Canonical product

ProductValue canonical_product(std::span<const cplx> sequence, cplx z, std::size_t N) {
  if (N > sequence.size()) throw DomainError("canonical_product: N exceeds sequence length");
  cplx value{1.0, 0.0};
  for (std::size_t n = 0; n < N; ++n) {
    const cplx factor = (z == sequence[n]) ? cplx{} : cplx{1.0, 0.0} - z / sequence[n];
    value *= factor;
  }
  double tail = 0.0;
  for (std::size_t n = N; n < sequence.size(); ++n) tail += std::abs(z) / std::abs(sequence[n]);
  return {value, std::abs(value) * std::expm1(tail)};
}

double condensation_term(std::span<const cplx> sequence, std::size_t N, std::size_t n) {
  if (N > sequence.size() || n == 0 || n > N) throw DomainError("condensation_term: index out of range");
  const cplx lam = sequence[n - 1];
  double log_abs = -std::log(std::abs(lam));
  for (std::size_t m = 1; m <= N; ++m) {
    if (m == n) continue;
    log_abs += std::log(std::abs(cplx{1.0, 0.0} - lam / sequence[m - 1]));
  }
  return -log_abs / std::abs(lam);
}

double condensation_index_estimate(std::span<const cplx> sequence, std::size_t N) {
  if (N < 3) throw DomainError("condensation_index_estimate: N must be >= 3");
  if (N > sequence.size()) throw DomainError("condensation_index_estimate: N exceeds sequence length");
  const std::size_t start = std::max<std::size_t>(2, (N + 1) / 2);
  double best = 0.0;
  for (std::size_t n = start; n <= N; ++n) best = std::max(best, std::abs(condensation_term(sequence, N, n)));
  return best;
}

}  // namespace expinterp
