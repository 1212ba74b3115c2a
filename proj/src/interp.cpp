#include "expinterp/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "bignum.hpp"
#include "expinterp/errors.hpp"

namespace expinterp {

using detail::BigComplex;
using detail::BigReal;
using detail::PrecisionGuard;

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

std::size_t InterpolationProblem::row_count() const {
  std::size_t rows = 0;
  for (const Node& n : nodes) rows += static_cast<std::size_t>(std::max(n.multiplicity, 0));
  return rows;
}

void InterpolationProblem::validate() const {
  for (const Node& n : nodes)
    if (n.multiplicity < 1) throw ConfigurationError("interpolation node multiplicity must be >= 1");
  const std::size_t rows = row_count();
  if (data.size() != rows)
    throw DomainError("interpolation data length " + std::to_string(data.size()) + " differs from sum of multiplicities " +
                      std::to_string(rows));
  if (exponents.size() != rows)
    throw DomainError("exponent count " + std::to_string(exponents.size()) + " differs from sum of multiplicities " +
                      std::to_string(rows));
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (nodes[i].point == nodes[j].point) throw ConfigurationError("interpolation nodes must be pairwise distinct");
  for (std::size_t i = 0; i < exponents.size(); ++i)
    for (std::size_t j = i + 1; j < exponents.size(); ++j)
      if (exponents[i] == exponents[j]) throw ConfigurationError("exponents must be pairwise distinct");
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::solved: return "solved";
    case SolveStatus::singular: return "singular";
    case SolveStatus::ill_conditioned: return "ill_conditioned";
  }
  return "unknown";
}

LinearSystem build_system(const InterpolationProblem& p, bool scaled) {
  p.validate();
  const std::size_t n = p.exponents.size();
  LinearSystem sys{ComplexMatrix(n, n), p.data, std::vector<double>(n, 0.0)};
  if (scaled) {
    for (std::size_t c = 0; c < n; ++c) {
      double shift = kNegInf;
      for (const Node& node : p.nodes) shift = std::max(shift, (p.exponents[c] * node.point).real());
      sys.column_shift[c] = shift;
    }
  }
  std::size_t r = 0;
  for (const Node& node : p.nodes) {
    for (int j = 0; j < node.multiplicity; ++j, ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        const cplx lam = p.exponents[c];
        cplx power{1.0, 0.0};
        for (int q = 0; q < j; ++q) power *= lam;
        const cplx w = lam * node.point;
        sys.matrix(r, c) = power * std::exp(cplx(w.real() - sys.column_shift[c], w.imag()));
      }
    }
  }
  return sys;
}

// ---------------------------------------------------------------------------
// PreciseExpSum

struct PreciseExpSum::Impl {
  unsigned bits = 0;
  std::vector<cplx> exponents;
  std::vector<BigComplex> y;         // c_n = y_n e^{log_scale_n}
  std::vector<double> log_scale;
};

namespace {

std::string big_to_string(const BigReal& x, int digits) { return x.str(digits, std::ios_base::scientific); }

}  // namespace

cplx PreciseExpSum::derivative(cplx z, int order) const {
  PrecisionGuard guard(impl_->bits);
  BigComplex sum;
  const BigComplex zz(z);
  for (std::size_t n = 0; n < impl_->exponents.size(); ++n) {
    const BigComplex lam(impl_->exponents[n]);
    const BigComplex& y = impl_->y[n];
    if (y.re == 0 && y.im == 0) continue;
    BigComplex power(BigReal(1), BigReal(0));
    for (int q = 0; q < order; ++q) power = power * lam;
    const BigComplex w = lam * zz;
    sum += y * power * detail::polar_exp(w.re + BigReal(impl_->log_scale[n]), w.im);
  }
  return sum.to_double();
}

unsigned PreciseExpSum::precision_bits() const { return impl_->bits; }
std::size_t PreciseExpSum::size() const { return impl_->exponents.size(); }

std::string PreciseExpSum::coefficient_string(std::size_t n, int digits) const {
  PrecisionGuard guard(impl_->bits);
  const BigReal s = exp(BigReal(impl_->log_scale.at(n)));
  const BigReal re = impl_->y.at(n).re * s;
  const BigReal im = impl_->y.at(n).im * s;
  return "(" + big_to_string(re, digits) + "," + big_to_string(im, digits) + ")";
}

cplx PreciseExpSum::mantissa(std::size_t n) const {
  PrecisionGuard guard(impl_->bits);
  return impl_->y.at(n).to_double();
}

double PreciseExpSum::log_scale(std::size_t n) const { return impl_->log_scale.at(n); }

// ---------------------------------------------------------------------------
// Solver core

namespace {

struct RowSpec {
  cplx node;
  int order;
};

std::vector<RowSpec> rows_of(const InterpolationProblem& p) {
  std::vector<RowSpec> rows;
  for (const Node& n : p.nodes)
    for (int j = 0; j < n.multiplicity; ++j) rows.push_back({n.point, j});
  return rows;
}

double log_abs_entry(const RowSpec& row, cplx lam) {
  if (row.order > 0 && lam == cplx{}) return kNegInf;
  double v = (lam * row.node).real();
  if (row.order > 0) v += row.order * std::log(std::abs(lam));
  return v;
}

struct CoreResult {
  SolveReport report;
  std::vector<double> deviations;  // |(A c - b)_r| in the original row scale
  std::size_t rank = 0;
};

// row_log_weight: either empty (assignment-dual equilibration, square only)
// or one log-weight per row (row r divided by exp(w_r)).
CoreResult solve_core(const InterpolationProblem& p, std::vector<double> row_log_weight, double tol,
                      const SolveOptions& opts, bool retry_on_residual) {
  const auto rows = rows_of(p);
  const std::size_t m = rows.size(), n = p.exponents.size();

  std::vector<std::vector<double>> L(m, std::vector<double>(n));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) L[r][c] = log_abs_entry(rows[r], p.exponents[c]);

  std::vector<double> U, V;
  if (row_log_weight.empty()) {
    detail::assignment_duals(L, U, V);
  } else {
    U = std::move(row_log_weight);
    V.assign(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
      double best = kNegInf;
      for (std::size_t r = 0; r < m; ++r) best = std::max(best, L[r][c] - U[r]);
      V[c] = std::isfinite(best) ? best : 0.0;
    }
  }
  double umin = std::numeric_limits<double>::infinity(), umax = -umin;
  for (double u : U) {
    umin = std::min(umin, u);
    umax = std::max(umax, u);
  }
  double b_norm2 = 0.0;
  for (cplx b : p.data) b_norm2 += std::norm(b);
  const double b_norm = std::sqrt(b_norm2);
  const double denom = std::max(b_norm, 1.0);

  unsigned bits = 128 + static_cast<unsigned>(std::ceil((umax - umin) / std::log(2.0)));
  CoreResult out;
  for (;;) {
    PrecisionGuard guard(bits);
    std::vector<std::vector<BigComplex>> A(m, std::vector<BigComplex>(n));
    std::vector<BigComplex> rhs(m);
    std::vector<BigReal> Ub(m), Vb(n);
    for (std::size_t r = 0; r < m; ++r) Ub[r] = BigReal(U[r]);
    for (std::size_t c = 0; c < n; ++c) Vb[c] = BigReal(V[c]);
    for (std::size_t c = 0; c < n; ++c) {
      const BigComplex lam(p.exponents[c]);
      const BigReal lam_abs = detail::abs(lam);
      const BigReal log_lam = lam_abs == 0 ? BigReal(0) : BigReal(log(lam_abs));
      const BigReal arg_lam = atan2(lam.im, lam.re);
      for (std::size_t r = 0; r < m; ++r) {
        if (!std::isfinite(L[r][c])) continue;
        const BigComplex w = lam * BigComplex(rows[r].node);
        const BigReal j(rows[r].order);
        A[r][c] = detail::polar_exp(w.re + j * log_lam - Ub[r] - Vb[c], w.im + j * arg_lam);
      }
    }
    for (std::size_t r = 0; r < m; ++r) rhs[r] = BigComplex(p.data[r]) * exp(-Ub[r]);

    detail::PivotedQR qr;
    qr.factor(A);
    const std::size_t rank = qr.rank(opts.rank_threshold);
    const std::vector<BigComplex> y = qr.solve(rhs, rank);

    // residual in the original row scale
    std::vector<double> dev(m);
    double res2 = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      BigComplex s;
      for (std::size_t c = 0; c < n; ++c) s += A[r][c] * y[c];
      s -= rhs[r];
      const double d = static_cast<double>(detail::abs(s) * exp(Ub[r]));
      dev[r] = d;
      res2 += d * d;
    }

    SolveReport rep;
    rep.rank = rank;
    rep.precision_bits = bits;
    rep.residual_rel = std::sqrt(res2) / denom;
    rep.max_deviation = dev.empty() ? 0.0 : *std::max_element(dev.begin(), dev.end());
    const BigReal last = qr.diag_abs.empty() ? BigReal(0) : qr.diag_abs.back();
    rep.condition_estimate =
        last == 0 ? std::numeric_limits<double>::infinity() : static_cast<double>(qr.diag_abs.front() / last);

    auto impl = std::make_shared<PreciseExpSum::Impl>();
    impl->bits = bits;
    impl->exponents = p.exponents;
    impl->y = y;
    for (std::size_t c = 0; c < n; ++c) {
      impl->log_scale.push_back(-V[c]);
      const BigReal s = exp(-Vb[c]);
      rep.coefficients.emplace_back(static_cast<double>(y[c].re * s), static_cast<double>(y[c].im * s));
    }
    rep.precise = std::make_shared<PreciseExpSum>(impl);

    if (rank < n) rep.status = SolveStatus::singular;
    else if (rep.condition_estimate > opts.ill_conditioned_above) rep.status = SolveStatus::ill_conditioned;
    else if (rep.residual_rel <= tol) rep.status = SolveStatus::solved;
    else rep.status = SolveStatus::ill_conditioned;

    out = {std::move(rep), std::move(dev), rank};
    const bool retry = retry_on_residual && rank == n && out.report.residual_rel > tol &&
                       out.report.condition_estimate <= opts.ill_conditioned_above &&
                       bits * 2 <= opts.max_precision_bits;
    if (!retry) break;
    bits *= 2;
  }
  return out;
}

}  // namespace

SolveReport solve(const InterpolationProblem& p, double tol, SolveOptions opts) {
  p.validate();
  if (p.exponents.size() > kMaxSolveDimension)
    throw ResourceError("solve dimension " + std::to_string(p.exponents.size()) + " exceeds cap " +
                        std::to_string(kMaxSolveDimension));
  if (p.exponents.empty()) {
    SolveReport r;
    r.status = SolveStatus::solved;
    r.accepted = true;
    return r;
  }
  CoreResult core = solve_core(p, {}, tol, opts, true);
  core.report.accepted = core.report.status == SolveStatus::solved;
  return std::move(core.report);
}

SolveReport solve_crude(const InterpolationProblem& p, std::span<const double> delta, double tol, SolveOptions opts) {
  for (const Node& n : p.nodes)
    if (n.multiplicity != 1) throw PreconditionError("solve_crude: crude approximation is defined for simple nodes only");
  if (p.data.size() != p.nodes.size()) throw DomainError("solve_crude: one datum per node required");
  if (delta.size() != p.nodes.size()) throw DomainError("solve_crude: one tolerance delta_k per node required");
  if (p.exponents.size() > p.nodes.size()) throw DomainError("solve_crude: more exponents than nodes");
  if (p.exponents.size() > kMaxSolveDimension) throw ResourceError("solve_crude: dimension exceeds cap");
  for (double d : delta)
    if (!(d >= 0.0)) throw DomainError("solve_crude: delta_k must be >= 0");
  for (std::size_t i = 0; i < p.nodes.size(); ++i)
    for (std::size_t j = i + 1; j < p.nodes.size(); ++j)
      if (p.nodes[i].point == p.nodes[j].point) throw ConfigurationError("interpolation nodes must be pairwise distinct");

  double b_norm2 = 0.0;
  for (cplx b : p.data) b_norm2 += std::norm(b);
  const double slack = tol * std::max(std::sqrt(b_norm2), 1.0);

  bool zero_ok = true;
  double zero_dev = 0.0;
  for (std::size_t k = 0; k < p.data.size(); ++k) {
    zero_dev = std::max(zero_dev, std::abs(p.data[k]));
    if (std::abs(p.data[k]) > delta[k] + slack) zero_ok = false;
  }
  if (zero_ok || p.exponents.empty()) {
    SolveReport r;
    r.coefficients.assign(p.exponents.size(), cplx{});
    r.residual_rel = std::sqrt(b_norm2) / std::max(std::sqrt(b_norm2), 1.0);
    r.max_deviation = zero_dev;
    r.accepted = zero_ok;
    r.status = zero_ok ? SolveStatus::solved : SolveStatus::singular;
    return r;
  }

  std::vector<double> weights(p.nodes.size(), 0.0);
  const bool all_positive = std::all_of(delta.begin(), delta.end(), [](double d) { return d > 0.0; });
  if (all_positive)
    for (std::size_t k = 0; k < delta.size(); ++k) weights[k] = std::log(delta[k]);

  const bool square = p.exponents.size() == p.nodes.size();
  CoreResult core = solve_core(p, weights, tol, opts, square);
  SolveReport rep = std::move(core.report);
  rep.accepted = true;
  for (std::size_t k = 0; k < core.deviations.size(); ++k)
    if (core.deviations[k] > delta[k] + slack) rep.accepted = false;
  if (rep.accepted) rep.status = SolveStatus::solved;
  else if (core.rank < p.exponents.size()) rep.status = SolveStatus::singular;
  else rep.status = SolveStatus::ill_conditioned;
  return rep;
}

ExpSum to_expsum(const InterpolationProblem& p, const SolveReport& r) {
  std::vector<ExpTerm> terms;
  for (std::size_t n = 0; n < r.coefficients.size() && n < p.exponents.size(); ++n)
    terms.push_back({r.coefficients[n], p.exponents[n]});
  return ExpSum(std::move(terms));
}

// ---------------------------------------------------------------------------
// Obstructions

std::vector<cplx> obstruction_exponents(cplx mu_l, cplx mu_k, std::size_t N) {
  const cplx d = mu_k - mu_l;
  if (d == cplx{}) throw DomainError("obstruction pairing needs two distinct nodes");
  if (N == 0) throw DomainError("obstruction pairing needs N >= 1");
  const double beta = std::arg(d);
  const cplx dir = std::polar(1.0, kPi / 2.0 - beta);
  std::vector<cplx> out;
  for (long n = -static_cast<long>(N); n <= static_cast<long>(N); ++n) {
    if (n == 0) continue;
    out.push_back(2.0 * kPi * static_cast<double>(n) / std::abs(d) * dir);
  }
  return out;
}

ObstructionReport verify_obstruction_pairing(cplx mu_l, cplx mu_k, std::size_t N, std::size_t trials,
                                             std::uint64_t seed) {
  ObstructionReport rep;
  rep.exponents = obstruction_exponents(mu_l, mu_k, N);
  rep.trials = trials;
  const cplx d = mu_k - mu_l;

  // Every column is 2 pi i-periodic along d: l_n d / (2 pi i) must be the integer n.
  double integer_defect = 0.0;
  for (std::size_t i = 0; i < rep.exponents.size(); ++i) {
    const long n = i < N ? static_cast<long>(i) - static_cast<long>(N) : static_cast<long>(i - N + 1);
    const cplx q = rep.exponents[i] * d / cplx(0.0, 2.0 * kPi);
    integer_defect = std::max(integer_defect, std::abs(q - cplx(static_cast<double>(n), 0.0)) / std::abs(double(n)));
    const cplx el = std::exp(rep.exponents[i] * mu_l), ek = std::exp(rep.exponents[i] * mu_k);
    rep.max_column_mismatch = std::max(rep.max_column_mismatch, std::abs(el - ek) / std::max(1.0, std::abs(el)));
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<ExpTerm> terms;
    double total = 0.0;
    for (cplx l : rep.exponents) {
      const cplx c(gauss(rng), gauss(rng));
      terms.push_back({c, l});
      total += std::abs(c);
    }
    double scale = 0.0;
    for (auto& term : terms) {
      term.coefficient /= total;
      scale += std::abs(term.coefficient) * std::abs(std::exp(term.exponent * mu_l));
    }
    const ExpSum u(std::move(terms));
    const double diff = std::abs(u(mu_l) - u(mu_k));
    rep.max_difference = std::max(rep.max_difference, diff);
    rep.max_relative = std::max(rep.max_relative, diff / std::max(1.0, scale));
  }
  rep.integer_defect = integer_defect;
  rep.passed = rep.max_relative <= 1e-12 && integer_defect <= 1e-14;
  return rep;
}

GrowthFailureReport demonstrate_growth_failure(const ExponentSet& lambda, std::span<const double> nodes, double eps,
                                               std::size_t N, std::size_t trials, std::uint64_t seed) {
  const auto P = limit_directions(lambda);
  for (const Direction& s : P) {
    if (s.unit().real() > 1e-9)
      throw DomainError("demonstrate_growth_failure: limit direction at angle " + std::to_string(s.angle()) +
                        " lies in the open right half-plane; the growth obstruction needs none there");
  }
  if (N == 0) throw DomainError("demonstrate_growth_failure: N must be >= 1");
  const auto prefix = enumerate_prefix(lambda, N);
  GrowthFailureReport rep;
  rep.nodes.assign(nodes.begin(), nodes.end());
  rep.log_data = defeating_data_log(prefix, nodes, eps);
  rep.max_ratio.assign(nodes.size(), 0.0);
  rep.trials = trials;

  const ConvexCompact disc = ConvexCompact::disc(0.0, eps);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.0, 1.0), phase(-kPi, kPi);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<ExpTerm> terms;
    double c_total = 0.0;
    for (cplx l : prefix) {
      const cplx c = std::polar(mag(rng), phase(rng));
      terms.push_back({c, l});
      c_total += std::abs(c) * std::exp(eps * std::abs(l));
    }
    for (auto& term : terms) term.coefficient /= c_total;
    const ExpSum u(std::move(terms));
    rep.max_tail_norm = std::max(rep.max_tail_norm, tail_norm(u, disc));
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const double ratio = std::exp(u.log_abs(cplx(nodes[k], 0.0)) - rep.log_data[k]);
      rep.max_ratio[k] = std::max(rep.max_ratio[k], ratio);
    }
  }
  for (std::size_t k = 1; k < rep.max_ratio.size(); ++k)
    rep.worst_ratio_beyond_first = std::max(rep.worst_ratio_beyond_first, rep.max_ratio[k]);
  return rep;
}

}  // namespace expinterp
