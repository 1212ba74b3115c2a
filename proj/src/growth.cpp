#include "expinterp/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "expinterp/errors.hpp"

namespace expinterp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) throw DomainError(std::string(what) + " must be positive");
}
}  // namespace

double h_direct(std::span<const cplx> prefix, double x) {
  require_positive(x, "h_direct: x");
  if (prefix.empty()) throw DomainError("h_direct: empty exponent prefix");
  double best = -kInf;
  for (cplx l : prefix) best = std::max(best, l.real() * x - std::abs(l));
  return best;
}

double growth_exponent(std::span<const cplx> prefix, double eps, double x) {
  require_positive(eps, "growth_exponent: eps");
  return eps * h_direct(prefix, x / eps);
}

// ---------------------------------------------------------------------------

GrowthMajorant GrowthMajorant::from_points(std::vector<SupportPoint> points) {
  if (points.empty()) throw DomainError("GrowthMajorant: no support points");
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    if (!(points[k + 1].l > points[k].l)) throw DomainError("GrowthMajorant: abscissas must be strictly increasing");
  }
  GrowthMajorant gm;
  gm.points_ = std::move(points);
  // Lower hull by monotone chain.
  auto& h = gm.hull_;
  for (const SupportPoint& p : gm.points_) {
    while (h.size() >= 2) {
      const SupportPoint& a = h[h.size() - 2];
      const SupportPoint& b = h.back();
      // drop b when it lies on or above the chord a-p
      const double cross = (b.l - a.l) * (p.v - a.v) - (b.v - a.v) * (p.l - a.l);
      if (cross <= 0.0) h.pop_back();
      else break;
    }
    h.push_back(p);
  }
  return gm;
}

GrowthMajorant GrowthMajorant::from_exponents(std::span<const cplx> prefix) {
  std::vector<cplx> right;
  for (cplx l : prefix)
    if (l.real() > 0.0) right.push_back(l);
  if (right.empty()) throw DomainError("GrowthMajorant: no exponents in the open right half-plane");
  std::sort(right.begin(), right.end(), [](cplx a, cplx b) { return a.real() < b.real(); });

  std::vector<double> re, im;
  for (cplx l : right) {
    if (!re.empty() && std::abs(l.real() - re.back()) <= 1e-12 * std::max(std::abs(l.real()), std::abs(re.back()))) {
      im.back() = std::min(im.back(), std::abs(l.imag()));
    } else {
      re.push_back(l.real());
      im.push_back(std::abs(l.imag()));
    }
  }
  std::vector<SupportPoint> pts;
  for (std::size_t k = 0; k < re.size(); ++k) pts.push_back({re[k], std::abs(cplx(re[k], im[k]))});
  GrowthMajorant gm = from_points(std::move(pts));
  gm.min_abs_imag_ = std::move(im);
  return gm;
}

std::vector<cplx> GrowthMajorant::reduced_exponents() const {
  std::vector<cplx> out;
  for (std::size_t k = 0; k < points_.size(); ++k)
    out.emplace_back(points_[k].l, k < min_abs_imag_.size() ? min_abs_imag_[k] : 0.0);
  return out;
}

double phi(const GrowthMajorant& gm, double t) {
  const auto& h = gm.hull();
  if (t < h.front().l || t > h.back().l) return kInf;
  if (h.size() == 1) return h.front().v;
  auto it = std::lower_bound(h.begin(), h.end(), t, [](const SupportPoint& p, double x) { return p.l < x; });
  if (it->l == t) return it->v;
  const SupportPoint& b = *it;
  const SupportPoint& a = *(it - 1);
  const double w = (t - a.l) / (b.l - a.l);
  return a.v + w * (b.v - a.v);
}

double phi_star(const GrowthMajorant& gm, double x) {
  require_positive(x, "phi_star: x");
  double best = -kInf;
  for (const SupportPoint& p : gm.hull()) best = std::max(best, x * p.l - p.v);
  return best;
}

// ---------------------------------------------------------------------------

ExpSum::ExpSum(std::vector<ExpTerm> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i)
    for (std::size_t j = i + 1; j < terms_.size(); ++j)
      if (terms_[i].exponent == terms_[j].exponent) throw DomainError("ExpSum: exponents must be pairwise distinct");
}

cplx ExpSum::derivative(cplx z, int order) const {
  cplx sum{};
  for (const ExpTerm& t : terms_) {
    cplx power{1.0, 0.0};
    for (int j = 0; j < order; ++j) power *= t.exponent;
    sum += t.coefficient * power * std::exp(t.exponent * z);
  }
  return sum;
}

double ExpSum::log_abs(cplx z) const {
  double shift = -kInf;
  for (const ExpTerm& t : terms_) {
    if (t.coefficient == cplx{}) continue;
    shift = std::max(shift, std::log(std::abs(t.coefficient)) + (t.exponent * z).real());
  }
  if (shift == -kInf) return -kInf;
  cplx sum{};
  for (const ExpTerm& t : terms_) {
    if (t.coefficient == cplx{}) continue;
    const cplx w = t.exponent * z;
    sum += std::exp(cplx(std::log(std::abs(t.coefficient)) + w.real() - shift, w.imag() + std::arg(t.coefficient)));
  }
  return shift + std::log(std::abs(sum));
}

double tail_norm(const ExpSum& u, const ConvexCompact& K) {
  double total = 0.0;
  for (const ExpTerm& t : u.terms()) total += std::abs(t.coefficient) * std::exp(support_function_complex(K, t.exponent));
  return total;
}

GrowthReport growth_bound_check(const ExpSum& u, double eps, std::span<const double> xs) {
  require_positive(eps, "growth_bound_check: eps");
  for (const ExpTerm& t : u.terms()) {
    if (t.exponent.real() < 0.0)
      throw PreconditionError(
          "growth_bound_check: exponent with negative real part; rotate the plane so the ray is the positive real "
          "axis and the exponents lie in the closed right half-plane");
  }
  GrowthReport report;
  if (u.empty()) {
    report.log_constant = -kInf;
    for (double x : xs) {
      require_positive(x, "growth_bound_check: x");
      report.samples.push_back({x, -kInf, -kInf, true});
    }
    return report;
  }

  std::vector<cplx> exponents;
  double log_c = -kInf;
  for (const ExpTerm& t : u.terms()) {
    exponents.push_back(t.exponent);
    if (t.coefficient == cplx{}) continue;
    const double term = std::log(std::abs(t.coefficient)) + eps * std::abs(t.exponent);
    log_c = log_c == -kInf ? term : std::max(log_c, term) + std::log1p(std::exp(-std::abs(log_c - term)));
  }
  report.log_constant = log_c;
  const double slack = std::log1p(1e-9);
  for (double x : xs) {
    require_positive(x, "growth_bound_check: x");
    const double lhs = u.log_abs(cplx(x, 0.0));
    const double rhs = log_c + growth_exponent(exponents, eps, x);
    const bool pass = lhs <= rhs + slack;
    if (!pass) ++report.failures;
    report.samples.push_back({x, lhs, rhs, pass});
  }
  return report;
}

std::vector<double> defeating_data_log(std::span<const cplx> prefix, std::span<const double> nodes, double eps) {
  require_positive(eps, "defeating_data: eps");
  std::vector<double> out;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    require_positive(nodes[k], "defeating_data: node");
    if (k > 0 && !(nodes[k] > nodes[k - 1])) throw DomainError("defeating_data: nodes must be increasing");
    out.push_back(std::log(static_cast<double>(k + 1)) + growth_exponent(prefix, eps, nodes[k]));
  }
  return out;
}

std::vector<double> defeating_data(std::span<const cplx> prefix, std::span<const double> nodes, double eps) {
  auto logs = defeating_data_log(prefix, nodes, eps);
  for (double& v : logs) v = std::exp(v);
  return logs;
}

}  // namespace expinterp
