#include "expinterp/expoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "expinterp/errors.hpp"

namespace expinterp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kThetaGrid = 101;
constexpr std::size_t kRadialGrid = 200;
constexpr double kSafetyFactor = 1.5;
constexpr std::size_t kMaxAngleGrid = 4096;

// ln|a(z)| + Re(mu z) and arg a(z) + Im(mu z) of one term.
struct LogTerm {
  double log_mag;
  double phase;
};

std::optional<LogTerm> log_term(const ExpPolyTerm& t, cplx z) {
  const cplx a = t.coefficient(z);
  if (a == cplx{}) return std::nullopt;
  const cplx w = t.exponent * z;
  return LogTerm{std::log(std::abs(a)) + w.real(), std::arg(a) + w.imag()};
}

double log_sum(const std::vector<LogTerm>& parts) {
  if (parts.empty()) return -kInf;
  double top = -kInf;
  for (const LogTerm& t : parts) top = std::max(top, t.log_mag);
  cplx s{};
  for (const LogTerm& t : parts) s += std::polar(std::exp(t.log_mag - top), t.phase);
  const double a = std::abs(s);
  return a == 0.0 ? -kInf : top + std::log(a);
}

// Support value of the nonzero terms in direction theta; -inf when none.
double h_terms(const ExpPolynomial& p, double theta) {
  double h = -kInf;
  for (const auto& t : p.terms())
    if (!t.coefficient.is_zero()) h = std::max(h, projection(t.exponent, theta));
  return h;
}

// ln sum_k |a_k(z)| e^{Re(mu_k z)}, the triangle-inequality majorant of ln|p(z)|.
double log_majorant(const ExpPolynomial& p, cplx z) {
  double top = -kInf;
  std::vector<double> logs;
  for (const auto& t : p.terms()) {
    const double a = std::abs(t.coefficient(z));
    if (a == 0.0) continue;
    logs.push_back(std::log(a) + (t.exponent * z).real());
    top = std::max(top, logs.back());
  }
  if (logs.empty()) return -kInf;
  double s = 0.0;
  for (double l : logs) s += std::exp(l - top);
  return top + std::log(s);
}

}  // namespace

Polynomial::Polynomial(std::vector<cplx> coefficients) : coefficients_(std::move(coefficients)) {
  while (!coefficients_.empty() && coefficients_.back() == cplx{}) coefficients_.pop_back();
  if (coefficients_.size() > kMaxPolynomialDegree + 1)
    throw DomainError("polynomial degree " + std::to_string(coefficients_.size() - 1) + " exceeds cap " +
                      std::to_string(kMaxPolynomialDegree));
}

int Polynomial::degree() const { return static_cast<int>(coefficients_.size()) - 1; }

cplx Polynomial::operator()(cplx z) const {
  cplx acc{};
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ExpPolynomial::ExpPolynomial(std::vector<ExpPolyTerm> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i)
    for (std::size_t j = i + 1; j < terms_.size(); ++j)
      if (terms_[i].exponent == terms_[j].exponent)
        throw DomainError("exponential polynomial exponents must be pairwise distinct");
}

ExpPolynomial ExpPolynomial::from_exponentials(std::span<const cplx> coefficients, std::span<const cplx> exponents) {
  if (coefficients.size() != exponents.size()) throw DomainError("coefficient and exponent counts differ");
  std::vector<ExpPolyTerm> terms;
  for (std::size_t k = 0; k < exponents.size(); ++k) terms.push_back({Polynomial::constant(coefficients[k]), exponents[k]});
  return ExpPolynomial(std::move(terms));
}

bool ExpPolynomial::is_zero() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const ExpPolyTerm& t) { return t.coefficient.is_zero(); });
}

cplx ExpPolynomial::operator()(cplx z) const {
  cplx s{};
  for (const auto& t : terms_) s += t.coefficient(z) * std::exp(t.exponent * z);
  return s;
}

double ExpPolynomial::log_abs(cplx z) const {
  std::vector<LogTerm> parts;
  for (const auto& t : terms_)
    if (auto lt = log_term(t, z)) parts.push_back(*lt);
  return log_sum(parts);
}

ExpPolynomial operator+(const ExpPolynomial& p, const ExpPolynomial& q) {
  std::vector<ExpPolyTerm> terms = p.terms();
  for (const auto& t : q.terms()) {
    auto it = std::find_if(terms.begin(), terms.end(), [&](const ExpPolyTerm& s) { return s.exponent == t.exponent; });
    if (it == terms.end()) {
      terms.push_back(t);
      continue;
    }
    std::vector<cplx> a = it->coefficient.coefficients();
    const auto& b = t.coefficient.coefficients();
    a.resize(std::max(a.size(), b.size()));
    for (std::size_t j = 0; j < b.size(); ++j) a[j] += b[j];
    it->coefficient = Polynomial(std::move(a));
  }
  return ExpPolynomial(std::move(terms));
}

DominantSplit dominant_split(const ExpPolynomial& p, const Direction& alpha) {
  if (p.is_zero()) throw DomainError("dominant_split: zero exponential polynomial has no extreme term");
  double scale = 1.0;
  for (const auto& t : p.terms())
    if (!t.coefficient.is_zero()) scale = std::max(scale, std::abs(t.exponent));
  const double tol = 1e-10 * scale;

  std::size_t best = 0;
  double best_value = -kInf;
  for (std::size_t k = 0; k < p.terms().size(); ++k) {
    const auto& t = p.terms()[k];
    if (t.coefficient.is_zero()) continue;
    const double v = projection(t.exponent, alpha.angle());
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  DominantSplit out;
  out.leading = p.terms()[best];
  std::vector<ExpPolyTerm> rest;
  double second = -kInf;
  for (std::size_t k = 0; k < p.terms().size(); ++k) {
    const auto& t = p.terms()[k];
    if (k == best || t.coefficient.is_zero()) continue;
    const double v = projection(t.exponent, alpha.angle());
    if (best_value - v <= tol) {
      throw TiedExtremePointError("tied extreme point: exponents " + std::to_string(out.leading.exponent.real()) + "+" +
                                  std::to_string(out.leading.exponent.imag()) + "i and " +
                                  std::to_string(t.exponent.real()) + "+" + std::to_string(t.exponent.imag()) +
                                  "i have equal projection on angle " + std::to_string(alpha.angle()));
    }
    second = std::max(second, v);
    rest.push_back(t);
  }
  out.rest = ExpPolynomial(std::move(rest));
  out.gap = best_value - second;
  return out;
}

bool AngleBound::in_angle(cplx z) const {
  if (z == cplx{}) return false;
  return angular_distance(std::arg(z), alpha) <= delta + 1e-12;
}

double AngleBound::bound(cplx z) const {
  const double diff = std::abs(split.leading.coefficient(z)) - c_eps * std::exp(-eps * std::abs(z));
  const double lead = (split.leading.exponent * z).real();
  if (diff <= 0.0) return diff == 0.0 ? 0.0 : -std::exp(lead + std::log(-diff));
  return std::exp(lead + std::log(diff));
}

double AngleBound::log_bound(cplx z) const {
  const double diff = std::abs(split.leading.coefficient(z)) - c_eps * std::exp(-eps * std::abs(z));
  if (diff <= 0.0) return -kInf;
  return (split.leading.exponent * z).real() + std::log(diff);
}

AngleBound lower_bound_in_angle(const ExpPolynomial& p, const Direction& alpha, double delta, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("lower_bound_in_angle: eps must be positive");
  if (!(delta >= 0.0) || delta >= kPi / 2.0) throw DomainError("lower_bound_in_angle: delta must lie in [0, pi/2)");
  AngleBound out;
  out.split = dominant_split(p, alpha);
  out.alpha = alpha.angle();
  out.delta = delta;
  out.eps = eps;
  if (out.split.gap < 2.0 * eps)
    throw PreconditionError("lower_bound_in_angle: dominant gap " + std::to_string(out.split.gap) + " is below 2 eps = " +
                            std::to_string(2.0 * eps));

  const ExpPolynomial& rest = out.split.rest;
  const cplx mu = out.split.leading.exponent;
  int rest_degree = 0;
  for (const auto& t : rest.terms()) rest_degree = std::max(rest_degree, t.coefficient.degree());
  const double rho_max = std::max(10.0, 4.0 * (rest_degree + 1) / eps);

  double log_c = -kInf;
  for (std::size_t i = 0; i < kThetaGrid; ++i) {
    const double theta = out.alpha - delta + 2.0 * delta * static_cast<double>(i) / (kThetaGrid - 1);
    const double h_rest = h_terms(rest, theta);
    if (h_rest == -kInf) continue;
    const double margin = projection(mu, theta) - h_rest;
    if (margin < 2.0 * eps - 1e-12)
      throw PreconditionError("lower_bound_in_angle: dominance gap drops to " + std::to_string(margin) +
                              " below 2 eps at angle " + std::to_string(theta) + "; shrink delta");
    for (std::size_t k = 0; k < kRadialGrid; ++k) {
      const double rho = rho_max * static_cast<double>(k) / (kRadialGrid - 1);
      const cplx z = std::polar(rho, theta);
      log_c = std::max(log_c, log_majorant(rest, z) - (h_rest + eps) * rho);
    }
  }
  out.c_eps = log_c == -kInf ? 0.0 : kSafetyFactor * std::exp(log_c);

  // |a_tau(z)| >= m for |z| >= rho0.
  const auto& a = out.split.leading.coefficient.coefficients();
  const int d = out.split.leading.coefficient.degree();
  double rho0 = 0.0, m = std::abs(a[0]);
  if (d > 0) {
    double lower = 0.0;
    for (int j = 0; j < d; ++j) lower += std::abs(a[j]);
    rho0 = std::max(1.0, 2.0 * lower / std::abs(a[d]));
    m = std::abs(a[d]) * std::pow(rho0, d) / 2.0;
  }
  out.radius = rho0;
  if (out.c_eps > 0.0) out.radius = std::max({rho0, std::log(2.0 * out.c_eps / m) / eps, 0.0});
  return out;
}

ZeroFreeReport zero_free_angle_check(const ExpPolynomial& p, const Direction& alpha, double delta, double eps,
                                     double radius, std::size_t grid) {
  if (grid == 0) throw DomainError("zero_free_angle_check: grid must be >= 1");
  if (grid > kMaxAngleGrid) throw ResourceError("zero_free_angle_check: grid exceeds cap " + std::to_string(kMaxAngleGrid));
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw DomainError("zero_free_angle_check: radius must be >= 0");
  const AngleBound lb = lower_bound_in_angle(p, alpha, delta, eps);

  ZeroFreeReport rep;
  rep.radius = radius;
  rep.certified_radius = lb.radius;
  rep.min_abs = kInf;
  rep.min_normalized = kInf;
  double min_log = kInf;
  const double width = 3.0 * radius + 10.0;
  for (std::size_t i = 0; i < grid; ++i) {
    const double theta = lb.alpha - delta + (static_cast<double>(i) + 0.5) * 2.0 * delta / static_cast<double>(grid);
    for (std::size_t j = 0; j < grid; ++j) {
      const double rho = radius + static_cast<double>(j + 1) * width / static_cast<double>(grid);
      const cplx z = std::polar(rho, theta);
      const double log_p = p.log_abs(z);
      const double log_b = lb.log_bound(z);
      ++rep.samples;
      if (log_p < min_log) {
        min_log = log_p;
        rep.min_location = z;
      }
      const double lead = std::log(std::abs(lb.split.leading.coefficient(z))) + (lb.split.leading.exponent * z).real();
      const double normalized = std::exp(log_p - lead);
      if (normalized < rep.min_normalized) {
        rep.min_normalized = normalized;
        rep.min_normalized_location = z;
      }
      if (log_b == -kInf || log_p < log_b) rep.failures.push_back({z, std::exp(log_p), lb.bound(z)});
    }
  }
  rep.min_abs = std::exp(min_log);
  rep.passed = radius >= lb.radius * (1.0 - 1e-12) && rep.failures.empty() && min_log > -kInf;
  return rep;
}

std::string to_string(MembershipVerdict v) {
  switch (v) {
    case MembershipVerdict::zero_element: return "zero_element";
    case MembershipVerdict::certified: return "certified";
    case MembershipVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

MembershipReport membership_contradiction(const ExpPolynomial& p, std::span<const cplx> seq, const Direction& alpha) {
  MembershipReport rep;
  if (p.is_zero()) {
    rep.verdict = MembershipVerdict::zero_element;
    return rep;
  }
  const DominantSplit split = dominant_split(p, alpha);
  const double eps = std::min(split.gap, 4.0) / 4.0;
  double delta = kPi / 4.0;
  for (;;) {
    try {
      rep.bound = lower_bound_in_angle(p, alpha, delta, eps);
      break;
    } catch (const TiedExtremePointError&) {
      throw;
    } catch (const PreconditionError&) {
      delta /= 2.0;
      if (delta < 1e-8) throw;
    }
  }
  const AngleBound& lb = *rep.bound;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    const cplx l = seq[n];
    if (!lb.in_angle(l) || std::abs(l) <= lb.radius) continue;
    ++rep.in_angle_beyond_radius;
    const double log_b = lb.log_bound(l);
    const double log_p = p.log_abs(l);
    if (log_b == -kInf || log_p < log_b) continue;
    ++rep.certified_count;
    if (!rep.first_index) {
      rep.first_index = n;
      rep.first_point = l;
      rep.first_log_abs = log_p;
      rep.first_log_bound = log_b;
    }
  }
  rep.verdict = rep.first_index ? MembershipVerdict::certified : MembershipVerdict::inconclusive;
  return rep;
}

}  // namespace expinterp
