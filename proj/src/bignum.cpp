#include "bignum.hpp"

#include <cmath>
#include <limits>

namespace expinterp::detail {

unsigned bits_to_digits10(unsigned bits) { return static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1; }

namespace {
std::recursive_mutex& precision_mutex() {
  static std::recursive_mutex m;
  return m;
}
}  // namespace

PrecisionGuard::PrecisionGuard(unsigned bits)
    : lock_(precision_mutex()), saved_digits10_(BigReal::default_precision()) {
  BigReal::default_precision(bits_to_digits10(bits));
}

PrecisionGuard::~PrecisionGuard() { BigReal::default_precision(saved_digits10_); }

BigComplex div(const BigComplex& a, const BigComplex& b) {
  const BigReal d = norm2(b);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

BigComplex polar_exp(const BigReal& log_mag, const BigReal& phase) {
  const BigReal m = exp(log_mag);
  return {m * cos(phase), m * sin(phase)};
}

void assignment_duals(const std::vector<std::vector<double>>& L, std::vector<double>& U, std::vector<double>& V) {
  // Minimum-cost assignment on cost = -L (shifted to stay finite), potentials
  // u, v with u_i + v_j <= cost_ij; then U = -u, V = -v.
  const std::size_t n = L.size();
  double finite_min = std::numeric_limits<double>::infinity(), finite_max = -finite_min;
  for (const auto& row : L)
    for (double x : row)
      if (std::isfinite(x)) {
        finite_min = std::min(finite_min, x);
        finite_max = std::max(finite_max, x);
      }
  if (!std::isfinite(finite_min)) finite_min = finite_max = 0.0;
  const double forbidden = finite_min - 1e3 - 10.0 * (finite_max - finite_min);
  auto cost = [&](std::size_t i, std::size_t j) {
    const double x = L[i][j];
    return -(std::isfinite(x) ? x : forbidden);
  };

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  U.assign(n, 0.0);
  V.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) U[i] = -u[i + 1];
  for (std::size_t j = 0; j < n; ++j) V[j] = -v[j + 1];
}

void PivotedQR::factor(std::vector<std::vector<BigComplex>> matrix) {
  a = std::move(matrix);
  rows = a.size();
  cols = rows ? a[0].size() : 0;
  permutation.resize(cols);
  for (std::size_t j = 0; j < cols; ++j) permutation[j] = j;
  householder.clear();
  diag_abs.clear();

  for (std::size_t k = 0; k < cols; ++k) {
    // pivot: largest remaining column norm
    std::size_t best = k;
    BigReal best_norm(-1);
    for (std::size_t j = k; j < cols; ++j) {
      BigReal s(0);
      for (std::size_t i = k; i < rows; ++i) s += norm2(a[i][j]);
      if (s > best_norm) {
        best_norm = s;
        best = j;
      }
    }
    if (best != k) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][k], a[i][best]);
      std::swap(permutation[k], permutation[best]);
    }

    const BigReal xnorm = sqrt(best_norm);
    std::vector<BigComplex> v(rows - k);
    for (std::size_t i = k; i < rows; ++i) v[i - k] = a[i][k];
    if (xnorm == 0) {
      householder.push_back({});
      diag_abs.push_back(BigReal(0));
      continue;
    }
    const BigReal x0abs = abs(v[0]);
    // alpha = -e^{i arg x0} ||x||
    BigComplex phase = x0abs == 0 ? BigComplex(BigReal(1), BigReal(0)) : BigComplex(v[0].re / x0abs, v[0].im / x0abs);
    const BigComplex alpha = phase * BigReal(-xnorm);
    v[0] -= alpha;
    BigReal vnorm2(0);
    for (const auto& e : v) vnorm2 += norm2(e);

    // apply H = I - 2 v v^* / (v^* v) to the trailing columns
    for (std::size_t j = k; j < cols; ++j) {
      BigComplex dot;
      for (std::size_t i = k; i < rows; ++i) dot += conj(v[i - k]) * a[i][j];
      const BigReal scale = BigReal(2) / vnorm2;
      dot = dot * scale;
      for (std::size_t i = k; i < rows; ++i) a[i][j] -= v[i - k] * dot;
    }
    for (std::size_t i = k + 1; i < rows; ++i) a[i][k] = BigComplex();
    a[k][k] = alpha;
    diag_abs.push_back(xnorm);
    // store the reflector scaled so that applying it needs no extra norm
    const BigReal inv = BigReal(1) / sqrt(vnorm2 / 2);
    for (auto& e : v) e = e * inv;
    householder.push_back(std::move(v));
  }
}

std::size_t PivotedQR::rank(double relative_threshold) const {
  if (diag_abs.empty() || diag_abs[0] == 0) return 0;
  const BigReal cut = diag_abs[0] * BigReal(relative_threshold);
  std::size_t r = 0;
  while (r < diag_abs.size() && diag_abs[r] > cut) ++r;
  return r;
}

std::vector<BigComplex> PivotedQR::solve(std::vector<BigComplex> rhs, std::size_t r) const {
  // rhs <- Q^* rhs, reflectors normalized so that H = I - w w^*
  for (std::size_t k = 0; k < householder.size(); ++k) {
    const auto& w = householder[k];
    if (w.empty()) continue;
    BigComplex dot;
    for (std::size_t i = k; i < rows; ++i) dot += conj(w[i - k]) * rhs[i];
    for (std::size_t i = k; i < rows; ++i) rhs[i] -= w[i - k] * dot;
  }
  std::vector<BigComplex> y(cols);
  for (std::size_t kk = r; kk-- > 0;) {
    BigComplex s = rhs[kk];
    for (std::size_t j = kk + 1; j < r; ++j) s -= a[kk][j] * y[j];
    y[kk] = div(s, a[kk][kk]);
  }
  std::vector<BigComplex> x(cols);
  for (std::size_t k = 0; k < cols; ++k) x[permutation[k]] = y[k];
  return x;
}

}  // namespace expinterp::detail
