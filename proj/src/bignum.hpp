#pragma once
// MPFR-backed arithmetic for the interpolation solver. Private to the library.

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <mutex>
#include <vector>

namespace expinterp::detail {

using BigReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                              boost::multiprecision::et_off>;

// Sets the default MPFR precision for the guard's lifetime. Boost keeps that
// default process-wide, so the guard also holds a process-wide lock: MPFR
// sections of concurrent solves run one at a time.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  std::unique_lock<std::recursive_mutex> lock_;
  unsigned saved_digits10_;
};

unsigned bits_to_digits10(unsigned bits);

struct BigComplex {
  BigReal re;
  BigReal im;

  BigComplex() : re(0), im(0) {}
  BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
  explicit BigComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  BigComplex& operator+=(const BigComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  BigComplex& operator-=(const BigComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  std::complex<double> to_double() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

inline BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
inline BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
inline BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline BigComplex operator*(const BigComplex& a, const BigReal& s) { return {a.re * s, a.im * s}; }
inline BigComplex conj(const BigComplex& a) { return {a.re, -a.im}; }
inline BigReal norm2(const BigComplex& a) { return a.re * a.re + a.im * a.im; }
inline BigReal abs(const BigComplex& a) { return sqrt(norm2(a)); }
BigComplex div(const BigComplex& a, const BigComplex& b);

// exp(log_mag) * (cos phase + i sin phase)
BigComplex polar_exp(const BigReal& log_mag, const BigReal& phase);

// Row/column log-weights U, V with L(k,n) <= U_k + V_n, equality on an
// optimal assignment (Hungarian duals). Requires a square matrix; entries
// of -inf are treated as forbidden.
void assignment_duals(const std::vector<std::vector<double>>& L, std::vector<double>& U, std::vector<double>& V);

// Householder QR with column pivoting of an m x n matrix (m >= n).
struct PivotedQR {
  std::vector<std::vector<BigComplex>> a;  // overwritten: R in the upper triangle
  std::vector<std::vector<BigComplex>> householder;  // reflector vectors, one per column step
  std::vector<std::size_t> permutation;             // column k of R is original column permutation[k]
  std::vector<BigReal> diag_abs;                     // |R_kk|
  std::size_t rows = 0;
  std::size_t cols = 0;

  void factor(std::vector<std::vector<BigComplex>> matrix);
  std::size_t rank(double relative_threshold) const;
  // Basic least-squares solution using the leading `rank` pivots; the
  // remaining unknowns are set to zero.
  std::vector<BigComplex> solve(std::vector<BigComplex> rhs, std::size_t rank) const;
};

}  // namespace expinterp::detail
