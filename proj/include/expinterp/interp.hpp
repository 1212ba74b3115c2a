#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <memory>

#include "expinterp/exponents.hpp"
#include "expinterp/growth.hpp"
#include "expinterp/nodes.hpp"

namespace expinterp {

// Find u = sum c_n e^{l_n z} with u^{(j)}(mu_k) = b_k^j, j < m_k.
// Data are flattened node-major, derivative order ascending.
struct InterpolationProblem {
  std::vector<Node> nodes;
  std::vector<cplx> data;
  std::vector<cplx> exponents;

  std::size_t row_count() const;
  // DomainError on length mismatch, ConfigurationError on repeated nodes or
  // exponents or a multiplicity below 1.
  void validate() const;
  bool operator==(const InterpolationProblem&) const = default;
};

inline constexpr std::size_t kMaxSolveDimension = 64;

// Dense row-major complex matrix.
struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<cplx> data;

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  cplx& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  cplx operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Row (k, j) holds l_n^j e^{l_n mu_k}. With scaled = true every column n is
// multiplied by exp(-column_shift[n]), column_shift[n] = max_k Re(l_n mu_k),
// computed without forming the unscaled entries.
struct LinearSystem {
  ComplexMatrix matrix;
  std::vector<cplx> rhs;
  std::vector<double> column_shift;  // all zero when unscaled
};

LinearSystem build_system(const InterpolationProblem& p, bool scaled = false);

// Coefficients kept at the working precision of the solve. Sums with sparse
// exponents cancel by hundreds of digits at the nodes, so re-evaluation from
// rounded double coefficients is meaningless; this object re-evaluates exactly.
class PreciseExpSum {
 public:
  struct Impl;
  explicit PreciseExpSum(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  // u^{(j)}(z), evaluated at the stored precision and rounded to double.
  cplx derivative(cplx z, int order) const;
  unsigned precision_bits() const;
  std::size_t size() const;
  // Decimal rendering of coefficient n with `digits` significant digits.
  std::string coefficient_string(std::size_t n, int digits = 20) const;
  // c_n = mantissa * exp(log_scale); mantissa is O(1) or smaller.
  cplx mantissa(std::size_t n) const;
  double log_scale(std::size_t n) const;

 private:
  std::shared_ptr<const Impl> impl_;
};

enum class SolveStatus { solved, singular, ill_conditioned };
std::string to_string(SolveStatus s);

struct SolveReport {
  // Rounded to double; entries below the double range flush to zero. Use
  // `precise` for exact re-evaluation.
  std::vector<cplx> coefficients;
  double residual_rel = 0.0;
  double condition_estimate = 0.0;
  SolveStatus status = SolveStatus::singular;
  std::size_t rank = 0;
  // Crude mode: whether every |u(mu_k) - b_k| <= delta_k; mirrors
  // status == solved for exact solves.
  bool accepted = false;
  double max_deviation = 0.0;
  unsigned precision_bits = 0;
  std::shared_ptr<const PreciseExpSum> precise;
};

struct SolveOptions {
  double rank_threshold = 1e-12;
  double ill_conditioned_above = 1e12;
  unsigned max_precision_bits = 1u << 15;
};

// Column-pivoted Householder QR in MPFR arithmetic on the system equilibrated
// in log space (row and column weights from the optimal-assignment duals of
// log|A|). Precision starts from the row-weight spread and doubles until the
// residual meets tol or max_precision_bits is reached. The condition estimate
// is the |R_00| / |R_nn| ratio of the equilibrated factorization.
SolveReport solve(const InterpolationProblem& p, double tol = 1e-8, SolveOptions opts = {});

// Point-wise crude approximation |u(mu_k) - b_k| <= delta_k, accepted up to
// tol max(||b||, 1). Simple nodes only; as many or fewer exponents than nodes.
// Fits by least squares with rows weighted by 1/delta_k (unweighted when some
// delta_k = 0); returns the zero sum when it already qualifies.
SolveReport solve_crude(const InterpolationProblem& p, std::span<const double> delta, double tol = 1e-8,
                        SolveOptions opts = {});

// The double-rounded coefficients as an ExpSum (lossy, see SolveReport).
ExpSum to_expsum(const InterpolationProblem& p, const SolveReport& r);

struct ObstructionReport {
  std::vector<cplx> exponents;       // l_n = 2 pi n e^{i(pi/2 - beta)} / |mu_k - mu_l|, 0 < |n| <= N
  double max_difference = 0.0;       // max over trials of |u(mu_l) - u(mu_k)|
  double max_relative = 0.0;         // same, divided by max(1, sum |c_n| |e^{l_n mu_l}|)
  double max_column_mismatch = 0.0;  // max_n |e^{l_n mu_l} - e^{l_n mu_k}| / max(1, |e^{l_n mu_l}|)
  double integer_defect = 0.0;       // max_n |l_n (mu_k - mu_l) / (2 pi i) - n| / |n|
  std::size_t trials = 0;
  bool passed = false;
};

// Exponents for which every sum takes equal values at mu_l and mu_k, with
// random coefficient vectors normalized to sum |c_n| = 1.
ObstructionReport verify_obstruction_pairing(cplx mu_l, cplx mu_k, std::size_t N, std::size_t trials,
                                             std::uint64_t seed = 0x5eed);

std::vector<cplx> obstruction_exponents(cplx mu_l, cplx mu_k, std::size_t N);

struct GrowthFailureReport {
  std::vector<double> nodes;
  std::vector<double> log_data;     // ln b_k
  std::vector<double> max_ratio;    // per node, max over trials of |u(mu_k)| / b_k
  double worst_ratio_beyond_first = 0.0;  // max over k >= 2
  std::size_t trials = 0;
  double max_tail_norm = 0.0;       // largest tail_norm(u, polygonized disc eps) seen
  bool vacuous() const { return trials == 0; }
  bool passed() const { return worst_ratio_beyond_first < 1.0; }
};

// Draws sums over the first N exponents normalized to sum |c_n| e^{eps|l_n|} = 1
// and compares |u(mu_k)| with the defeating data b_k. Every limit direction
// of Lambda must satisfy Re s <= 1e-9.
GrowthFailureReport demonstrate_growth_failure(const ExponentSet& lambda, std::span<const double> nodes, double eps,
                                               std::size_t N, std::size_t trials, std::uint64_t seed = 0x5eed);

}  // namespace expinterp
