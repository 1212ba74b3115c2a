// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "expinterp/exponents.hpp"
#include "expinterp/expoly.hpp"
#include "expinterp/growth.hpp"
#include "expinterp/interp.hpp"
#include "expinterp/nodes.hpp"
#include "json.hpp"

using namespace expinterp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

ExponentSet naturals() { return {{}, {Generator::arithmetic(1.0)}}; }

NodeSet integer_ray() { return {{RayPortion{Ray::make(0.0, 0.0), ArithmeticParams{1.0, 1.0, 1}}}, {}}; }

Outcome criterion1() {
  Outcome o;
  double worst = 0;
  for (double phi : {0.0, kPi / 3, 1.1}) {
    const cplx mu_k = std::polar(1.0, phi);
    const auto r = verify_obstruction_pairing(0.0, mu_k, 25, 100, 1);
    worst = std::max(worst, r.max_difference);
    if (r.exponents.size() != 50) o.fail("expected 50 exponents (0 < |n| <= 25)");
    if (r.trials != 100) o.fail("expected 100 trials");
    if (!(r.max_difference <= 1e-12)) o.fail("phi = " + fmt(phi) + ": difference " + fmt(r.max_difference));
    if (!(r.integer_defect <= 1e-14)) o.fail("phi = " + fmt(phi) + ": integer defect " + fmt(r.integer_defect));
    const InterpolationProblem p{{{0.0, 1}, {mu_k, 1}}, {0.3, {-0.2, 0.7}}, {r.exponents[25], r.exponents[26]}};
    const auto s = solve(p);
    if (s.status != SolveStatus::singular) o.fail("phi = " + fmt(phi) + ": two-node solve is " + to_string(s.status));
  }
  if (o.pass) o.detail = "max |u(0) - u(e^{i phi})| = " + fmt(worst) + ", two-node systems singular";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto a = check_criterion(integer_ray(), naturals());
  if (!a.holds || a.witnesses.size() != 1 || !a.witnesses[0].direction || a.witnesses[0].direction->angle() != 0.0)
    o.fail("(a) expected to hold with witness alpha = 0");

  const ExponentSet lattice{{}, {Generator::arithmetic({0, 1}, IndexRange::nonzero)}};
  const auto b = check_criterion(integer_ray(), lattice);
  if (b.holds || b.violations.size() != 1 || !std::holds_alternative<NoDirection>(b.violations[0]))
    o.fail("(b) expected exactly one condition (i) violation");

  NodeSet c_nodes = integer_ray();
  c_nodes.off_ray.push_back({{1, 1}, 1});
  const auto c = check_criterion(c_nodes, naturals());
  bool pair_ok = c.violations.size() == 1;
  if (pair_ok) {
    const auto* pc = std::get_if<ProjectionCollision>(&c.violations[0]);
    pair_ok = pc && pc->mu_l == cplx(1.0) && pc->mu_k == cplx(1, 1);
  }
  if (c.holds || !pair_ok) o.fail("(c) expected exactly the condition (ii) collision (1, 1+i)");
  if (o.pass) o.detail = "(a) holds at alpha = 0, (b) fails (i), (c) fails (ii) on (1, 1+i)";
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> size(1, 50);
  std::uniform_real_distribution<double> re(0.0, 20.0), im(-20.0, 20.0);
  double worst = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<cplx> prefix;
    const int n = size(rng);
    while (static_cast<int>(prefix.size()) < n) {
      const double x = re(rng);
      if (x > 0) prefix.push_back({x, im(rng)});
    }
    const auto gm = GrowthMajorant::from_exponents(prefix);
    const auto reduced = gm.reduced_exponents();
    for (int i = 1; i <= 100; ++i) {
      const double x = 0.1 * i;
      worst = std::max(worst, std::abs(phi_star(gm, x) - h_direct(reduced, x)));
    }
  }
  if (!(worst <= 1e-9)) o.fail("max |phi* - h| = " + fmt(worst));
  else o.detail = "max |phi* - h| = " + fmt(worst) + " over 200 prefixes";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs;
  for (int i = 1; i <= 100; ++i) xs.push_back(0.5 * i);
  std::size_t failures = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<ExpTerm> terms;
    for (int n = 1; n <= 20; ++n) terms.push_back({std::polar(u(rng) * std::exp(-2.0 * n), 2 * kPi * u(rng)), double(n)});
    const auto r = growth_bound_check(ExpSum(terms), 0.5, xs);
    if (r.samples.size() != 100) o.fail("expected 100 samples");
    failures += r.failures;
  }
  if (failures) o.fail(std::to_string(failures) + " sample failures");
  else o.detail = "100 sums x 100 points, 0 failures";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const ExponentSet set{{}, {Generator::arithmetic(1.0), Generator::geometric({0, 1}, 2.0)}};
  const std::vector<Direction> targets{Direction::from_angle(0), Direction::from_angle(kPi / 2)};
  const auto a = sparse_subsequence(set, targets, 12), b = sparse_subsequence(set, targets, 12);
  const auto& pts = a.points();
  if (pts.size() != 12) o.fail("expected 12 points, got " + std::to_string(pts.size()));
  for (std::size_t n = 0; n < pts.size(); ++n) {
    if (n + 1 < pts.size() && !(std::abs(pts[n + 1]) > 2 * std::abs(pts[n]))) o.fail("ratio fails at " + std::to_string(n + 1));
    const double dev = std::abs(pts[n] / std::abs(pts[n]) - targets[n % 2].unit());
    if (!(dev < std::ldexp(1.0, -static_cast<int>(n + 1)))) o.fail("direction deviation fails at " + std::to_string(n + 1));
  }
  if (a.points() != b.points()) o.fail("not deterministic");
  if (o.pass) o.detail = "12 points, last |l| = " + fmt(std::abs(pts.back()));
  return o;
}

long double direct_term(const std::vector<cplx>& seq, std::size_t N, std::size_t n) {
  const std::complex<long double> ln(seq[n - 1]);
  std::complex<long double> g = -1.0L / ln;
  for (std::size_t m = 1; m <= N; ++m)
    if (m != n) g *= 1.0L - ln / std::complex<long double>(seq[m - 1]);
  return std::log(1.0L / std::abs(g)) / std::abs(ln);
}

Outcome criterion6() {
  Outcome o;
  std::vector<cplx> seq;
  for (int n = 1; n <= 25; ++n) seq.push_back(std::ldexp(1.0, n));
  double prev = INFINITY, worst_oracle = 0;
  std::string values;
  for (std::size_t N : {10, 15, 20, 25}) {
    const double e = condensation_index_estimate(seq, N);
    values += (values.empty() ? "" : ", ") + fmt(e);
    if (!(e <= prev)) o.fail("not monotone at N = " + std::to_string(N));
    prev = e;
    double oracle = 0;
    for (std::size_t n = std::max<std::size_t>(2, (N + 1) / 2); n <= N; ++n) {
      const double d = static_cast<double>(direct_term(seq, N, n));
      worst_oracle = std::max(worst_oracle, std::abs(condensation_term(seq, N, n) - d));
      oracle = std::max(oracle, std::abs(d));
    }
    if (!(std::abs(oracle - e) <= 1e-12)) o.fail("estimate disagrees with the product oracle at N = " + std::to_string(N));
  }
  if (!(prev <= 0.05)) o.fail("estimate at N = 25 is " + fmt(prev));
  if (!(worst_oracle <= 1e-12)) o.fail("term oracle mismatch " + fmt(worst_oracle));
  if (o.pass) o.detail = "N = 10..25: " + values;
  return o;
}

Outcome criterion7() {
  Outcome o;
  const NodeSet nodes = integer_ray();
  const auto verdict = check_criterion(nodes, naturals());
  if (!verdict.holds) {
    o.fail("criterion does not hold for nodes 1..8");
    return o;
  }
  const Direction w = *verdict.witnesses[0].direction;
  InterpolationProblem p;
  for (const Node& n : nodes.ray_nodes(0, 8)) p.nodes.push_back(n);
  p.exponents = sparse_subsequence(naturals(), std::span<const Direction>(&w, 1), 8).points();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    p.data.clear();
    for (int k = 0; k < 8; ++k) p.data.push_back(std::polar(std::sqrt(u(rng)), 2 * kPi * u(rng)));
    const auto r = solve(p, 1e-6);
    worst = std::max(worst, r.residual_rel);
    if (r.status != SolveStatus::solved || !(r.residual_rel <= 1e-6))
      o.fail("trial " + std::to_string(t) + ": " + to_string(r.status) + ", residual " + fmt(r.residual_rel));
  }
  const double inv[3][3] = {{3, -2.5, 0.5}, {-3, 4, -1}, {1, -1.5, 0.5}};
  const std::vector<cplx> b{{1, 0.5}, -2.0, {0.25, 3}};
  const auto v = solve({{{0.0, 3}}, b, {1.0, 2.0, 3.0}});
  double vdm = 0;
  for (int i = 0; i < 3; ++i)
    vdm = std::max(vdm, std::abs(v.coefficients[i] - (inv[i][0] * b[0] + inv[i][1] * b[1] + inv[i][2] * b[2])));
  if (v.status != SolveStatus::solved || !(vdm <= 1e-10)) o.fail("Vandermonde mismatch " + fmt(vdm));
  if (o.pass) o.detail = "20 trials solved, max residual " + fmt(worst) + "; Vandermonde error " + fmt(vdm);
  return o;
}

Outcome criterion8() {
  Outcome o;
  const InterpolationProblem p{{{0.0, 1}, {1.0, 1}}, {0.0, 1.0}, {{0, 2 * kPi}, {0, 4 * kPi}}};
  if (solve(p).status != SolveStatus::singular) o.fail("two-node system is not singular");
  const std::vector<double> narrow{0.4, 0.4}, wide{0.6, 0.6};
  const auto n = solve_crude(p, narrow), w = solve_crude(p, wide);
  if (n.accepted) o.fail("delta 0.4 accepted");
  if (!w.accepted || !(w.max_deviation <= 0.6)) o.fail("delta 0.6 rejected");
  if (o.pass) o.detail = "delta 0.4 rejected (deviation " + fmt(n.max_deviation) + "), delta 0.6 accepted (deviation " +
                         fmt(w.max_deviation) + ")";
  return o;
}

Outcome criterion9() {
  Outcome o;
  const Direction zero = Direction::from_angle(0);
  const std::vector<cplx> mu{1.0, 2.0}, ones{1.0, 1.0};
  const auto p = ExpPolynomial::from_exponentials(ones, mu);
  const auto b = lower_bound_in_angle(p, zero, 0.1, 0.25);
  if (!std::isfinite(b.radius)) o.fail("radius not finite");
  const auto z = zero_free_angle_check(p, zero, 0.1, 0.25, b.radius, 64);
  if (!z.passed) o.fail("zero-free check failed on the 64 x 64 grid");

  const std::vector<cplx> neg_c{-std::exp(20.0), 1.0};
  const auto neg = ExpPolynomial::from_exponentials(neg_c, mu);
  const auto zn = zero_free_angle_check(neg, zero, 0.1, 0.25, 10.0, 64);
  if (zn.passed) o.fail("seeded negative (zero at z = 20) passed");

  const auto seq = sparse_subsequence(naturals(), std::span<const Direction>(&zero, 1), 12);
  const auto m = membership_contradiction(p, seq, zero);
  if (m.verdict != MembershipVerdict::certified) o.fail("membership not certified");
  if (o.pass)
    o.detail = "r = " + fmt(b.radius) + ", negative fails (" + std::to_string(zn.failures.size()) +
               " failures), membership certified at l = " + fmt(m.first_point.real());
  return o;
}

int run_command(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome criterion10() {
  Outcome o;
  namespace fs = std::filesystem;
  const std::string cli = EXPINTERP_CLI_PATH;
  const std::string scenario = std::string(EXPINTERP_SCENARIO_DIR) + "/acceptance.json";
  const fs::path base = fs::temp_directory_path() / ("expinterp_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(base);
  const std::string quiet = " > /dev/null 2>&1";
  const int r1 = run_command("\"" + cli + "\" run \"" + scenario + "\" --out \"" + (base / "a").string() + "\" --seed 42" + quiet);
  const int r2 = run_command("\"" + cli + "\" run \"" + scenario + "\" --out \"" + (base / "b").string() + "\" --seed 42" + quiet);
  const int rv = run_command("\"" + cli + "\" validate \"" + scenario + "\" > \"" + (base / "validate.txt").string() + "\" 2>&1");
  if (r1 != 0 || r2 != 0) o.fail("run exit codes " + std::to_string(r1) + ", " + std::to_string(r2));
  const std::string a = slurp(base / "a" / "report.json"), b = slurp(base / "b" / "report.json");
  if (a.empty() || a != b) o.fail("reports differ or are empty");
  if (rv != 0 || slurp(base / "validate.txt").find("ok: no diagnostics") == std::string::npos)
    o.fail("validate reported diagnostics");

  // the replayed verdicts must match criteria 1, 2 and 7
  if (o.pass) {
    const auto rep = nlohmann::json::parse(a);
    const auto& t = rep.at("tasks");
    bool ok = t.size() == 8;
    for (int i = 0; ok && i < 3; ++i)
      ok = t[i]["result"]["passed"] == true && t[i]["result"]["two_node_solve_status"] == "singular";
    ok = ok && t[3]["result"]["holds"] == true && t[4]["result"]["holds"] == false &&
         t[4]["result"]["violations"][0]["type"] == "no_direction" && t[5]["result"]["holds"] == false &&
         t[5]["result"]["violations"][0]["type"] == "projection_collision";
    ok = ok && t[6]["result"]["all_solved"] == true && t[7]["result"]["status"] == "solved";
    if (!ok) o.fail("replayed verdicts do not match");
  }
  fs::remove_all(base);
  if (o.pass) o.detail = std::to_string(a.size()) + "-byte reports identical, validate clean, verdicts replayed";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"two-node obstruction", criterion1},     {"criterion checker battery", criterion2},
      {"conjugate identity", criterion3},       {"growth bound", criterion4},
      {"sparse subsequence contract", criterion5}, {"condensation surrogate", criterion6},
      {"solvable interpolation", criterion7},   {"crude approximation", criterion8},
      {"zero-free angle", criterion9},          {"CLI determinism", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > 60.0) o.fail("took " + fmt(secs) + " s");
    std::printf("[%s] criterion %zu %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    failed += !o.pass;
  }
  std::fflush(stdout);
  return failed ? 1 : 0;
}
