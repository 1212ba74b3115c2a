#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "expinterp/errors.hpp"
#include "expinterp/growth.hpp"
#include "expinterp/interp.hpp"
#include "expinterp/runner.hpp"
#include "expinterp/scenario.hpp"

namespace py = pybind11;
using namespace expinterp;

namespace {

InterpolationProblem make_problem(const std::vector<std::pair<cplx, int>>& nodes, std::vector<cplx> data,
                                  std::vector<cplx> exponents) {
  InterpolationProblem p;
  for (const auto& [point, m] : nodes) p.nodes.push_back({point, m});
  p.data = std::move(data);
  p.exponents = std::move(exponents);
  return p;
}

py::dict solve_dict(const SolveReport& r) {
  py::dict d;
  d["status"] = to_string(r.status);
  d["coefficients"] = r.coefficients;
  d["residual_rel"] = r.residual_rel;
  d["condition_estimate"] = r.condition_estimate;
  d["rank"] = r.rank;
  d["accepted"] = r.accepted;
  d["max_deviation"] = r.max_deviation;
  d["precision_bits"] = r.precision_bits;
  return d;
}

std::vector<std::string> diagnostics_of(const std::vector<Diagnostic>& ds) {
  std::vector<std::string> out;
  for (const Diagnostic& d : ds) out.push_back(d.format());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Interpolation by sums of exponentials";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ConfigurationError>(m, "ConfigurationError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  m.def("version", &library_version);

  m.def(
      "solve",
      [](const std::vector<std::pair<cplx, int>>& nodes, std::vector<cplx> data, std::vector<cplx> exponents,
         double tol) {
        const auto p = make_problem(nodes, std::move(data), std::move(exponents));
        SolveReport r;
        {
          py::gil_scoped_release release;
          r = solve(p, tol);
        }
        return solve_dict(r);
      },
      py::arg("nodes"), py::arg("data"), py::arg("exponents"), py::arg("tol") = 1e-8,
      "Solve u^(j)(mu_k) = b_k^j; nodes are (point, multiplicity) pairs.");

  m.def(
      "solve_crude",
      [](const std::vector<cplx>& nodes, std::vector<cplx> data, std::vector<cplx> exponents,
         const std::vector<double>& delta, double tol) {
        std::vector<std::pair<cplx, int>> simple;
        for (cplx z : nodes) simple.emplace_back(z, 1);
        return solve_dict(solve_crude(make_problem(simple, std::move(data), std::move(exponents)), delta, tol));
      },
      py::arg("nodes"), py::arg("data"), py::arg("exponents"), py::arg("delta"), py::arg("tol") = 1e-8);

  m.def(
      "verify_obstruction_pairing",
      [](cplx mu_l, cplx mu_k, std::size_t N, std::size_t trials, std::uint64_t seed) {
        const auto r = verify_obstruction_pairing(mu_l, mu_k, N, trials, seed);
        py::dict d;
        d["exponents"] = r.exponents;
        d["max_difference"] = r.max_difference;
        d["max_relative"] = r.max_relative;
        d["integer_defect"] = r.integer_defect;
        d["trials"] = r.trials;
        d["passed"] = r.passed;
        return d;
      },
      py::arg("mu_l"), py::arg("mu_k"), py::arg("N"), py::arg("trials"), py::arg("seed") = 0x5eed);

  m.def(
      "growth_exponent",
      [](const std::vector<cplx>& prefix, double eps, double x) { return growth_exponent(prefix, eps, x); },
      py::arg("prefix"), py::arg("eps"), py::arg("x"), "eps * h(x / eps) over a finite exponent prefix.");

  m.def(
      "validate_scenario",
      [](const std::string& text) {
        auto parsed = parse_scenario(text);
        if (!parsed.scenario) return diagnostics_of(parsed.diagnostics);
        return diagnostics_of(validate_scenario(*parsed.scenario));
      },
      py::arg("text"), "Diagnostics for scenario JSON text; empty when runnable.");

  m.def(
      "run_scenario",
      [](const std::string& text, std::uint64_t seed, bool parallel) {
        auto parsed = parse_scenario(text);
        if (!parsed.scenario) throw ConfigurationError(parsed.diagnostics.front().format());
        const auto diags = validate_scenario(*parsed.scenario);
        if (!diags.empty()) throw ConfigurationError(diags.front().format());
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run_scenario(*parsed.scenario, {seed, parallel});
        }
        return py::make_tuple(r.report, r.exit_code);
      },
      py::arg("text"), py::arg("seed") = 0, py::arg("parallel") = false,
      "Run scenario JSON text; returns (report JSON text, exit code).");
}
