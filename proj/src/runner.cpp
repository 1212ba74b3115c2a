#include "expinterp/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>

#include "expinterp/errors.hpp"
#include "expinterp/expoly.hpp"
#include "expinterp/growth.hpp"
#include "json.hpp"

#ifndef EXPINTERP_VERSION
#define EXPINTERP_VERSION "0.0.0"
#endif

namespace expinterp {

using json = nlohmann::ordered_json;

std::string library_version() { return EXPINTERP_VERSION; }

std::string to_string(TaskErrorKind k) {
  switch (k) {
    case TaskErrorKind::none: return "none";
    case TaskErrorKind::precondition: return "precondition";
    case TaskErrorKind::domain: return "domain";
    case TaskErrorKind::configuration: return "configuration";
    case TaskErrorKind::resource: return "resource";
    case TaskErrorKind::internal: return "internal";
  }
  return "unknown";
}

namespace {

// JSON has no infinities; they are written as strings.
json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json cnum(cplx z) { return json::array({num(z.real()), num(z.imag())}); }

json clist(std::span<const cplx> zs) {
  json a = json::array();
  for (cplx z : zs) a.push_back(cnum(z));
  return a;
}

json nlist(std::span<const double> xs) {
  json a = json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

struct TaskContext {
  const Scenario& scenario;
  const Task& task;
  std::uint64_t seed;
  std::vector<PlotCurve>& plots;

  void plot(std::string name, std::vector<std::pair<double, double>> points) {
    if (task.emit_plot) plots.push_back({std::move(name), std::move(points)});
  }
};

json solve_record(const SolveReport& r) {
  json o;
  o["status"] = to_string(r.status);
  o["residual_rel"] = num(r.residual_rel);
  o["condition_estimate"] = num(r.condition_estimate);
  o["rank"] = r.rank;
  o["precision_bits"] = r.precision_bits;
  o["coefficients"] = clist(r.coefficients);
  if (r.precise) {
    json precise = json::array();
    for (std::size_t n = 0; n < r.precise->size(); ++n) precise.push_back(r.precise->coefficient_string(n, 20));
    o["coefficients_precise"] = precise;
  }
  return o;
}

InterpolationProblem to_problem(const ProblemSpec& p) { return {p.nodes, p.data, p.exponents}; }

json run_criterion(TaskContext& ctx, const CriterionTask& t) {
  const CriterionVerdict v = check_criterion(ctx.scenario.nodes_for(ctx.task), ctx.scenario.exponents_for(ctx.task),
                                             t.prefix, {t.angle_tolerance, t.projection_tolerance});
  json o;
  o["holds"] = v.holds;
  o["prefix"] = v.prefix;
  json dirs = json::array();
  for (const Direction& d : v.limit_directions) dirs.push_back(num(d.angle()));
  o["limit_directions"] = dirs;
  json wit = json::array();
  for (const RayWitness& w : v.witnesses) {
    json wo;
    wo["ray"] = w.ray;
    wo["alpha"] = w.direction ? num(w.direction->angle()) : json(nullptr);
    wo["margin"] = num(w.margin);
    wit.push_back(wo);
  }
  o["witnesses"] = wit;
  json vio = json::array();
  for (const Violation& x : v.violations) {
    json vo;
    if (const auto* nd = std::get_if<NoDirection>(&x)) {
      vo["type"] = "no_direction";
      vo["ray"] = nd->ray;
    } else {
      const auto& pc = std::get<ProjectionCollision>(x);
      vo["type"] = "projection_collision";
      vo["ray"] = pc.ray;
      vo["mu_l"] = cnum(pc.mu_l);
      vo["mu_k"] = cnum(pc.mu_k);
      vo["projection"] = num(pc.projection);
    }
    vio.push_back(vo);
  }
  o["violations"] = vio;
  return o;
}

// Nodes taken round-robin over the rays, then the off-ray nodes, until the
// multiplicities add up to `size`.
std::vector<Node> pick_nodes(const NodeSet& M, std::size_t size) {
  std::vector<std::vector<Node>> per_ray;
  for (std::size_t j = 0; j < M.rays.size(); ++j) per_ray.push_back(M.ray_nodes(j, size));
  std::vector<Node> out;
  std::size_t rows = 0;
  auto take = [&](const Node& n) {
    if (rows >= size) return;
    if (rows + static_cast<std::size_t>(n.multiplicity) > size)
      throw PreconditionError("node multiplicities cannot add up to exactly " + std::to_string(size) + " rows");
    out.push_back(n);
    rows += static_cast<std::size_t>(n.multiplicity);
  };
  for (std::size_t k = 0; k < size && rows < size; ++k)
    for (const auto& ray : per_ray)
      if (k < ray.size()) take(ray[k]);
  for (const OffRayNode& n : M.off_ray) take({n.point, n.multiplicity});
  if (rows < size) throw PreconditionError("node set supplies only " + std::to_string(rows) + " of " +
                                           std::to_string(size) + " rows");
  return out;
}

json run_solve(TaskContext& ctx, const SolveTask& t) {
  if (t.problem) {
    const SolveReport r = solve(to_problem(*t.problem), t.tolerance);
    json o = solve_record(r);
    o["mode"] = "explicit";
    return o;
  }
  const NodeSet& M = ctx.scenario.nodes_for(ctx.task);
  const ExponentSet& lambda = ctx.scenario.exponents_for(ctx.task);
  const CriterionVerdict v = check_criterion(M, lambda);
  if (!v.holds) throw PreconditionError("generated solve requires the criterion to hold for the scenario's sets");
  std::vector<Direction> targets;
  for (const RayWitness& w : v.witnesses)
    if (!contains_direction(targets, *w.direction)) targets.push_back(*w.direction);

  InterpolationProblem p;
  p.nodes = pick_nodes(M, t.size);
  p.exponents = sparse_subsequence(lambda, targets, t.size).points();

  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  json trials = json::array();
  bool all_solved = true;
  double max_residual = 0.0, max_condition = 0.0;
  std::vector<std::pair<double, double>> residual_curve;
  for (std::size_t trial = 0; trial < t.trials; ++trial) {
    p.data.clear();
    for (std::size_t r = 0; r < t.size; ++r) {
      const double rad = t.data_bound * std::sqrt(unit(rng));
      p.data.push_back(std::polar(rad, 2.0 * kPi * unit(rng) - kPi));
    }
    const SolveReport r = solve(p, t.tolerance);
    all_solved = all_solved && r.status == SolveStatus::solved;
    max_residual = std::max(max_residual, r.residual_rel);
    max_condition = std::max(max_condition, r.condition_estimate);
    json to;
    to["status"] = to_string(r.status);
    to["residual_rel"] = num(r.residual_rel);
    to["condition_estimate"] = num(r.condition_estimate);
    to["precision_bits"] = r.precision_bits;
    trials.push_back(to);
    residual_curve.emplace_back(static_cast<double>(trial), r.residual_rel);
  }
  ctx.plot("residual", std::move(residual_curve));

  json nodes = json::array();
  for (const Node& n : p.nodes) nodes.push_back(json::array({cnum(n.point), n.multiplicity}));
  json o;
  o["mode"] = "generated";
  o["nodes"] = nodes;
  o["exponents"] = clist(p.exponents);
  o["all_solved"] = all_solved;
  o["max_residual_rel"] = num(max_residual);
  o["max_condition_estimate"] = num(max_condition);
  o["trials"] = trials;
  return o;
}

json run_crude(TaskContext&, const CrudeTask& t) {
  const SolveReport r = solve_crude(to_problem(t.problem), t.delta, t.tolerance);
  json o = solve_record(r);
  o["accepted"] = r.accepted;
  o["max_deviation"] = num(r.max_deviation);
  return o;
}

json run_obstruction(TaskContext& ctx, const ObstructionTask& t) {
  const ObstructionReport r = verify_obstruction_pairing(t.mu_l, t.mu_k, t.count, t.trials, ctx.seed);
  // Two of the constructed exponents (n = 1 and n = 2, or n = -1 when N = 1)
  // on the two nodes: both columns take equal values at mu_l and mu_k.
  const cplx second = t.count >= 2 ? r.exponents[t.count + 1] : r.exponents[t.count - 1];
  const InterpolationProblem p{{{t.mu_l, 1}, {t.mu_k, 1}}, {0.0, 1.0}, {r.exponents[t.count], second}};
  const SolveReport s = solve(p);
  json o;
  o["passed"] = r.passed;
  o["trials"] = r.trials;
  o["max_difference"] = num(r.max_difference);
  o["max_relative"] = num(r.max_relative);
  o["integer_defect"] = num(r.integer_defect);
  o["max_column_mismatch"] = num(r.max_column_mismatch);
  o["two_node_solve_status"] = to_string(s.status);
  o["two_node_solve_rank"] = s.rank;
  o["exponent_count"] = r.exponents.size();
  return o;
}

json run_growth(TaskContext& ctx, const GrowthTask& t) {
  const ExponentSet& lambda = ctx.scenario.exponents_for(ctx.task);
  json o;
  o["mode"] = t.mode == GrowthMode::bound ? "bound" : "failure";
  if (t.mode == GrowthMode::failure) {
    const GrowthFailureReport r = demonstrate_growth_failure(lambda, t.nodes, t.eps, t.count, t.trials, ctx.seed);
    o["nodes"] = nlist(r.nodes);
    o["log_data"] = nlist(r.log_data);
    o["max_ratio"] = nlist(r.max_ratio);
    o["worst_ratio_beyond_first"] = num(r.worst_ratio_beyond_first);
    o["max_tail_norm"] = num(r.max_tail_norm);
    o["trials"] = r.trials;
    o["vacuous"] = r.vacuous();
    o["passed"] = r.passed();
    std::vector<std::pair<double, double>> data, ratio;
    for (std::size_t k = 0; k < r.nodes.size(); ++k) {
      data.emplace_back(r.nodes[k], r.log_data[k]);
      ratio.emplace_back(r.nodes[k], r.max_ratio[k]);
    }
    ctx.plot("log_data", std::move(data));
    ctx.plot("max_ratio", std::move(ratio));
    return o;
  }

  const std::vector<cplx> prefix = enumerate_prefix(lambda, t.count);
  std::vector<double> xs;
  for (std::size_t i = 0; i < t.samples; ++i)
    xs.push_back(t.x_max * static_cast<double>(i + 1) / static_cast<double>(t.samples));

  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t failures = 0;
  double worst_margin = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> log_u_curve, log_bound_curve;
  for (std::size_t trial = 0; trial < t.trials; ++trial) {
    std::vector<ExpTerm> terms;
    for (std::size_t n = 0; n < prefix.size(); ++n) {
      const double mag = std::exp(-t.decay * static_cast<double>(n + 1)) * unit(rng);
      terms.push_back({std::polar(mag, 2.0 * kPi * unit(rng) - kPi), prefix[n]});
    }
    const ExpSum u(std::move(terms));
    const GrowthReport g = growth_bound_check(u, t.eps, xs);
    failures += g.failures;
    for (const GrowthSample& s : g.samples) {
      worst_margin = std::max(worst_margin, s.log_abs_u - s.log_bound);
      if (trial == 0) {
        log_u_curve.emplace_back(s.x, s.log_abs_u);
        log_bound_curve.emplace_back(s.x, s.log_bound);
      }
    }
  }
  if (ctx.task.emit_plot) {
    const GrowthMajorant gm = GrowthMajorant::from_exponents(prefix);
    std::vector<std::pair<double, double>> h, star;
    for (double x : xs) {
      h.emplace_back(x, growth_exponent(prefix, t.eps, x));
      star.emplace_back(x, t.eps * phi_star(gm, x / t.eps));
    }
    ctx.plot("h", std::move(h));
    ctx.plot("phi_star", std::move(star));
    ctx.plot("log_abs_u", std::move(log_u_curve));
    ctx.plot("log_bound", std::move(log_bound_curve));
  }
  o["exponents"] = clist(prefix);
  o["trials"] = t.trials;
  o["samples"] = xs.size();
  o["failures"] = failures;
  o["worst_log_margin"] = num(worst_margin);
  o["passed"] = failures == 0;
  return o;
}

json run_expoly(TaskContext& ctx, const ExpolyTask& t) {
  std::vector<ExpPolyTerm> terms;
  for (const auto& s : t.terms) terms.push_back({Polynomial(s.coefficients), s.exponent});
  const ExpPolynomial p(std::move(terms));
  const Direction alpha = Direction::from_angle(t.alpha);
  std::vector<cplx> seq;
  if (t.sequence) {
    seq = *t.sequence;
  } else {
    seq = sparse_subsequence(ctx.scenario.exponents_for(ctx.task), std::span<const Direction>(&alpha, 1),
                             t.sequence_count)
              .points();
  }

  json o;
  o["sequence"] = clist(seq);
  if (p.is_zero()) {
    o["membership"] = json{{"verdict", to_string(MembershipVerdict::zero_element)}};
    return o;
  }
  const AngleBound lb = lower_bound_in_angle(p, alpha, t.delta, t.eps);
  const double radius = t.radius.value_or(lb.radius);
  const ZeroFreeReport z = zero_free_angle_check(p, alpha, t.delta, t.eps, radius, t.grid);
  const MembershipReport m = membership_contradiction(p, seq, alpha);

  json b;
  b["leading_exponent"] = cnum(lb.split.leading.exponent);
  b["gap"] = num(lb.split.gap);
  b["c_eps"] = num(lb.c_eps);
  b["radius"] = num(lb.radius);
  o["lower_bound"] = b;

  json zf;
  zf["radius"] = num(z.radius);
  zf["certified_radius"] = num(z.certified_radius);
  zf["samples"] = z.samples;
  zf["min_abs"] = num(z.min_abs);
  zf["min_location"] = cnum(z.min_location);
  zf["min_normalized"] = num(z.min_normalized);
  zf["min_normalized_location"] = cnum(z.min_normalized_location);
  zf["failures"] = z.failures.size();
  zf["passed"] = z.passed;
  o["zero_free"] = zf;

  json mo;
  mo["verdict"] = to_string(m.verdict);
  mo["eps"] = num(m.bound->eps);
  mo["delta"] = num(m.bound->delta);
  mo["radius"] = num(m.bound->radius);
  mo["in_angle_beyond_radius"] = m.in_angle_beyond_radius;
  mo["certified_count"] = m.certified_count;
  if (m.first_index) {
    mo["first_index"] = *m.first_index;
    mo["first_point"] = cnum(m.first_point);
    mo["first_log_abs"] = num(m.first_log_abs);
    mo["first_log_bound"] = num(m.first_log_bound);
  }
  o["membership"] = mo;

  if (ctx.task.emit_plot) {
    std::vector<std::pair<double, double>> lp, lbnd;
    const double outer = 4.0 * radius + 10.0;
    for (int i = 1; i <= 200; ++i) {
      const double x = radius + (outer - radius) * i / 200.0;
      const cplx zz = std::polar(x, alpha.angle());
      lp.emplace_back(x, p.log_abs(zz));
      lbnd.emplace_back(x, lb.log_bound(zz));
    }
    ctx.plot("log_abs_p", std::move(lp));
    ctx.plot("log_bound", std::move(lbnd));
  }
  return o;
}

struct Executed {
  TaskOutcome outcome;
  json result;
};

Executed execute(const Scenario& s, std::size_t index, std::uint64_t seed) {
  const Task& task = s.tasks[index];
  Executed ex;
  ex.outcome.index = index;
  ex.outcome.kind = task_kind(task.body);
  ex.outcome.id = task.id;
  TaskContext ctx{s, task, seed + index, ex.outcome.plots};
  const auto start = std::chrono::steady_clock::now();
  auto record = [&](TaskErrorKind k, const char* what) {
    ex.outcome.error = k;
    ex.outcome.error_message = what;
    ex.outcome.plots.clear();
    ex.result = nullptr;
  };
  try {
    ex.result = std::visit(
        [&](const auto& b) -> json {
          using B = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<B, CriterionTask>) return run_criterion(ctx, b);
          else if constexpr (std::is_same_v<B, SolveTask>) return run_solve(ctx, b);
          else if constexpr (std::is_same_v<B, CrudeTask>) return run_crude(ctx, b);
          else if constexpr (std::is_same_v<B, ObstructionTask>) return run_obstruction(ctx, b);
          else if constexpr (std::is_same_v<B, GrowthTask>) return run_growth(ctx, b);
          else return run_expoly(ctx, b);
        },
        task.body);
  } catch (const ResourceError& e) {
    record(TaskErrorKind::resource, e.what());
  } catch (const PreconditionError& e) {
    record(TaskErrorKind::precondition, e.what());
  } catch (const ConfigurationError& e) {
    record(TaskErrorKind::configuration, e.what());
  } catch (const DomainError& e) {
    record(TaskErrorKind::domain, e.what());
  } catch (const std::exception& e) {
    record(TaskErrorKind::internal, e.what());
  }
  ex.outcome.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ex.outcome.result_json = ex.result.dump();
  return ex;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

RunResult run_scenario(const Scenario& s, const RunOptions& opts) {
  std::vector<Executed> done(s.tasks.size());
  if (opts.parallel) {
    std::vector<std::future<Executed>> futures;
    for (std::size_t i = 0; i < s.tasks.size(); ++i)
      futures.push_back(std::async(std::launch::async, execute, std::cref(s), i, opts.seed));
    for (std::size_t i = 0; i < futures.size(); ++i) done[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < s.tasks.size(); ++i) done[i] = execute(s, i, opts.seed);
  }

  RunResult out;
  json tasks = json::array();
  bool resource = false, failed = false;
  for (Executed& ex : done) {
    json t;
    t["index"] = ex.outcome.index;
    t["kind"] = ex.outcome.kind;
    if (!ex.outcome.id.empty()) t["id"] = ex.outcome.id;
    if (ex.outcome.error == TaskErrorKind::none) {
      t["status"] = "completed";
      t["result"] = std::move(ex.result);
    } else {
      t["status"] = "error";
      t["error"] = json{{"type", to_string(ex.outcome.error)}, {"message", ex.outcome.error_message}};
      failed = true;
      resource = resource || ex.outcome.error == TaskErrorKind::resource;
    }
    tasks.push_back(std::move(t));
    out.outcomes.push_back(std::move(ex.outcome));
  }
  json report;
  report["schema"] = kReportSchema;
  report["version"] = library_version();
  report["scenario"] = s.name;
  report["seed"] = opts.seed;
  report["tasks"] = std::move(tasks);
  out.report = report.dump(2) + "\n";
  out.exit_code = resource ? 4 : failed ? 1 : 0;
  return out;
}

void write_outputs(const std::string& out_dir, const Scenario& s, const RunOptions& opts, const RunResult& r) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  auto write = [&](const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << text;
  };
  write(dir / "report.json", r.report);

  json meta;
  meta["schema"] = "expinterp.report-meta/1";
  meta["version"] = library_version();
  meta["scenario"] = s.name;
  meta["seed"] = opts.seed;
  meta["parallel"] = opts.parallel;
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  meta["written_at"] = stamp;
  json timings = json::array();
  for (const TaskOutcome& o : r.outcomes) timings.push_back(o.elapsed_seconds);
  meta["task_seconds"] = timings;
  write(dir / "report.meta.json", meta.dump(2) + "\n");

  for (const TaskOutcome& o : r.outcomes) {
    for (const PlotCurve& c : o.plots) {
      std::string text = "x,value\n";
      for (const auto& [x, v] : c.points) text += format_number(x) + "," + format_number(v) + "\n";
      write(dir / ("task" + std::to_string(o.index) + "_" + c.name + ".csv"), text);
    }
  }
}

}  // namespace expinterp
