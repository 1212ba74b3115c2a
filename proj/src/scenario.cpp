#include "expinterp/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "expinterp/errors.hpp"
#include "expinterp/expoly.hpp"

namespace expinterp {

using json = nlohmann::ordered_json;

namespace {

struct SchemaError {
  std::string path;
  std::string message;
};

[[noreturn]] void fail(const std::string& path, const std::string& message) { throw SchemaError{path, message}; }

std::string join(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string join(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

// Reads an object while tracking which keys were consumed, so that unknown
// keys (typos) are reported instead of silently ignored.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  const json& at(const std::string& key) {
    if (!j_.contains(key)) fail(path_, "missing required field \"" + key + "\"");
    used_.insert(key);
    return j_.at(key);
  }
  const json* find(const std::string& key) {
    if (!j_.contains(key)) return nullptr;
    used_.insert(key);
    return &j_.at(key);
  }
  std::string path(const std::string& key) const { return join(path_, key); }
  const std::string& path() const { return path_; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key())) fail(join(path_, it.key()), "unknown field \"" + it.key() + "\"");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

double read_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

std::size_t read_count(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

int read_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

bool read_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

std::string read_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

// [re, im] or a plain real number.
cplx read_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {read_number(j, path), 0.0};
  if (!j.is_array() || j.size() != 2) fail(path, "expected a complex number [re, im] or a real number");
  return {read_number(j[0], join(path, 0)), read_number(j[1], join(path, 1))};
}

template <class T, class F>
std::vector<T> read_list(const json& j, const std::string& path, F item) {
  if (!j.is_array()) fail(path, "expected a list");
  std::vector<T> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(item(j[i], join(path, i)));
  return out;
}

std::vector<cplx> read_complex_list(const json& j, const std::string& path) {
  return read_list<cplx>(j, path, read_complex);
}
std::vector<double> read_number_list(const json& j, const std::string& path) {
  return read_list<double>(j, path, read_number);
}

template <class T>
void read_opt(ObjectReader& r, const std::string& key, T& out, T (*reader)(const json&, const std::string&)) {
  if (const json* v = r.find(key)) out = reader(*v, r.path(key));
}

json write_complex(cplx z) { return json::array({z.real(), z.imag()}); }
json write_complex_list(const std::vector<cplx>& zs) {
  json a = json::array();
  for (cplx z : zs) a.push_back(write_complex(z));
  return a;
}

// ---- exponent set

Generator read_generator(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  const std::string kind = read_string(r.at("kind"), r.path("kind"));
  Generator g;
  g.scale = read_complex(r.at("scale"), r.path("scale"));
  if (kind == "arithmetic") {
    g.kind = GeneratorKind::arithmetic;
    std::string range = "positive";
    read_opt<std::string>(r, "index_range", range, read_string);
    if (range == "positive") g.index_range = IndexRange::positive;
    else if (range == "nonzero") g.index_range = IndexRange::nonzero;
    else fail(r.path("index_range"), "expected \"positive\" or \"nonzero\"");
  } else if (kind == "geometric") {
    g.kind = GeneratorKind::geometric;
    g.ratio = read_number(r.at("ratio"), r.path("ratio"));
  } else {
    fail(r.path("kind"), "unknown generator kind \"" + kind + "\" (expected arithmetic or geometric)");
  }
  r.finish();
  return g;
}

ExponentSet read_exponent_set(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  ExponentSet s;
  if (const json* v = r.find("explicit")) s.explicit_points = read_complex_list(*v, r.path("explicit"));
  if (const json* v = r.find("generators")) s.generators = read_list<Generator>(*v, r.path("generators"), read_generator);
  r.finish();
  return s;
}

json write_exponent_set(const ExponentSet& s) {
  json gens = json::array();
  for (const Generator& g : s.generators) {
    json o;
    o["kind"] = g.kind == GeneratorKind::arithmetic ? "arithmetic" : "geometric";
    o["scale"] = write_complex(g.scale);
    if (g.kind == GeneratorKind::arithmetic)
      o["index_range"] = g.index_range == IndexRange::positive ? "positive" : "nonzero";
    else
      o["ratio"] = g.ratio;
    gens.push_back(o);
  }
  json o;
  o["explicit"] = write_complex_list(s.explicit_points);
  o["generators"] = gens;
  return o;
}

// ---- node set

ParamRule read_params(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  const std::string kind = read_string(r.at("kind"), r.path("kind"));
  ParamRule out;
  if (kind == "arithmetic") {
    ArithmeticParams a;
    read_opt<double>(r, "first", a.first, read_number);
    read_opt<double>(r, "step", a.step, read_number);
    read_opt<int>(r, "multiplicity", a.multiplicity, read_int);
    out = a;
  } else if (kind == "explicit") {
    ExplicitParams e;
    e.values = read_number_list(r.at("values"), r.path("values"));
    if (const json* v = r.find("multiplicities"))
      e.multiplicities = read_list<int>(*v, r.path("multiplicities"), read_int);
    else
      e.multiplicities.assign(e.values.size(), 1);
    out = e;
  } else {
    fail(r.path("kind"), "unknown parameter rule \"" + kind + "\" (expected arithmetic or explicit)");
  }
  r.finish();
  return out;
}

json write_params(const ParamRule& p) {
  json o;
  if (const auto* a = std::get_if<ArithmeticParams>(&p)) {
    o["kind"] = "arithmetic";
    o["first"] = a->first;
    o["step"] = a->step;
    o["multiplicity"] = a->multiplicity;
  } else {
    const auto& e = std::get<ExplicitParams>(p);
    o["kind"] = "explicit";
    o["values"] = e.values;
    o["multiplicities"] = e.multiplicities;
  }
  return o;
}

Node read_node(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  Node n;
  n.point = read_complex(r.at("point"), r.path("point"));
  read_opt<int>(r, "multiplicity", n.multiplicity, read_int);
  r.finish();
  return n;
}

json write_node(cplx point, int multiplicity) {
  json o;
  o["point"] = write_complex(point);
  o["multiplicity"] = multiplicity;
  return o;
}

NodeSet read_node_set(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  NodeSet s;
  if (const json* v = r.find("rays")) {
    s.rays = read_list<RayPortion>(*v, r.path("rays"), [](const json& rj, const std::string& rp) {
      ObjectReader rr(rj, rp);
      cplx origin{};
      if (const json* o = rr.find("origin")) origin = read_complex(*o, rr.path("origin"));
      const double angle = read_number(rr.at("angle"), rr.path("angle"));
      ParamRule params = read_params(rr.at("params"), rr.path("params"));
      rr.finish();
      return RayPortion{Ray::make(origin, angle), std::move(params)};
    });
  }
  if (const json* v = r.find("off_ray")) {
    s.off_ray = read_list<OffRayNode>(*v, r.path("off_ray"), [](const json& nj, const std::string& np) {
      const Node n = read_node(nj, np);
      return OffRayNode{n.point, n.multiplicity};
    });
  }
  r.finish();
  return s;
}

json write_node_set(const NodeSet& s) {
  json rays = json::array();
  for (const RayPortion& rp : s.rays) {
    json o;
    o["origin"] = write_complex(rp.ray.origin);
    o["angle"] = rp.ray.angle;
    o["params"] = write_params(rp.params);
    rays.push_back(o);
  }
  json off = json::array();
  for (const OffRayNode& n : s.off_ray) off.push_back(write_node(n.point, n.multiplicity));
  json o;
  o["rays"] = rays;
  o["off_ray"] = off;
  return o;
}

ProblemSpec read_problem(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  ProblemSpec p;
  p.nodes = read_list<Node>(r.at("nodes"), r.path("nodes"), read_node);
  p.exponents = read_complex_list(r.at("exponents"), r.path("exponents"));
  p.data = read_complex_list(r.at("data"), r.path("data"));
  r.finish();
  return p;
}

json write_problem(const ProblemSpec& p) {
  json nodes = json::array();
  for (const Node& n : p.nodes) nodes.push_back(write_node(n.point, n.multiplicity));
  json o;
  o["nodes"] = nodes;
  o["exponents"] = write_complex_list(p.exponents);
  o["data"] = write_complex_list(p.data);
  return o;
}

// ---- tasks

TaskBody read_body(const std::string& kind, ObjectReader& r) {
  if (kind == "criterion") {
    CriterionTask t;
    read_opt<std::size_t>(r, "prefix", t.prefix, read_count);
    read_opt<double>(r, "angle_tolerance", t.angle_tolerance, read_number);
    read_opt<double>(r, "projection_tolerance", t.projection_tolerance, read_number);
    return t;
  }
  if (kind == "solve") {
    SolveTask t;
    if (const json* v = r.find("problem")) t.problem = read_problem(*v, r.path("problem"));
    read_opt<std::size_t>(r, "size", t.size, read_count);
    read_opt<std::size_t>(r, "trials", t.trials, read_count);
    read_opt<double>(r, "data_bound", t.data_bound, read_number);
    read_opt<double>(r, "tolerance", t.tolerance, read_number);
    return t;
  }
  if (kind == "crude") {
    CrudeTask t;
    t.problem = read_problem(r.at("problem"), r.path("problem"));
    t.delta = read_number_list(r.at("delta"), r.path("delta"));
    read_opt<double>(r, "tolerance", t.tolerance, read_number);
    return t;
  }
  if (kind == "obstruction") {
    ObstructionTask t;
    t.mu_l = read_complex(r.at("mu_l"), r.path("mu_l"));
    t.mu_k = read_complex(r.at("mu_k"), r.path("mu_k"));
    read_opt<std::size_t>(r, "count", t.count, read_count);
    read_opt<std::size_t>(r, "trials", t.trials, read_count);
    return t;
  }
  if (kind == "growth") {
    GrowthTask t;
    std::string mode = "bound";
    read_opt<std::string>(r, "mode", mode, read_string);
    if (mode == "bound") t.mode = GrowthMode::bound;
    else if (mode == "failure") t.mode = GrowthMode::failure;
    else fail(r.path("mode"), "expected \"bound\" or \"failure\"");
    read_opt<double>(r, "eps", t.eps, read_number);
    read_opt<std::size_t>(r, "count", t.count, read_count);
    read_opt<std::size_t>(r, "trials", t.trials, read_count);
    read_opt<double>(r, "decay", t.decay, read_number);
    read_opt<double>(r, "x_max", t.x_max, read_number);
    read_opt<std::size_t>(r, "samples", t.samples, read_count);
    if (const json* v = r.find("nodes")) t.nodes = read_number_list(*v, r.path("nodes"));
    return t;
  }
  if (kind == "expoly-certify") {
    ExpolyTask t;
    t.terms = read_list<ExpolyTermSpec>(r.at("terms"), r.path("terms"), [](const json& tj, const std::string& tp) {
      ObjectReader tr(tj, tp);
      ExpolyTermSpec s;
      s.coefficients = read_complex_list(tr.at("coefficients"), tr.path("coefficients"));
      s.exponent = read_complex(tr.at("exponent"), tr.path("exponent"));
      tr.finish();
      return s;
    });
    read_opt<double>(r, "alpha", t.alpha, read_number);
    read_opt<double>(r, "delta", t.delta, read_number);
    read_opt<double>(r, "eps", t.eps, read_number);
    if (const json* v = r.find("radius")) t.radius = read_number(*v, r.path("radius"));
    read_opt<std::size_t>(r, "grid", t.grid, read_count);
    if (const json* v = r.find("sequence")) t.sequence = read_complex_list(*v, r.path("sequence"));
    read_opt<std::size_t>(r, "sequence_count", t.sequence_count, read_count);
    return t;
  }
  fail(r.path("kind"),
       "unknown task kind \"" + kind + "\" (expected criterion, solve, crude, obstruction, growth or expoly-certify)");
}

Task read_task(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  Task t;
  const std::string kind = read_string(r.at("kind"), r.path("kind"));
  read_opt<std::string>(r, "id", t.id, read_string);
  read_opt<bool>(r, "emit_plot", t.emit_plot, read_bool);
  if (const json* v = r.find("exponent_set")) t.exponent_set = read_exponent_set(*v, r.path("exponent_set"));
  if (const json* v = r.find("node_set")) t.node_set = read_node_set(*v, r.path("node_set"));
  t.body = read_body(kind, r);
  r.finish();
  return t;
}

json write_task(const Task& t) {
  json o;
  o["kind"] = task_kind(t.body);
  if (!t.id.empty()) o["id"] = t.id;
  o["emit_plot"] = t.emit_plot;
  if (t.exponent_set) o["exponent_set"] = write_exponent_set(*t.exponent_set);
  if (t.node_set) o["node_set"] = write_node_set(*t.node_set);
  std::visit(
      [&](const auto& b) {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, CriterionTask>) {
          o["prefix"] = b.prefix;
          o["angle_tolerance"] = b.angle_tolerance;
          o["projection_tolerance"] = b.projection_tolerance;
        } else if constexpr (std::is_same_v<B, SolveTask>) {
          if (b.problem) o["problem"] = write_problem(*b.problem);
          o["size"] = b.size;
          o["trials"] = b.trials;
          o["data_bound"] = b.data_bound;
          o["tolerance"] = b.tolerance;
        } else if constexpr (std::is_same_v<B, CrudeTask>) {
          o["problem"] = write_problem(b.problem);
          o["delta"] = b.delta;
          o["tolerance"] = b.tolerance;
        } else if constexpr (std::is_same_v<B, ObstructionTask>) {
          o["mu_l"] = write_complex(b.mu_l);
          o["mu_k"] = write_complex(b.mu_k);
          o["count"] = b.count;
          o["trials"] = b.trials;
        } else if constexpr (std::is_same_v<B, GrowthTask>) {
          o["mode"] = b.mode == GrowthMode::bound ? "bound" : "failure";
          o["eps"] = b.eps;
          o["count"] = b.count;
          o["trials"] = b.trials;
          o["decay"] = b.decay;
          o["x_max"] = b.x_max;
          o["samples"] = b.samples;
          o["nodes"] = b.nodes;
        } else {
          json terms = json::array();
          for (const auto& s : b.terms) {
            json to;
            to["coefficients"] = write_complex_list(s.coefficients);
            to["exponent"] = write_complex(s.exponent);
            terms.push_back(to);
          }
          o["terms"] = terms;
          o["alpha"] = b.alpha;
          o["delta"] = b.delta;
          o["eps"] = b.eps;
          if (b.radius) o["radius"] = *b.radius;
          o["grid"] = b.grid;
          if (b.sequence) o["sequence"] = write_complex_list(*b.sequence);
          o["sequence_count"] = b.sequence_count;
        }
      },
      t.body);
  return o;
}

ResourceCaps read_caps(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  ResourceCaps c;
  read_opt<std::size_t>(r, "criterion_prefix", c.criterion_prefix, read_count);
  read_opt<std::size_t>(r, "solve_dimension", c.solve_dimension, read_count);
  read_opt<std::size_t>(r, "trials", c.trials, read_count);
  read_opt<std::size_t>(r, "exponent_count", c.exponent_count, read_count);
  read_opt<std::size_t>(r, "samples", c.samples, read_count);
  read_opt<std::size_t>(r, "grid", c.grid, read_count);
  r.finish();
  return c;
}

json write_caps(const ResourceCaps& c) {
  json o;
  o["criterion_prefix"] = c.criterion_prefix;
  o["solve_dimension"] = c.solve_dimension;
  o["trials"] = c.trials;
  o["exponent_count"] = c.exponent_count;
  o["samples"] = c.samples;
  o["grid"] = c.grid;
  return o;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

std::string task_kind(const TaskBody& body) {
  static const char* const names[] = {"criterion", "solve", "crude", "obstruction", "growth", "expoly-certify"};
  return names[body.index()];
}

std::string Diagnostic::format() const {
  static const char* const kinds[] = {"syntax", "schema", "validation", "resource"};
  return std::string(kinds[static_cast<int>(kind)]) + " error at " + (path.empty() ? "/" : path) + ": " + message;
}

ParseResult parse_scenario(std::string_view text) {
  ParseResult out;
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    std::string msg = e.what();
    if (const auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    out.diagnostics.push_back({DiagnosticKind::syntax, std::to_string(line) + ":" + std::to_string(col), msg});
    return out;
  }
  try {
    ObjectReader r(j, "");
    const std::string schema = read_string(r.at("schema"), "/schema");
    if (schema != kScenarioSchema)
      fail("/schema", "unsupported schema \"" + schema + "\" (expected \"" + std::string(kScenarioSchema) + "\")");
    Scenario s;
    s.name = read_string(r.at("name"), "/name");
    s.exponent_set = read_exponent_set(r.at("exponent_set"), "/exponent_set");
    if (const json* v = r.find("node_set")) s.node_set = read_node_set(*v, "/node_set");
    s.tasks = read_list<Task>(r.at("tasks"), "/tasks", read_task);
    if (const json* v = r.find("caps")) s.caps = read_caps(*v, "/caps");
    r.finish();
    out.scenario = std::move(s);
  } catch (const SchemaError& e) {
    out.diagnostics.push_back({DiagnosticKind::schema, e.path, e.message});
  }
  return out;
}

ParseResult load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ParseResult out;
    out.diagnostics.push_back({DiagnosticKind::syntax, path, "cannot open scenario file"});
    return out;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  json o;
  o["schema"] = kScenarioSchema;
  o["name"] = s.name;
  o["exponent_set"] = write_exponent_set(s.exponent_set);
  o["node_set"] = write_node_set(s.node_set);
  json tasks = json::array();
  for (const Task& t : s.tasks) tasks.push_back(write_task(t));
  o["tasks"] = tasks;
  o["caps"] = write_caps(s.caps);
  return o.dump(2) + "\n";
}

// ---- validation

namespace {

class Collector {
 public:
  explicit Collector(const ResourceCaps& caps) : caps(caps) {}
  const ResourceCaps& caps;
  std::vector<Diagnostic> out;

  void error(const std::string& path, const std::string& msg) { out.push_back({DiagnosticKind::validation, path, msg}); }
  void positive(const std::string& path, double v, const std::string& what) {
    if (!(v > 0.0)) error(path, what + " must be positive");
  }
  void at_least_one(const std::string& path, std::size_t v, const std::string& what) {
    if (v < 1) error(path, what + " must be at least 1");
  }
  void cap(const std::string& path, std::size_t v, std::size_t limit, const std::string& what) {
    if (v > limit)
      out.push_back({DiagnosticKind::resource, path,
                     what + " " + std::to_string(v) + " exceeds the cap " + std::to_string(limit)});
  }
};

void check_exponent_set(Collector& c, const ExponentSet& s, const std::string& path) {
  for (std::size_t i = 0; i < s.generators.size(); ++i) {
    try {
      s.generators[i].validate();
    } catch (const std::exception& e) {
      c.error(join(join(path, "generators"), i), e.what());
    }
  }
}

void check_node_set(Collector& c, const NodeSet& s, const std::string& path, std::size_t prefix) {
  for (const std::string& d : s.diagnostics(prefix)) c.error(path, d);
}

void check_problem(Collector& c, const ProblemSpec& p, const std::string& path, bool square) {
  std::size_t rows = 0;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (p.nodes[i].multiplicity < 1) c.error(join(join(path, "nodes"), i), "multiplicity must be at least 1");
    else rows += static_cast<std::size_t>(p.nodes[i].multiplicity);
    for (std::size_t k = i + 1; k < p.nodes.size(); ++k)
      if (p.nodes[i].point == p.nodes[k].point)
        c.error(join(path, "nodes"), "nodes " + std::to_string(i) + " and " + std::to_string(k) + " coincide");
  }
  for (std::size_t i = 0; i < p.exponents.size(); ++i)
    for (std::size_t k = i + 1; k < p.exponents.size(); ++k)
      if (p.exponents[i] == p.exponents[k])
        c.error(join(path, "exponents"), "exponents " + std::to_string(i) + " and " + std::to_string(k) + " coincide");
  if (p.data.size() != rows)
    c.error(join(path, "data"), "expected " + std::to_string(rows) + " data values (sum of multiplicities), got " +
                                    std::to_string(p.data.size()));
  if (square && p.exponents.size() != rows)
    c.error(join(path, "exponents"), "expected " + std::to_string(rows) + " exponents (sum of multiplicities), got " +
                                         std::to_string(p.exponents.size()));
  c.cap(join(path, "exponents"), p.exponents.size(), c.caps.solve_dimension, "system dimension");
}

}  // namespace

std::vector<Diagnostic> validate_scenario(const Scenario& s) {
  Collector c(s.caps);
  check_exponent_set(c, s.exponent_set, "/exponent_set");

  std::size_t scenario_prefix = kDefaultCriterionPrefix;
  bool scenario_nodes_used = false;
  for (const Task& t : s.tasks) {
    if (t.node_set) continue;
    if (const auto* ct = std::get_if<CriterionTask>(&t.body)) {
      scenario_nodes_used = true;
      scenario_prefix = std::max(scenario_prefix, std::min(ct->prefix, s.caps.criterion_prefix));
    }
    if (const auto* st = std::get_if<SolveTask>(&t.body); st && !st->problem) scenario_nodes_used = true;
  }
  if (scenario_nodes_used) check_node_set(c, s.node_set, "/node_set", scenario_prefix);

  for (std::size_t i = 0; i < s.tasks.size(); ++i) {
    const Task& t = s.tasks[i];
    const std::string path = join("/tasks", i);
    if (t.exponent_set) check_exponent_set(c, *t.exponent_set, join(path, "exponent_set"));
    const ExponentSet& exps = s.exponents_for(t);

    std::visit(
        [&](const auto& b) {
          using B = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<B, CriterionTask>) {
            c.at_least_one(join(path, "prefix"), b.prefix, "prefix");
            c.cap(join(path, "prefix"), b.prefix, c.caps.criterion_prefix, "prefix");
            c.positive(join(path, "angle_tolerance"), b.angle_tolerance, "angle_tolerance");
            c.positive(join(path, "projection_tolerance"), b.projection_tolerance, "projection_tolerance");
            if (exps.bounded())
              c.error(path, "bounded exponent set cannot satisfy the limit-direction condition (i): it has no limit "
                            "directions at infinity");
            if (t.node_set) check_node_set(c, *t.node_set, join(path, "node_set"), b.prefix);
          } else if constexpr (std::is_same_v<B, SolveTask>) {
            c.positive(join(path, "tolerance"), b.tolerance, "tolerance");
            if (b.problem) {
              check_problem(c, *b.problem, join(path, "problem"), true);
            } else {
              c.at_least_one(join(path, "size"), b.size, "size");
              c.cap(join(path, "size"), b.size, c.caps.solve_dimension, "system dimension");
              c.at_least_one(join(path, "trials"), b.trials, "trials");
              c.cap(join(path, "trials"), b.trials, c.caps.trials, "trials");
              c.positive(join(path, "data_bound"), b.data_bound, "data_bound");
              if (exps.bounded())
                c.error(path, "generated solve needs an unbounded exponent set to draw a sparse subsequence from");
              if (t.node_set) check_node_set(c, *t.node_set, join(path, "node_set"), b.size);
            }
          } else if constexpr (std::is_same_v<B, CrudeTask>) {
            check_problem(c, b.problem, join(path, "problem"), false);
            c.positive(join(path, "tolerance"), b.tolerance, "tolerance");
            for (std::size_t k = 0; k < b.problem.nodes.size(); ++k)
              if (b.problem.nodes[k].multiplicity != 1)
                c.error(join(join(join(path, "problem"), "nodes"), k), "crude approximation needs simple nodes");
            if (b.delta.size() != b.problem.nodes.size())
              c.error(join(path, "delta"), "expected one delta per node");
            for (std::size_t k = 0; k < b.delta.size(); ++k)
              if (!(b.delta[k] >= 0.0)) c.error(join(join(path, "delta"), k), "delta must be non-negative");
            if (b.problem.exponents.size() > b.problem.nodes.size())
              c.error(join(join(path, "problem"), "exponents"), "more exponents than nodes");
          } else if constexpr (std::is_same_v<B, ObstructionTask>) {
            if (b.mu_l == b.mu_k) c.error(join(path, "mu_k"), "mu_l and mu_k must differ");
            c.at_least_one(join(path, "count"), b.count, "count");
            c.cap(join(path, "count"), 2 * b.count, c.caps.exponent_count, "exponent count");
            c.cap(join(path, "trials"), b.trials, c.caps.trials, "trials");
          } else if constexpr (std::is_same_v<B, GrowthTask>) {
            c.positive(join(path, "eps"), b.eps, "eps");
            c.at_least_one(join(path, "count"), b.count, "count");
            c.cap(join(path, "count"), b.count, c.caps.exponent_count, "exponent count");
            c.cap(join(path, "trials"), b.trials, c.caps.trials, "trials");
            if (b.mode == GrowthMode::bound) {
              c.positive(join(path, "x_max"), b.x_max, "x_max");
              c.positive(join(path, "decay"), b.decay, "decay");
              c.at_least_one(join(path, "samples"), b.samples, "samples");
              c.cap(join(path, "samples"), b.samples, c.caps.samples, "samples");
            } else {
              if (b.nodes.empty()) c.error(join(path, "nodes"), "failure mode needs at least one node");
              for (std::size_t k = 0; k < b.nodes.size(); ++k) {
                if (!(b.nodes[k] > 0.0)) c.error(join(join(path, "nodes"), k), "nodes must be positive");
                if (k > 0 && !(b.nodes[k] > b.nodes[k - 1]))
                  c.error(join(join(path, "nodes"), k), "nodes must be increasing");
              }
              c.cap(join(path, "nodes"), b.nodes.size(), c.caps.samples, "node count");
            }
            if (exps.bounded() && exps.explicit_points.size() < b.count)
              c.error(join(path, "count"), "exponent set has fewer than count points");
          } else {
            if (b.terms.empty()) c.error(join(path, "terms"), "at least one term required");
            for (std::size_t k = 0; k < b.terms.size(); ++k) {
              if (b.terms[k].coefficients.size() > kMaxPolynomialDegree + 1)
                c.error(join(join(path, "terms"), k), "polynomial degree exceeds the cap");
              for (std::size_t q = k + 1; q < b.terms.size(); ++q)
                if (b.terms[k].exponent == b.terms[q].exponent)
                  c.error(join(path, "terms"), "terms " + std::to_string(k) + " and " + std::to_string(q) +
                                                   " share an exponent");
            }
            c.positive(join(path, "eps"), b.eps, "eps");
            if (!(b.delta >= 0.0 && b.delta < kPi / 2.0)) c.error(join(path, "delta"), "delta must lie in [0, pi/2)");
            if (b.radius && !(*b.radius >= 0.0)) c.error(join(path, "radius"), "radius must be non-negative");
            c.at_least_one(join(path, "grid"), b.grid, "grid");
            c.cap(join(path, "grid"), b.grid, c.caps.grid, "grid");
            if (!b.sequence) {
              c.cap(join(path, "sequence_count"), b.sequence_count, c.caps.exponent_count, "sequence_count");
              if (exps.bounded())
                c.error(path, "no explicit sequence and the exponent set is bounded; no sparse subsequence exists");
            }
          }
        },
        t.body);
  }
  return c.out;
}

}  // namespace expinterp
