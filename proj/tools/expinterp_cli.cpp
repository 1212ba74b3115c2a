#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "expinterp/runner.hpp"
#include "expinterp/scenario.hpp"

namespace {

constexpr const char* kOutDirEnv = "EXPINTERP_OUT_DIR";

int exit_code_for(const std::vector<expinterp::Diagnostic>& diags) {
  using expinterp::DiagnosticKind;
  bool resource_only = true;
  for (const auto& d : diags) {
    if (d.kind == DiagnosticKind::syntax) return 2;
    if (d.kind != DiagnosticKind::resource) resource_only = false;
  }
  return resource_only ? 4 : 3;
}

void print(const std::vector<expinterp::Diagnostic>& diags) {
  for (const auto& d : diags) std::cerr << d.format() << "\n";
}

// Loads and validates; returns the scenario or sets `code`.
std::optional<expinterp::Scenario> load(const std::string& path, int& code) {
  expinterp::ParseResult parsed = expinterp::load_scenario(path);
  std::vector<expinterp::Diagnostic> diags = parsed.diagnostics;
  if (parsed.scenario) {
    auto more = expinterp::validate_scenario(*parsed.scenario);
    diags.insert(diags.end(), more.begin(), more.end());
  }
  if (!diags.empty()) {
    print(diags);
    code = exit_code_for(diags);
    return std::nullopt;
  }
  code = 0;
  return parsed.scenario;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpolation by sums of exponentials on systems of rays"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  bool parallel = false;
  std::uint64_t seed = 0;

  auto* run = app.add_subcommand("run", "Run every task of a scenario and write the report");
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  run->add_option("--out", out_dir, std::string("Output directory (default: $") + kOutDirEnv + " or ./expinterp-out)");
  run->add_flag("--parallel", parallel, "Run tasks concurrently; report order is unchanged");
  run->add_option("--seed", seed, "Base seed; task i uses seed + i");

  auto* validate = app.add_subcommand("validate", "Check a scenario without running it");
  validate->add_option("scenario", scenario_path, "Scenario file")->required();

  app.add_subcommand("version", "Print the version");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("version")) {
    std::cout << "expinterp " << expinterp::library_version() << "\n";
    return 0;
  }

  int code = 0;
  const auto scenario = load(scenario_path, code);
  if (app.got_subcommand("validate")) {
    if (code == 0) std::cout << "ok: no diagnostics\n";
    return code;
  }
  if (!scenario) return code;

  if (out_dir.empty()) {
    const char* env = std::getenv(kOutDirEnv);
    out_dir = env && *env ? env : "expinterp-out";
  }
  const expinterp::RunOptions opts{seed, parallel};
  const expinterp::RunResult result = expinterp::run_scenario(*scenario, opts);
  try {
    expinterp::write_outputs(out_dir, *scenario, opts, result);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  for (const auto& o : result.outcomes) {
    std::cout << "task " << o.index << " " << o.kind << (o.id.empty() ? "" : " (" + o.id + ")") << ": "
              << (o.error == expinterp::TaskErrorKind::none ? "completed"
                                                            : to_string(o.error) + " error: " + o.error_message)
              << "\n";
  }
  std::cout << "report: " << out_dir << "/report.json\n";
  return result.exit_code;
}
