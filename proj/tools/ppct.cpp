// ppct: run a configured problem, a vortex convergence study, or the quick invariant suite.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ppct/cli.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

int cmd_run(const std::string& config_path) {
  ppct::RunPlan plan;
  try {
    plan = ppct::load_config(config_path);
  } catch (const ppct::ConfigurationError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kUsageError;
  }
  const std::string diag = plan.output.out_dir + "/diagnostics.dat";
  try {
    const ppct::RunOutcome out = ppct::execute_plan(plan);
    for (const std::string& w : out.result.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    std::printf("%s: %zu steps, %zu snapshots in %s\n", plan.problem_name.c_str(),
                out.result.records.size(), out.snapshot_paths.size(), plan.output.out_dir.c_str());
    return 0;
  } catch (const ppct::ConfigurationError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "run failed: %s\ndiagnostics: %s\n", e.what(), diag.c_str());
    return kRuntimeError;
  }
}

int cmd_convergence(const std::string& problem, double mu, const std::vector<int>& grids, double q,
                    double t_end, double cfl) {
  if (problem != "vortex") {
    std::fprintf(stderr, "convergence: only --problem vortex has an exact solution\n");
    return kUsageError;
  }
  if (!(q > 2.0) || (cfl != 0.0 && (!(cfl > 0.0) || cfl > 2.0 / q)) || grids.empty()) {
    std::fprintf(stderr, "convergence: need q > 2, cfl in (0, 2/q] and at least one grid\n");
    return kUsageError;
  }
  try {
    const ppct::ConvergenceTable t = ppct::vortex_convergence(mu, grids, q, t_end, cfl);
    std::fputs(ppct::format_table(t).c_str(), stdout);
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "convergence failed: %s\n", e.what());
    return kRuntimeError;
  }
}

int cmd_check() {
  int failed = 0;
  for (const ppct::CheckResult& r : ppct::run_checks()) {
    std::printf("%s  %s  (%s)\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    failed += r.passed ? 0 : 1;
  }
  return failed == 0 ? 0 : kRuntimeError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positivity-preserving constrained-transport MHD solver"};
  app.require_subcommand(1);

  std::string config;
  auto* run = app.add_subcommand("run", "Run a problem from a key = value configuration file");
  run->add_option("--config", config, "Configuration file")->required();

  std::string problem = "vortex";
  double mu = 1.0, q = 3.0, t_end = 0.05, cfl = 0.0;
  std::vector<int> grids{64, 128, 256};
  auto* conv = app.add_subcommand("convergence", "Grid convergence study against the exact vortex");
  conv->add_option("--problem", problem, "Problem name")->capture_default_str();
  conv->add_option("--mu", mu, "Vortex magnetic strength")->capture_default_str();
  conv->add_option("--grids", grids, "Comma separated grid sizes")->delimiter(',')->capture_default_str();
  conv->add_option("--q", q, "Positivity parameter q > 2")->capture_default_str();
  conv->add_option("--t-end", t_end, "Final time")->capture_default_str();
  conv->add_option("--cfl", cfl, "CFL number (default 2/q)");

  auto* check = app.add_subcommand("check", "Run the quick invariant suite on tiny grids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  if (*run) return cmd_run(config);
  if (*conv) return cmd_convergence(problem, mu, grids, q, t_end, cfl);
  if (*check) return cmd_check();
  return kUsageError;
}
