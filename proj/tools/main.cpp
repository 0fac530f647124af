#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"

using namespace mole::cli;

int main(int argc, char** argv) {
  CLI::App app{"Bi-objective local search: MOLE, MOGSA, landscape grids and benchmarks"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run MOLE or MOGSA on a test problem");
  run_cmd->add_option("--problem", run.problem, "bisphere, aspar or birosenbrock")->required();
  run_cmd->add_option("--param", run.params, "Problem parameter key=value (dim, c1, c2, ...)");
  run_cmd->add_option("--dim", run.dim, "Decision space dimension");
  run_cmd->add_option("--algo", run.algo, "mole or mogsa")
      ->check(CLI::IsMember({"mole", "mogsa"}));
  run_cmd->add_option("--seed", run.seed, "Random seed");
  run_cmd->add_option("--budget", run.budget, "Evaluation budget (default 1e5 * dim)");
  run_cmd->add_option("--config", run.config_file, "key=value configuration file");
  run_cmd->add_option("--set", run.overrides, "Configuration override key=value");
  run_cmd->add_option("--start", run.start, "Start point, comma separated");
  run_cmd->add_option("--gradients", run.gradients, "fd or analytic")
      ->check(CLI::IsMember({"fd", "analytic"}));
  run_cmd->add_option("--out", run.out, "Output directory");
  run_cmd->add_option("--reference-hv", run.reference_hv,
                      "Reference normalized hypervolume; enables targets.csv");

  PlotOptions plot;
  auto* plot_cmd = app.add_subcommand("plot-data", "Compute a gradient-field landscape grid");
  plot_cmd->add_option("--problem", plot.problem, "Two-dimensional test problem")->required();
  plot_cmd->add_option("--param", plot.params, "Problem parameter key=value");
  plot_cmd->add_option("--res", plot.res, "Grid resolution NXxNY");
  plot_cmd->add_option("--lower", plot.lower, "Lower grid corner a,b (default: problem box)");
  plot_cmd->add_option("--upper", plot.upper, "Upper grid corner a,b (default: problem box)");
  plot_cmd->add_option("--variant", plot.variant, "Gradient variant ch, n or gm")
      ->check(CLI::IsMember({"ch", "n", "gm"}));
  plot_cmd->add_option("--eps", plot.eps, "Gradient length treated as vanishing");
  plot_cmd->add_option("--gradients", plot.gradients, "fd or analytic")
      ->check(CLI::IsMember({"fd", "analytic"}));
  plot_cmd->add_option("--out", plot.out, "Output CSV (default <outdir>/landscape.csv)");
  plot_cmd->add_flag("--verify", plot.verify, "Re-read the CSV and check the height recurrence");

  BenchCliOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite with hypervolume targets");
  bench_cmd->add_option("--suite", bench.suite, "Suite file")->required();
  bench_cmd->add_option("--repetitions", bench.repetitions, "Runs per suite line");
  bench_cmd->add_option("--jobs", bench.jobs, "Worker threads");
  bench_cmd->add_option("--budget-per-dim", bench.budget_per_dim, "Budget per dimension");
  bench_cmd->add_option("--gradients", bench.gradients, "fd or analytic")
      ->check(CLI::IsMember({"fd", "analytic"}));
  bench_cmd->add_option("--config", bench.config_file, "key=value configuration file");
  bench_cmd->add_option("--set", bench.overrides, "Configuration override key=value");
  bench_cmd->add_option("--out", bench.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*run_cmd) return cmd_run(run);
  if (*plot_cmd) return cmd_plot_data(plot);
  return cmd_bench(bench);
}
