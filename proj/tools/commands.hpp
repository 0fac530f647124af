// Subcommand implementations behind the `mole` executable. Each returns the
// process exit code: 0 on success, 1 when some benchmark runs failed and 2
// for usage or configuration errors.

#ifndef MOLE_TOOLS_COMMANDS_HPP
#define MOLE_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mole::cli {

constexpr int kExitOk = 0;
constexpr int kExitPartialFailure = 1;
constexpr int kExitUsage = 2;

/// Output directory from MOLE_OUTPUT_DIR, or "mole_out".
std::string default_output_dir();

struct RunOptions {
  std::string problem;
  std::vector<std::string> params;  // key=value
  std::optional<std::size_t> dim;
  std::string algo = "mole";
  std::uint64_t seed = 1;
  std::optional<std::size_t> budget;
  std::string config_file;
  std::vector<std::string> overrides;  // key=value
  std::string start;                   // comma separated
  std::string gradients = "fd";
  std::string out;
  std::optional<double> reference_hv;
};

struct PlotOptions {
  std::string problem;
  std::vector<std::string> params;
  std::string res = "100x100";
  std::string lower;
  std::string upper;
  std::string variant = "gm";
  double eps = 1e-4;
  std::string gradients = "analytic";
  std::string out;
  bool verify = false;
};

struct BenchCliOptions {
  std::string suite;
  std::size_t repetitions = 1;
  std::size_t jobs = 1;
  std::size_t budget_per_dim = 100000;
  std::string gradients = "fd";
  std::string config_file;
  std::vector<std::string> overrides;
  std::string out;
};

int cmd_run(const RunOptions& opt);
int cmd_plot_data(const PlotOptions& opt);
int cmd_bench(const BenchCliOptions& opt);

}  // namespace mole::cli

#endif  // MOLE_TOOLS_COMMANDS_HPP
