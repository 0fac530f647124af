#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "mole/bench.hpp"
#include "mole/config.hpp"
#include "mole/io.hpp"
#include "mole/landscape.hpp"
#include "mole/mogsa.hpp"
#include "mole/mole.hpp"

namespace mole::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string default_output_dir() {
  const char* env = std::getenv("MOLE_OUTPUT_DIR");
  return env != nullptr && *env != '\0' ? env : "mole_out";
}

namespace {

std::map<std::string, std::string> to_map(const std::vector<std::string>& tokens) {
  std::map<std::string, std::string> out;
  for (const std::string& t : tokens) {
    auto [k, v] = split_key_value(t);
    out[k] = v;
  }
  return out;
}

KeyValues load_overrides(const std::string& file, const std::vector<std::string>& tokens) {
  KeyValues kv;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw MoleError(ErrorCode::InvalidConfig, "cannot read config file '" + file + "'");
    kv = parse_key_values(in);
  }
  for (const auto& [k, v] : to_map(tokens)) kv[k] = v;
  return kv;
}

Vec parse_point(const std::string& text, const char* what) {
  Vec out;
  std::stringstream ss(text);
  for (std::string t; std::getline(ss, t, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw MoleError(ErrorCode::InvalidConfig, fmt::format("{}: bad number '{}'", what, t));
    }
  }
  if (out.empty()) throw MoleError(ErrorCode::InvalidConfig, fmt::format("{}: empty", what));
  return out;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

ordered_json effective_config(const MoleConfig& m, const MogsaConfig& g) {
  return {
      {"descent.crit_gamma", m.descent.crit_gamma},
      {"descent.alpha_min", m.descent.alpha_min},
      {"descent.alpha_max", m.descent.alpha_max},
      {"descent.lambda", m.descent.lambda},
      {"descent.beta", m.descent.beta},
      {"descent.history", m.descent.history},
      {"descent.max_iter", m.descent.max_iter},
      {"explore.sigma_min", m.explore.sigma_min},
      {"explore.sigma_max", m.explore.sigma_max},
      {"explore.phi_max", m.explore.phi_max},
      {"explore.lambda", m.explore.lambda},
      {"explore.max_steps", m.explore.max_steps},
      {"postprocess.theta", m.postprocess.theta},
      {"postprocess.max_iterations", m.postprocess.max_iterations},
      {"postprocess.enabled", m.postprocess_enabled},
      {"postprocess.warmup", m.postprocess_warmup},
      {"mole.max_starting_points", m.max_starting_points},
      {"mole.max_sets", m.max_sets},
      {"mogsa.descent_step", g.descent_step},
      {"mogsa.explore_step", g.explore_step},
      {"mogsa.mog_eps", g.mog_eps},
      {"mogsa.max_descent_iter", g.max_descent_iter},
      {"mogsa.max_explore_iter", g.max_explore_iter},
      {"mogsa.max_rounds", g.max_rounds},
  };
}

ordered_json mole_section(const MoleRunReport& rep) {
  ordered_json sets = ordered_json::array();
  for (const SetProvenance& p : rep.provenance) {
    const EfficientSetModel* s = rep.archive.find(p.set_id);
    ordered_json j;
    j["set_id"] = p.set_id;
    j["nodes"] = s != nullptr ? s->size() : 0;
    j["start_index"] = p.start_index;
    j["parent_set"] = p.parent_set ? ordered_json(*p.parent_set) : ordered_json(nullptr);
    j["seed_point"] = p.seed;
    j["explore_evals"] = p.explore_evals;
    j["contributes_to_front"] = rep.archive.contributes_to_front(p.set_id);
    sets.push_back(std::move(j));
  }
  const GapSummary gap = hv_gap_summary(rep.archive);
  ordered_json pp;
  pp["passes"] = rep.postprocess_runs;
  pp["evals"] = rep.postprocess_evals;
  if (!rep.postprocess.empty()) {
    const PostProcessReport& last = rep.postprocess.back();
    pp["last_converged"] = last.converged;
    pp["last_iterations"] = last.iterations;
    pp["last_inserted"] = last.inserted;
    pp["last_skipped_descents"] = last.skipped_descents;
  }
  ordered_json j;
  j["set_count"] = rep.archive.size();
  j["total_nodes"] = rep.archive.total_nodes();
  j["front_size"] = rep.archive.nondominated().size();
  j["starting_points_consumed"] = rep.starting_points_consumed;
  j["successful_starts"] = rep.successful_starts;
  j["explore_calls"] = rep.explore_calls;
  j["archive_hits"] = rep.archive_hits;
  j["quarantined"] = rep.quarantine.size();
  j["max_sets_reached"] = rep.max_sets_reached;
  j["hv_gap"] = {{"total_gap", gap.total_gap},
                 {"max_hv", gap.max_hv},
                 {"normalized", gap.normalized()},
                 {"eligible_pairs", gap.eligible_pairs}};
  j["postprocess"] = pp;
  j["sets"] = sets;
  return j;
}

ordered_json mogsa_section(const MogsaArchive& a) {
  ordered_json j;
  j["termination"] = to_string(a.termination);
  j["rounds"] = a.rounds;
  j["visits"] = a.visited.size();
  j["efficient_points"] = a.efficient_points;
  return j;
}

template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const MoleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

int cmd_run(const RunOptions& opt) {
  return guarded([&] {
    auto params = to_map(opt.params);
    if (opt.dim) params["dim"] = std::to_string(*opt.dim);
    Mop mop = make_test_problem(opt.problem, params);
    if (opt.gradients == "fd") mop.without_gradients();
    const std::size_t dim = mop.dimension();
    const std::size_t budget = opt.budget.value_or(100000 * dim);
    if (budget == 0) throw MoleError(ErrorCode::InvalidConfig, "budget must be positive");
    mop.with_budget(budget);

    std::vector<Objectives> evaluations;
    if (opt.reference_hv) {
      mop.with_observer([&](std::span<const double>, const Objectives& f) {
        evaluations.push_back(f);
      });
    }

    const KeyValues kv = load_overrides(opt.config_file, opt.overrides);
    MoleConfig mc = MoleConfig::defaults_for(mop);
    MogsaConfig gc = MogsaConfig::defaults_for(diag(mop.bounds()));
    apply_overrides(kv, mc, gc);

    std::optional<Vec> start;
    if (!opt.start.empty()) {
      start = parse_point(opt.start, "--start");
      if (start->size() != dim) {
        throw MoleError(ErrorCode::DimensionMismatch,
                        fmt::format("--start has {} coordinates, problem has {}", start->size(), dim));
      }
    }

    const fs::path dir = opt.out.empty() ? default_output_dir() : opt.out;
    fs::create_directories(dir);

    ordered_json report;
    report["problem"] = mop.name();
    report["algo"] = opt.algo;
    report["dim"] = dim;
    report["seed"] = opt.seed;
    report["budget"] = budget;
    report["gradients"] = opt.gradients;
    report["start"] = start ? ordered_json(*start) : ordered_json(nullptr);
    report["config"] = effective_config(mc, gc);

    if (opt.algo == "mole") {
      mc.seed = opt.seed;
      if (start) {
        mc.source = StartSource::ExplicitList;
        mc.start_points = {*start};
      }
      const MoleRunReport rep = run_mole(mop, mc);
      report["evals_used"] = rep.evals_used;
      report["budget_exhausted"] = rep.budget_exhausted;
      report["mole"] = mole_section(rep);
      auto sets = open_out(dir / "sets.csv");
      write_sets_csv(sets, rep.archive, dim);
      auto pp = open_out(dir / "postprocess.csv");
      write_postprocess_log_csv(pp, rep.postprocess);
    } else {
      gc.validate();
      if (!start) {
        const BoxBounds& b = *mop.bounds();
        std::mt19937_64 rng(opt.seed);
        start.emplace(dim);
        for (std::size_t i = 0; i < dim; ++i) {
          (*start)[i] = std::uniform_real_distribution<double>(b.lower[i], b.upper[i])(rng);
        }
        report["start"] = *start;
      }
      const MogsaArchive arch = run_mogsa(*start, mop, gc);
      report["evals_used"] = mop.evaluations();
      report["budget_exhausted"] = arch.termination == MogsaTermination::BudgetExhausted;
      report["mogsa"] = mogsa_section(arch);
      auto out = open_out(dir / "archive.csv");
      write_mogsa_archive_csv(out, arch, dim);
    }

    if (opt.reference_hv) {
      const bench::TargetLadder ladder;
      const bench::Normalization norm = bench::normalization_of(evaluations);
      const auto traj = bench::measure_trajectory(evaluations, norm);
      const auto hits = bench::first_hits(traj, *opt.reference_hv, ladder);
      auto out = open_out(dir / "targets.csv");
      out << "target_index,offset,first_hit_evals\n";
      for (std::size_t k = 0; k < hits.size(); ++k) {
        out << k << ',' << format_double(ladder.offsets()[k]) << ','
            << (hits[k] ? std::to_string(*hits[k]) : "") << '\n';
      }
      report["reference_hv"] = *opt.reference_hv;
      report["final_measure"] = traj.empty() ? 0.0 : traj.back().measure;
      report["normalization"] = {{"ideal", norm.ideal}, {"nadir", norm.nadir}};
    }

    auto js = open_out(dir / "report.json");
    js << report.dump(2) << '\n';
    std::cout << fmt::format("{} on {}: {} evaluations, outputs in {}\n", opt.algo, mop.name(),
                             report["evals_used"].get<std::size_t>(), dir.string());
    return kExitOk;
  });
}

int cmd_plot_data(const PlotOptions& opt) {
  return guarded([&] {
    Mop mop = make_test_problem(opt.problem, to_map(opt.params));
    if (mop.dimension() != 2) {
      throw MoleError(ErrorCode::DimensionMismatch,
                      fmt::format("plot-data needs a two-dimensional problem, got d={}",
                                  mop.dimension()));
    }
    if (opt.gradients == "fd") mop.without_gradients();

    GridSpec grid;
    grid.bounds = *mop.bounds();
    if (!opt.lower.empty()) grid.bounds.lower = parse_point(opt.lower, "--lower");
    if (!opt.upper.empty()) grid.bounds.upper = parse_point(opt.upper, "--upper");
    grid.bounds = BoxBounds(grid.bounds.lower, grid.bounds.upper);
    const auto x = opt.res.find_first_of("xX");
    try {
      if (x == std::string::npos) throw std::invalid_argument(opt.res);
      std::size_t used = 0;
      grid.nx = std::stoul(opt.res.substr(0, x), &used);
      grid.ny = std::stoul(opt.res.substr(x + 1), &used);
      if (used != opt.res.size() - x - 1) throw std::invalid_argument(opt.res);
    } catch (const std::exception&) {
      throw MoleError(ErrorCode::InvalidConfig, "--res must look like 100x100");
    }
    if (!(opt.eps > 0.0)) throw MoleError(ErrorCode::InvalidConfig, "--eps must be positive");

    const MogVariant variant = opt.variant == "ch" ? MogVariant::ConvexHull
                               : opt.variant == "n" ? MogVariant::Normalized
                                                    : MogVariant::GeometricMean;
    const Landscape L = compute_landscape(mop, grid, variant, opt.eps);
    const fs::path path = opt.out.empty() ? fs::path(default_output_dir()) / "landscape.csv"
                                          : fs::path(opt.out);
    {
      auto out = open_out(path);
      write_landscape_csv(out, L);
    }
    std::cout << fmt::format("{} cells, {} LE components, written to {}\n", L.cells.size(),
                             count_le_components(L), path.string());
    if (opt.verify) {
      std::ifstream in(path);
      const LandscapeCheck check = verify_landscape_csv(in);
      std::cout << fmt::format("verify: {} cells, {} LE cells, {} height violations\n",
                               check.cells, check.le_cells, check.violations);
      if (check.violations != 0) return kExitPartialFailure;
    }
    return kExitOk;
  });
}

int cmd_bench(const BenchCliOptions& opt) {
  return guarded([&] {
    std::ifstream in(opt.suite);
    if (!in) throw MoleError(ErrorCode::InvalidConfig, "cannot read suite '" + opt.suite + "'");
    const auto suite = bench::parse_suite(in);
    if (suite.empty()) throw MoleError(ErrorCode::InvalidConfig, "suite '" + opt.suite + "' is empty");

    bench::BenchOptions bo;
    bo.repetitions = opt.repetitions;
    bo.jobs = opt.jobs;
    bo.budget_per_dim = opt.budget_per_dim;
    bo.analytic_gradients = opt.gradients == "analytic";
    bo.overrides = load_overrides(opt.config_file, opt.overrides);
    const bench::BenchResult res = bench::run_bench(suite, bo);

    const fs::path dir = opt.out.empty() ? default_output_dir() : opt.out;
    fs::create_directories(dir);
    {
      auto out = open_out(dir / "results.csv");
      bench::write_results_csv(out, res);
    }
    {
      auto out = open_out(dir / "targets.csv");
      bench::write_targets_csv(out, res);
    }
    {
      auto out = open_out(dir / "trajectory.csv");
      bench::write_trajectory_csv(out, res);
    }
    std::size_t failed = 0;
    for (const auto& r : res.runs) failed += r.ok ? 0 : 1;
    std::cout << fmt::format("{} runs, {} failed, outputs in {}\n", res.runs.size(), failed,
                             dir.string());
    for (const auto& r : res.runs) {
      if (!r.ok) std::cerr << fmt::format("run {} seed {}: {}\n", r.entry.problem, r.seed, r.error);
    }
    return res.any_failed ? kExitPartialFailure : kExitOk;
  });
}

}  // namespace mole::cli
