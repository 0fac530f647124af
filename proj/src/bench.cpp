#include "mole/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fmt/format.h>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "mole/archive.hpp"
#include "mole/hv_postprocess.hpp"
#include "mole/io.hpp"

namespace mole::bench {

namespace {

std::vector<double> standard_offsets() {
  std::vector<double> out;
  for (int k = 0; k <= 5; ++k) out.push_back(-std::pow(10.0, -4.0 - 0.2 * k));
  out.push_back(0.0);
  for (int k = 0; k <= 50; ++k) out.push_back(std::pow(10.0, -5.0 + 0.1 * k));
  std::sort(out.begin(), out.end());
  return out;
}

Objectives normalize(const Objectives& f, const Normalization& n) {
  return {(f[0] - n.ideal[0]) / (n.nadir[0] - n.ideal[0]),
          (f[1] - n.ideal[1]) / (n.nadir[1] - n.ideal[1])};
}

double distance_to_box(const Objectives& g) {
  return std::hypot(std::max(0.0, g[0] - 1.0), std::max(0.0, g[1] - 1.0));
}

}  // namespace

TargetLadder::TargetLadder() : offsets_(standard_offsets()) {}

TargetLadder::TargetLadder(std::vector<double> offsets) : offsets_(std::move(offsets)) {
  std::sort(offsets_.begin(), offsets_.end());
}

Normalization normalization_of(const std::vector<Objectives>& points) {
  const std::vector<Objectives> front = nondominated_front(points);
  if (front.empty()) return {{0.0, 0.0}, {1.0, 1.0}};
  Normalization n{{front.front()[0], front.back()[1]}, {front.back()[0], front.front()[1]}};
  for (int i = 0; i < 2; ++i) {
    if (!(n.nadir[i] > n.ideal[i])) n.nadir[i] = n.ideal[i] + 1.0;
  }
  return n;
}

MeasureTracker::MeasureTracker(const Normalization& norm)
    : norm_(norm), best_distance_(std::numeric_limits<double>::infinity()) {}

double MeasureTracker::term(std::map<double, double>::const_iterator it) const {
  const auto nx = std::next(it);
  const double right = nx == front_.end() ? 1.0 : nx->first;
  return (right - it->first) * (1.0 - it->second);
}

double MeasureTracker::add(const Objectives& f) {
  const Objectives g = normalize(f, norm_);
  const double d = distance_to_box(g);
  if (d == 0.0) reached_ = true;
  best_distance_ = std::min(best_distance_, d);
  if (!(g[0] < 1.0 && g[1] < 1.0)) return value();

  auto it = front_.lower_bound(g[0]);
  if (it != front_.end() && it->first == g[0] && it->second <= g[1]) return value();
  if (it != front_.begin() && std::prev(it)->second <= g[1]) return value();

  if (it != front_.begin()) hv_ -= term(std::prev(it));
  while (it != front_.end() && it->second >= g[1]) {
    hv_ -= term(it);
    it = front_.erase(it);
  }
  const auto q = front_.emplace_hint(it, g[0], g[1]);
  hv_ += term(q);
  if (q != front_.begin()) hv_ += term(std::prev(q));
  return value();
}

double MeasureTracker::value() const { return reached_ ? hv_ : -best_distance_; }

double measure_of(const std::vector<Objectives>& points, const Normalization& norm) {
  std::vector<Objectives> g;
  double best = std::numeric_limits<double>::infinity();
  for (const Objectives& f : points) {
    g.push_back(normalize(f, norm));
    best = std::min(best, distance_to_box(g.back()));
  }
  if (best > 0.0) return -best;
  return hypervolume_2d(g, {1.0, 1.0});
}

std::vector<TrajectoryPoint> measure_trajectory(const std::vector<Objectives>& evaluations,
                                                const Normalization& norm) {
  std::vector<TrajectoryPoint> out;
  MeasureTracker tracker(norm);
  for (std::size_t i = 0; i < evaluations.size(); ++i) {
    const double m = tracker.add(evaluations[i]);
    if (out.empty() || m != out.back().measure) out.push_back({i + 1, m});
  }
  return out;
}

std::vector<std::optional<std::size_t>> first_hits(const std::vector<TrajectoryPoint>& traj,
                                                   double reference, const TargetLadder& ladder) {
  std::vector<std::optional<std::size_t>> hits(ladder.size());
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    for (const TrajectoryPoint& p : traj) {
      if (reference - p.measure <= ladder.offsets()[k]) {
        hits[k] = p.evals;
        break;
      }
    }
  }
  return hits;
}

std::vector<SuiteEntry> parse_suite(std::istream& in) {
  std::vector<SuiteEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const auto bad = [&](const std::string& why) {
      return MoleError(ErrorCode::InvalidConfig,
                       fmt::format("suite line {}: {}", lineno, why));
    };
    if (tok.size() != 4 && tok.size() != 8) {
      throw bad("expected 'problem dim seed ref|self [ideal1 ideal2 nadir1 nadir2]'");
    }
    SuiteEntry e;
    e.problem = tok[0];
    try {
      const long long dim = std::stoll(tok[1]);
      if (dim < 1) throw std::invalid_argument(tok[1]);
      e.dim = static_cast<std::size_t>(dim);
      e.seed = std::stoull(tok[2]);
      if (tok[3] != "self") e.reference = std::stod(tok[3]);
      if (tok.size() == 8) {
        e.normalization = Normalization{{std::stod(tok[4]), std::stod(tok[5])},
                                        {std::stod(tok[6]), std::stod(tok[7])}};
        if (!(e.normalization->nadir[0] > e.normalization->ideal[0]) ||
            !(e.normalization->nadir[1] > e.normalization->ideal[1])) {
          throw bad("nadir must exceed ideal");
        }
      }
    } catch (const MoleError&) {
      throw;
    } catch (const std::exception&) {
      throw bad("malformed number");
    }
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

void execute(BenchRun& run, const BenchOptions& opt) {
  std::vector<Objectives> evaluations;
  try {
    Mop mop = make_test_problem(run.entry.problem, {{"dim", std::to_string(run.entry.dim)}});
    if (!opt.analytic_gradients) mop.without_gradients();
    run.budget = opt.budget_per_dim * run.entry.dim;
    mop.with_budget(run.budget);
    mop.with_observer([&](std::span<const double>, const Objectives& f) {
      evaluations.push_back(f);
    });
    MoleConfig cfg = MoleConfig::defaults_for(mop);
    MogsaConfig unused;
    apply_overrides(opt.overrides, cfg, unused);
    cfg.seed = run.seed;
    const MoleRunReport rep = run_mole(mop, cfg);
    run.evals = rep.evals_used;
    run.sets = rep.archive.size();
    run.normalization = run.entry.normalization.value_or(normalization_of(evaluations));
    run.trajectory = measure_trajectory(evaluations, run.normalization);
    run.final_measure = run.trajectory.empty() ? 0.0 : run.trajectory.back().measure;
    run.ok = true;
  } catch (const std::exception& e) {
    run.ok = false;
    run.error = e.what();
  }
}

}  // namespace

BenchResult run_bench(const std::vector<SuiteEntry>& suite, const BenchOptions& opt) {
  if (opt.repetitions == 0 || opt.budget_per_dim == 0) {
    throw MoleError(ErrorCode::InvalidConfig, "bench: repetitions and budget must be positive");
  }
  {
    // Reject bad overrides before launching anything.
    MoleConfig c;
    MogsaConfig m;
    apply_overrides(opt.overrides, c, m);
  }
  BenchResult res;
  for (const SuiteEntry& e : suite) {
    for (std::size_t r = 0; r < opt.repetitions; ++r) {
      BenchRun run;
      run.entry = e;
      run.repetition = r;
      run.seed = e.seed + r;
      res.runs.push_back(std::move(run));
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < res.runs.size(); i = next++) execute(res.runs[i], opt);
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(opt.jobs, res.runs.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::map<std::pair<std::string, std::size_t>, double> best;
  for (const BenchRun& r : res.runs) {
    if (!r.ok) continue;
    const auto key = std::make_pair(r.entry.problem, r.entry.dim);
    const auto it = best.find(key);
    if (it == best.end() || r.final_measure > it->second) best[key] = r.final_measure;
  }
  for (BenchRun& r : res.runs) {
    if (!r.ok) {
      res.any_failed = true;
      continue;
    }
    r.reference = r.entry.reference.value_or(best[{r.entry.problem, r.entry.dim}]);
    r.hits = first_hits(r.trajectory, r.reference, res.ladder);
  }
  return res;
}

void write_results_csv(std::ostream& out, const BenchResult& res) {
  out << "run,problem,dim,seed,repetition,status,evals,budget,sets,final_measure,reference,"
         "targets_hit,error\n";
  for (std::size_t i = 0; i < res.runs.size(); ++i) {
    const BenchRun& r = res.runs[i];
    const auto hit = std::count_if(r.hits.begin(), r.hits.end(), [](auto& h) { return h.has_value(); });
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << i << ',' << r.entry.problem << ',' << r.entry.dim << ',' << r.seed << ','
        << r.repetition << ',' << (r.ok ? "ok" : "failed") << ',' << r.evals << ',' << r.budget
        << ',' << r.sets << ',' << (r.ok ? format_double(r.final_measure) : "") << ','
        << (r.ok ? format_double(r.reference) : "") << ',' << hit << ',' << err << '\n';
  }
}

void write_targets_csv(std::ostream& out, const BenchResult& res) {
  out << "run,target_index,offset,first_hit_evals\n";
  for (std::size_t i = 0; i < res.runs.size(); ++i) {
    const BenchRun& r = res.runs[i];
    if (!r.ok) continue;
    for (std::size_t k = 0; k < r.hits.size(); ++k) {
      out << i << ',' << k << ',' << format_double(res.ladder.offsets()[k]) << ','
          << (r.hits[k] ? std::to_string(*r.hits[k]) : "") << '\n';
    }
  }
}

void write_trajectory_csv(std::ostream& out, const BenchResult& res) {
  out << "run,evals,measure\n";
  for (std::size_t i = 0; i < res.runs.size(); ++i) {
    const BenchRun& r = res.runs[i];
    if (!r.ok || r.trajectory.empty()) continue;
    std::size_t last = 0;
    std::size_t p = 0;
    for (int k = 0;; ++k) {
      auto at = static_cast<std::size_t>(std::ceil(std::pow(10.0, k / 20.0)));
      const bool final_row = at >= r.evals;
      if (final_row) at = r.evals;
      if (at > last) {
        while (p + 1 < r.trajectory.size() && r.trajectory[p + 1].evals <= at) ++p;
        out << i << ',' << at << ',' << format_double(r.trajectory[p].measure) << '\n';
        last = at;
      }
      if (final_row) break;
    }
  }
}

}  // namespace mole::bench
