// Desk-scale benchmark harness with hypervolume targets.
//
// Every evaluation of a run is recorded and replayed afterwards against a
// normalization (ideal and nadir point). The performance measure is the
// hypervolume of the normalized nondominated set with reference (1, 1), or
// minus the distance to the region dominating the nadir while no evaluated
// point lies in it. A target with offset tau is hit once
// reference_measure - measure <= tau.

#ifndef MOLE_BENCH_HPP
#define MOLE_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mole/config.hpp"
#include "mole/problem.hpp"

namespace mole::bench {

class TargetLadder {
 public:
  /// -10^-4, -10^-4.2, ..., -10^-5, 0, 10^-5, 10^-4.9, ..., 10^0 (sorted).
  TargetLadder();
  explicit TargetLadder(std::vector<double> offsets);

  const std::vector<double>& offsets() const { return offsets_; }
  std::size_t size() const { return offsets_.size(); }

 private:
  std::vector<double> offsets_;
};

struct Normalization {
  Objectives ideal;
  Objectives nadir;
};

/// Ideal and nadir of the nondominated subset of `points`. Degenerate axes
/// get a unit range.
Normalization normalization_of(const std::vector<Objectives>& points);

/// Incrementally maintained performance measure.
class MeasureTracker {
 public:
  explicit MeasureTracker(const Normalization& norm);

  /// Adds one evaluated point; returns the updated measure.
  double add(const Objectives& f);
  double value() const;

 private:
  Normalization norm_;
  std::map<double, double> front_;  // normalized points strictly inside the reference box
  double hv_ = 0.0;
  double best_distance_;
  bool reached_ = false;

  double term(std::map<double, double>::const_iterator it) const;
};

/// Measure of a point set computed from scratch.
double measure_of(const std::vector<Objectives>& points, const Normalization& norm);

struct TrajectoryPoint {
  std::size_t evals;
  double measure;
};

/// Measure after each evaluation where it changed (the first evaluation is
/// always included).
std::vector<TrajectoryPoint> measure_trajectory(const std::vector<Objectives>& evaluations,
                                                const Normalization& norm);

/// First evaluation count at which reference - measure <= offset, per target.
std::vector<std::optional<std::size_t>> first_hits(const std::vector<TrajectoryPoint>& traj,
                                                   double reference, const TargetLadder& ladder);

struct SuiteEntry {
  std::string problem;
  std::size_t dim = 2;
  std::uint64_t seed = 0;
  /// Empty means "self": best final measure among runs of the same problem.
  std::optional<double> reference;
  std::optional<Normalization> normalization;
};

/// Lines: problem dim seed ref|self [ideal1 ideal2 nadir1 nadir2]. '#'
/// starts a comment.
std::vector<SuiteEntry> parse_suite(std::istream& in);

struct BenchOptions {
  std::size_t repetitions = 1;
  std::size_t jobs = 1;
  std::size_t budget_per_dim = 100000;
  bool analytic_gradients = false;
  KeyValues overrides;
};

struct BenchRun {
  SuiteEntry entry;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::size_t evals = 0;
  std::size_t budget = 0;
  std::size_t sets = 0;
  Normalization normalization{};
  std::vector<TrajectoryPoint> trajectory;
  double final_measure = 0.0;
  double reference = 0.0;
  std::vector<std::optional<std::size_t>> hits;
};

struct BenchResult {
  TargetLadder ladder;
  std::vector<BenchRun> runs;
  bool any_failed = false;
};

BenchResult run_bench(const std::vector<SuiteEntry>& suite, const BenchOptions& options);

/// run,problem,dim,seed,repetition,status,evals,budget,sets,final_measure,reference,targets_hit,error
void write_results_csv(std::ostream& out, const BenchResult& result);
/// run,target_index,offset,first_hit_evals
void write_targets_csv(std::ostream& out, const BenchResult& result);
/// run,evals,measure at roughly 20 log-spaced evaluation counts per decade.
void write_trajectory_csv(std::ostream& out, const BenchResult& result);

}  // namespace mole::bench

#endif  // MOLE_BENCH_HPP
