// Nonmonotone multi-objective descent with Barzilai-Borwein step sizes.
//
// The search direction is the negative geometric-mean MOG. A doubling line
// search seeds the step size, after which BB steps are taken with a
// per-objective Armijo test against the maximum of the last H objective
// values. Absolute step lengths are always clamped to [alpha_min, alpha_max].

#ifndef MOLE_DESCENT_HPP
#define MOLE_DESCENT_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "mole/problem.hpp"

namespace mole {

struct DescentConfig {
  double crit_gamma = 1e-6;
  double alpha_min = 1e-6;
  double alpha_max = 0.1;
  double lambda = 2.0;
  double beta = 1e-4;
  std::size_t history = 100;
  std::size_t max_iter = 1000;
  /// Record every accepted iterate in DescentResult::trace.
  bool record_trace = false;

  /// Defaults with alpha_max = diag / 100.
  static DescentConfig defaults_for(double diag);

  /// Throws InvalidConfig on inconsistent values.
  void validate() const;
};

enum class DescentTermination {
  CriticalPoint,
  MinStepNoImprovement,
  MaxIter,
  BudgetExhausted,
  EarlyEscape,
};

const char* to_string(DescentTermination t);

struct DescentTraceEntry {
  std::size_t iteration;
  Vec x;
  Objectives f;
  /// Absolute step length that produced this iterate (0 for the start).
  double step;
  /// |grad F_GM| at this iterate; NaN when not computed (e.g. final BB
  /// iterate after an escape).
  double mog_norm;
  /// Per-objective nonmonotone reference used to accept this iterate
  /// (BB phase only; NaN otherwise).
  Objectives reference;
  bool bb_phase;
};

struct DescentResult {
  Vec final_point;
  Objectives final_objectives{};
  DescentTermination termination = DescentTermination::CriticalPoint;
  std::vector<DescentTraceEntry> trace;
  std::size_t evals_used = 0;
  /// Number of accepted doubling steps in the initial line search.
  std::size_t phase1_steps = 0;
  std::size_t iterations = 0;
};

/// Runs the descent from `start`. Budget exhaustion is not rethrown: the
/// result then carries the best point reached and termination
/// BudgetExhausted. With `escape_radius` set the search stops as soon as an
/// accepted iterate lies farther than that from `start`.
DescentResult multi_objective_descent(std::span<const double> start, Mop& mop,
                                      const DescentConfig& config,
                                      std::optional<double> escape_radius = std::nullopt);

/// Same, with the objective vector at `start` already known (saves one
/// evaluation).
DescentResult multi_objective_descent(std::span<const double> start,
                                      const Objectives& start_objectives, Mop& mop,
                                      const DescentConfig& config,
                                      std::optional<double> escape_radius = std::nullopt);

}  // namespace mole

#endif  // MOLE_DESCENT_HPP
