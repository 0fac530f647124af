// Predictor-corrector exploration of a bi-objective locally efficient set.
//
// Starting from an (approximately) locally efficient point the set is traced
// towards the optimum of f1 and then towards the optimum of f2. Predictions
// follow the secant through the two most recent set points (or the negative
// gradient of the traced objective) and are corrected by the multi-objective
// descent. Corrected points that dominate their predecessor, or that jump
// farther than sigma_max from it, are reported as points of superposed sets.

#ifndef MOLE_CONTINUATION_HPP
#define MOLE_CONTINUATION_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "mole/descent.hpp"
#include "mole/efficient_set.hpp"

namespace mole {

struct ExploreConfig {
  double sigma_min = 1e-4;
  double sigma_max = 0.1;
  double phi_max = 45.0;  // degrees
  double lambda = 2.0;
  /// Safety cap on predictor-corrector iterations per direction.
  std::size_t max_steps = 100000;
  bool record_trace = false;

  static ExploreConfig defaults_for(double diag);
  void validate() const;
};

enum class DirectionTermination { SoOptimum, BasinCrossed, Stalled, BudgetExhausted };

const char* to_string(DirectionTermination t);

struct SuperposedPoint {
  Vec x;
  Objectives f;
};

struct ExploreStep {
  int objective;  // 0 or 1
  double sigma;
  bool use_gradient;
  /// Turn angle (degrees) of the proposed step; NaN for the first step.
  double angle;
  enum class Outcome { PredictorRejected, CorrectorRejected, Inserted, Superposed, Stopped };
  Outcome outcome;
  DescentTermination corrector = DescentTermination::CriticalPoint;
  std::size_t evals = 0;  // evaluations spent on this step
};

struct ExploreResult {
  EfficientSetModel set;
  std::vector<SuperposedPoint> superposed;
  std::array<DirectionTermination, 2> termination{DirectionTermination::SoOptimum,
                                                  DirectionTermination::SoOptimum};
  std::vector<ExploreStep> trace;
  std::size_t evals_used = 0;
  bool budget_exhausted = false;
};

ExploreResult explore_efficient_set(std::span<const double> x_star, Mop& mop,
                                    const ExploreConfig& config,
                                    const DescentConfig& descent_config, int set_id = 0);

/// Variant with the objective vector at x_star already known.
ExploreResult explore_efficient_set(std::span<const double> x_star,
                                    const Objectives& f_star, Mop& mop,
                                    const ExploreConfig& config,
                                    const DescentConfig& descent_config, int set_id = 0);

}  // namespace mole

#endif  // MOLE_CONTINUATION_HPP
