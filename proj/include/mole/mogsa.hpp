// Multi-objective gradient sliding, the fixed-step predecessor of MOLE.
//
// Alternates a fixed-step descent along the normalized multi-objective
// gradient with fixed-step walks along the single-objective gradients. A
// walk ends at a presumed single-objective optimum (vanishing gradient or a
// tracked gradient that turns by more than 90 degrees) or when the two
// gradients stop opposing each other, which signals a superposed basin.

#ifndef MOLE_MOGSA_HPP
#define MOLE_MOGSA_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "mole/problem.hpp"

namespace mole {

struct MogsaConfig {
  double descent_step = 0.1;
  double explore_step = 0.05;
  double mog_eps = 1e-4;
  std::size_t max_descent_iter = 10000;
  std::size_t max_explore_iter = 10000;
  /// Descent/exploration rounds before giving up.
  std::size_t max_rounds = 100;

  static MogsaConfig defaults_for(double diag);
  void validate() const;
};

enum class MogsaPhase { Descent, Explore };

struct MogsaVisit {
  Vec x;
  Objectives f;
  MogsaPhase phase;
  std::size_t round;
};

enum class MogsaTermination { StrictSetPresumed, IterationCap, BudgetExhausted };

const char* to_string(MogsaTermination t);

struct MogsaArchive {
  std::vector<MogsaVisit> visited;
  MogsaTermination termination = MogsaTermination::StrictSetPresumed;
  std::size_t rounds = 0;
  /// Start point of every exploration, in order.
  std::vector<Vec> efficient_points;
};

struct MogsaDescentResult {
  Vec x;
  Objectives f;
  bool converged;
  std::size_t iterations;
};

/// Fixed-step descent along -descent_step * grad F_N. Visited points are
/// appended to `log` when given.
MogsaDescentResult mogsa_descent(std::span<const double> x, Mop& mop, const MogsaConfig& config,
                                 MogsaArchive* log = nullptr);

struct MogsaExploreResult {
  /// Point in a presumed superposed basin; empty when both walks ended at
  /// single-objective optima.
  std::optional<Vec> next;
  bool capped = false;
};

MogsaExploreResult mogsa_explore(std::span<const double> x_star, Mop& mop,
                                 const MogsaConfig& config, MogsaArchive* log = nullptr);

MogsaArchive run_mogsa(std::span<const double> x, Mop& mop, const MogsaConfig& config);

}  // namespace mole

#endif  // MOLE_MOGSA_HPP
