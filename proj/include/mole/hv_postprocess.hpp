// Two-dimensional hypervolume and the gap-driven refinement of set models.
//
// Refinement repeatedly picks the pair of consecutive set nodes with the
// largest hypervolume gap, proposes their decision-space midpoint and, when
// the set bends enough for the midpoint to be off the set, corrects it with
// the multi-objective descent. The loop ends once the total gap of all
// eligible pairs, normalized by the area between the ideal and nadir points
// of the nondominated front, is at most theta.

#ifndef MOLE_HV_POSTPROCESS_HPP
#define MOLE_HV_POSTPROCESS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "mole/archive.hpp"
#include "mole/descent.hpp"

namespace mole {

struct PostProcessConfig {
  double theta = 2e-5;
  std::size_t max_iterations = 10'000'000;
  bool record_log = true;
  /// Keep the midpoints whose descent was skipped (for auditing).
  bool record_skipped = false;

  void validate() const;
};

/// Area dominated by `points` and bounded by `reference`. Points that do not
/// strictly dominate the reference contribute nothing.
double hypervolume_2d(std::span<const Objectives> points, const Objectives& reference);

/// Rectangle between the ideal and nadir of two vectors. A shared coordinate
/// gives an empty rectangle; throws NotComparablePair if one vector is better
/// in both objectives.
double hv_gap(const Objectives& a, const Objectives& b);

/// Largest distance between the midpoint of x1, x2 and the true set,
/// given the turn angles (degrees) of the set model at both nodes.
double max_expected_descent(std::span<const double> x1, std::span<const double> x2,
                            double phi1_deg, double phi2_deg);

struct GapSummary {
  double total_gap = 0.0;
  double max_hv = 0.0;
  std::size_t eligible_pairs = 0;

  double normalized() const;
};

/// Total gap over every consecutive pair whose ideal point is not dominated
/// by the archive, computed from scratch.
GapSummary hv_gap_summary(const SetsArchive& archive);

struct PostProcessIteration {
  std::size_t iteration;
  double total_gap;
  double max_hv;
  bool inserted;
  bool descent_skipped;
  /// max_hv differs from the previous iteration.
  bool renormalized;
};

struct PostProcessReport {
  std::size_t iterations = 0;
  std::size_t inserted = 0;
  std::size_t skipped_descents = 0;
  std::size_t excluded_pairs = 0;
  std::size_t evals_used = 0;
  double total_gap = 0.0;
  double max_hv = 0.0;
  bool converged = false;
  bool budget_exhausted = false;
  std::vector<PostProcessIteration> log;
  std::vector<Vec> skipped_midpoints;

  double normalized_gap() const;
};

PostProcessReport post_process_hv(SetsArchive& archive, Mop& mop, const PostProcessConfig& config,
                                  const DescentConfig& descent_config);

}  // namespace mole

#endif  // MOLE_HV_POSTPROCESS_HPP
