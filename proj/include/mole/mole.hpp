// The multi-objective landscape explorer.
//
// Each starting point is descended to a locally efficient point. Points are
// kept on a LIFO stack; a popped point either falls inside a known set (and
// is inserted there) or seeds the exploration of a new set, whose superposed
// points are pushed in turn. Discovered sets are refined by the hypervolume
// post-processing.

#ifndef MOLE_MOLE_HPP
#define MOLE_MOLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "mole/archive.hpp"
#include "mole/continuation.hpp"
#include "mole/hv_postprocess.hpp"

namespace mole {

enum class StartSource { UniformRandom, ExplicitList };

struct MoleConfig {
  std::size_t max_starting_points = 1000;
  std::size_t max_sets = 1000;
  DescentConfig descent;
  ExploreConfig explore;
  PostProcessConfig postprocess;
  StartSource source = StartSource::UniformRandom;
  std::uint64_t seed = 0;
  std::vector<Vec> start_points;  // used with ExplicitList
  /// Successful starts before the first post-processing pass.
  std::size_t postprocess_warmup = 10;
  bool postprocess_enabled = true;
  bool record_stack_trace = false;

  /// Defaults scaled to the problem's box.
  static MoleConfig defaults_for(const Mop& mop);
  void validate() const;
};

struct SetProvenance {
  int set_id;
  /// Index of the starting point whose processing discovered the set.
  std::size_t start_index;
  /// Set whose exploration produced the seed as a superposed point.
  std::optional<int> parent_set;
  Vec seed;
  std::size_t explore_evals;
};

struct QuarantinedPoint {
  int set_id;
  Vec x;
  Objectives f;
};

struct StackEvent {
  enum class Kind { Push, Pop } kind;
  Vec x;
};

struct SetHit {
  int set_id;
  /// Ids of the bracketing nodes; both equal for a hit by proximity.
  std::uint64_t left_node;
  std::uint64_t right_node;
};

struct MoleRunReport {
  SetsArchive archive;
  std::size_t evals_used = 0;
  std::size_t starting_points_consumed = 0;
  std::size_t successful_starts = 0;
  std::size_t explore_calls = 0;
  std::size_t archive_hits = 0;
  std::size_t postprocess_runs = 0;
  std::size_t postprocess_evals = 0;
  bool budget_exhausted = false;
  bool max_sets_reached = false;
  std::vector<SetProvenance> provenance;
  std::vector<QuarantinedPoint> quarantine;
  std::vector<StackEvent> stack_trace;
  std::vector<PostProcessReport> postprocess;
};

/// First set holding x: either bracketed by two consecutive nodes in both
/// objective and decision space, or within sigma_min of any node.
std::optional<SetHit> find_containing_set(std::span<const double> x, const Objectives& f,
                                          const SetsArchive& archive, double sigma_min);

MoleRunReport run_mole(Mop& mop, const MoleConfig& config);

}  // namespace mole

#endif  // MOLE_MOLE_HPP
