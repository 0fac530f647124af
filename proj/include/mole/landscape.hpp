// Gradient-field landscape data for two-dimensional problems.
//
// Every grid cell gets a multi-objective gradient and follows the neighbour
// (8-connected) whose direction is closest to the negative gradient until it
// reaches a cell with a vanishing gradient or revisits a cell of its own
// path. The accumulated path length is the cell's height. Terminal cells
// are locally efficient and are ranked by domination counts among
// themselves.

#ifndef MOLE_LANDSCAPE_HPP
#define MOLE_LANDSCAPE_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mole/mog.hpp"
#include "mole/problem.hpp"

namespace mole {

struct GridSpec {
  BoxBounds bounds;
  std::size_t nx = 100;
  std::size_t ny = 100;

  void validate() const;
};

struct GridCellRecord {
  std::size_t ix, iy;
  double x1, x2;
  Objectives f;
  double mog_x, mog_y;
  double height = 0.0;
  bool is_le = false;
  /// Terminal cell of a cycle whose gradients do not oppose each other.
  bool cycle_artifact = false;
  /// Index of the successor cell, or -1 for terminal cells.
  std::int64_t next = -1;
  /// Only meaningful on locally efficient cells.
  std::uint32_t dom_count = 0;
  double log_dom = 0.0;
};

struct Landscape {
  std::size_t nx = 0, ny = 0;
  std::vector<GridCellRecord> cells;  // row-major in iy, then ix
  /// Number of height finalizations; equals the cell count.
  std::size_t resolutions = 0;

  std::size_t index(std::size_t ix, std::size_t iy) const { return iy * nx + ix; }
};

Landscape compute_landscape(Mop& mop, const GridSpec& grid,
                            MogVariant variant = MogVariant::GeometricMean, double eps = 1e-4);

/// counts[i] = number of vectors that Pareto-dominate objectives[i].
std::vector<std::uint32_t> domination_counts(const std::vector<Objectives>& objectives);

/// Connected components (8-neighbourhood) of the locally efficient cells.
std::size_t count_le_components(const Landscape& landscape);

/// Cells with a successor whose height differs from step + successor height
/// by more than `tol`.
std::size_t height_violations(const Landscape& landscape, double tol = 1e-12);

void write_landscape_csv(std::ostream& out, const Landscape& landscape);

struct LandscapeCheck {
  std::size_t cells = 0;
  std::size_t le_cells = 0;
  /// Non-terminal cells whose height is not one step plus the height of a
  /// neighbour lying (up to ties) in the steepest-descent direction.
  std::size_t violations = 0;
};

/// Replays the height recurrence from a file written by write_landscape_csv.
/// Successors are recovered from the stored MOG columns, so the check does
/// not depend on the code that produced the file.
LandscapeCheck verify_landscape_csv(std::istream& in, double tol = 1e-9);

}  // namespace mole

#endif  // MOLE_LANDSCAPE_HPP
