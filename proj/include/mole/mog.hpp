// Multi-objective gradients for two objectives.
//
// Three variants are provided:
//   convex hull     shortest vector in the convex hull of the two gradients
//   normalized      mean of the two unit gradients
//   geometric mean  normalized variant scaled by sqrt(|g1| |g2|)
//
// The geometric-mean variant is the one used for descent: it is continuous
// at single-objective optima, reduces to the plain gradient when both
// objectives coincide, and scaling one objective by c > 0 scales the result
// by sqrt(c) without changing its direction.

#ifndef MOLE_MOG_HPP
#define MOLE_MOG_HPP

#include <array>
#include <span>

#include "mole/problem.hpp"

namespace mole {

enum class MogVariant { ConvexHull, Normalized, GeometricMean };

/// Single-objective gradients shorter than this count as vanishing.
inline constexpr double kDegeneracyTolerance = 1e-10;

struct MogResult {
  Vec direction;
  std::array<double, 2> so_gradient_norms{0.0, 0.0};
  /// Convex-hull weights (alpha, 1 - alpha). The normalized variants report
  /// the equal weights applied to the unit gradients.
  std::array<double, 2> weights{0.5, 0.5};
  bool degenerate = false;

  double length() const { return norm(direction); }
};

MogResult mog_convex_hull(std::span<const double> g1, std::span<const double> g2);
MogResult mog_normalized(std::span<const double> g1, std::span<const double> g2);
MogResult mog_geometric_mean(std::span<const double> g1, std::span<const double> g2);

MogResult compute_mog(MogVariant variant, std::span<const double> g1,
                      std::span<const double> g2);

inline MogResult compute_mog(MogVariant variant, const GradientPair& g) {
  return compute_mog(variant, g.g1, g.g2);
}

struct Criticality {
  bool critical = false;
  /// Fritz-John multipliers (convex-hull weights).
  std::array<double, 2> weights{0.5, 0.5};
  double mog_length = 0.0;
};

/// First-order criticality: |grad F_GM| < crit_gamma.
Criticality criticality(std::span<const double> g1, std::span<const double> g2,
                        double crit_gamma);

}  // namespace mole

#endif  // MOLE_MOG_HPP
