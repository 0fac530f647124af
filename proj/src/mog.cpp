#include "mole/mog.hpp"

#include <cmath>

namespace mole {

MogResult mog_convex_hull(std::span<const double> g1, std::span<const double> g2) {
  MogResult r;
  r.so_gradient_norms = {norm(g1), norm(g2)};
  r.degenerate = r.so_gradient_norms[0] < kDegeneracyTolerance ||
                 r.so_gradient_norms[1] < kDegeneracyTolerance;

  const std::size_t d = g1.size();
  Vec diff(d);
  for (std::size_t i = 0; i < d; ++i) diff[i] = g1[i] - g2[i];

  double alpha;
  if (dot(g1, diff) <= 0.0) {
    alpha = 1.0;
  } else if (-dot(g2, diff) <= 0.0) {
    alpha = 0.0;
  } else {
    alpha = -dot(g2, diff) / dot(diff, diff);
  }
  r.weights = {alpha, 1.0 - alpha};
  r.direction.resize(d);
  if (alpha == 1.0) {
    r.direction.assign(g1.begin(), g1.end());
  } else if (alpha == 0.0) {
    r.direction.assign(g2.begin(), g2.end());
  } else {
    for (std::size_t i = 0; i < d; ++i) r.direction[i] = g2[i] + alpha * diff[i];
  }
  return r;
}

MogResult mog_normalized(std::span<const double> g1, std::span<const double> g2) {
  MogResult r;
  const double n1 = norm(g1);
  const double n2 = norm(g2);
  r.so_gradient_norms = {n1, n2};
  r.direction.assign(g1.size(), 0.0);
  if (n1 < kDegeneracyTolerance || n2 < kDegeneracyTolerance) {
    r.degenerate = true;
    return r;
  }
  for (std::size_t i = 0; i < g1.size(); ++i) {
    r.direction[i] = 0.5 * (g1[i] / n1 + g2[i] / n2);
  }
  return r;
}

MogResult mog_geometric_mean(std::span<const double> g1, std::span<const double> g2) {
  MogResult r = mog_normalized(g1, g2);
  if (r.degenerate) return r;
  const double scale = std::sqrt(r.so_gradient_norms[0]) * std::sqrt(r.so_gradient_norms[1]);
  for (double& v : r.direction) v *= scale;
  return r;
}

MogResult compute_mog(MogVariant variant, std::span<const double> g1,
                      std::span<const double> g2) {
  switch (variant) {
    case MogVariant::ConvexHull: return mog_convex_hull(g1, g2);
    case MogVariant::Normalized: return mog_normalized(g1, g2);
    case MogVariant::GeometricMean: return mog_geometric_mean(g1, g2);
  }
  return mog_geometric_mean(g1, g2);
}

Criticality criticality(std::span<const double> g1, std::span<const double> g2,
                        double crit_gamma) {
  Criticality c;
  c.mog_length = mog_geometric_mean(g1, g2).length();
  c.critical = c.mog_length < crit_gamma;
  if (c.critical) c.weights = mog_convex_hull(g1, g2).weights;
  return c;
}

}  // namespace mole
