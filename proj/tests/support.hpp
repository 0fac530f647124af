// Independent oracles shared by the test suites. Nothing here calls into the
// code under test except to build problems.

#ifndef MOLE_TESTS_SUPPORT_HPP
#define MOLE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mole/problem.hpp"

namespace mole::test {

/// Distance from p to the segment [a, b].
inline double segment_distance(const Vec& p, const Vec& a, const Vec& b) {
  double ab2 = 0.0, t = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    ab2 += (b[i] - a[i]) * (b[i] - a[i]);
    t += (p[i] - a[i]) * (b[i] - a[i]);
  }
  t = ab2 > 0.0 ? std::clamp(t / ab2, 0.0, 1.0) : 0.0;
  double d2 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double q = a[i] + t * (b[i] - a[i]);
    d2 += (p[i] - q) * (p[i] - q);
  }
  return std::sqrt(d2);
}

inline double euclid(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

/// Plain O(n^2) dominated-area oracle on a fine uniform split: exact union
/// of axis-aligned boxes by sorting on f1 and sweeping.
inline double box_union_area(std::vector<std::array<double, 2>> pts,
                             const std::array<double, 2>& ref) {
  std::vector<double> xs{ref[0]};
  for (const auto& p : pts) {
    if (p[0] < ref[0] && p[1] < ref[1]) xs.push_back(p[0]);
  }
  std::sort(xs.begin(), xs.end());
  double area = 0.0;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double x0 = xs[k], x1 = xs[k + 1];
    if (x1 <= x0) continue;
    double low = ref[1];
    for (const auto& p : pts) {
      if (p[0] <= x0 && p[1] < low) low = p[1];
    }
    area += (x1 - x0) * (ref[1] - low);
  }
  return area;
}

/// f1 = f2 = |x|^2 with analytic gradients.
inline Mop identical_quadratic(std::size_t d) {
  Mop mop(d, [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return Objectives{s, s};
  });
  mop.with_gradients([](std::span<const double> x) {
    Vec g(x.begin(), x.end());
    for (double& v : g) v *= 2.0;
    return GradientPair{g, g};
  });
  mop.with_bounds(BoxBounds(Vec(d, -5.0), Vec(d, 5.0)));
  return mop;
}

inline Vec random_vec(std::mt19937_64& rng, std::size_t d, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(d);
  for (double& x : v) x = u(rng);
  return v;
}

}  // namespace mole::test

#endif  // MOLE_TESTS_SUPPORT_HPP
