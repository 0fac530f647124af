#include <cmath>

#include "mole/kernels.hpp"
#include "mole/mog.hpp"

namespace mole::kernels::scalar {

void mog_gm_2d(std::size_t n, const double* g1x, const double* g1y, const double* g2x,
               const double* g2y, double* out_x, double* out_y) {
  for (std::size_t i = 0; i < n; ++i) {
    const double n1 = std::sqrt(g1x[i] * g1x[i] + g1y[i] * g1y[i]);
    const double n2 = std::sqrt(g2x[i] * g2x[i] + g2y[i] * g2y[i]);
    if (n1 < kDegeneracyTolerance || n2 < kDegeneracyTolerance) {
      out_x[i] = 0.0;
      out_y[i] = 0.0;
      continue;
    }
    const double scale = std::sqrt(n1) * std::sqrt(n2);
    out_x[i] = 0.5 * (g1x[i] / n1 + g2x[i] / n2) * scale;
    out_y[i] = 0.5 * (g1y[i] / n1 + g2y[i] / n2) * scale;
  }
}

void domination_counts(std::size_t n, const double* f1, const double* f2,
                       std::uint32_t* counts) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t c = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const bool weak = f1[j] <= f1[i] && f2[j] <= f2[i];
      const bool strict = f1[j] < f1[i] || f2[j] < f2[i];
      c += weak && strict;
    }
    counts[i] = c;
  }
}

}  // namespace mole::kernels::scalar
