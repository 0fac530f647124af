#include <immintrin.h>

#include "mole/kernels.hpp"
#include "mole/mog.hpp"

namespace mole::kernels::avx2 {

void mog_gm_2d(std::size_t n, const double* g1x, const double* g1y, const double* g2x,
               const double* g2y, double* out_x, double* out_y) {
  const __m256d tol = _mm256_set1_pd(kDegeneracyTolerance);
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ax = _mm256_loadu_pd(g1x + i);
    const __m256d ay = _mm256_loadu_pd(g1y + i);
    const __m256d bx = _mm256_loadu_pd(g2x + i);
    const __m256d by = _mm256_loadu_pd(g2y + i);
    const __m256d n1 =
        _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(ax, ax), _mm256_mul_pd(ay, ay)));
    const __m256d n2 =
        _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(bx, bx), _mm256_mul_pd(by, by)));
    const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(n1, tol, _CMP_NLT_UQ),
                                     _mm256_cmp_pd(n2, tol, _CMP_NLT_UQ));
    const __m256d scale = _mm256_mul_pd(_mm256_sqrt_pd(n1), _mm256_sqrt_pd(n2));
    const __m256d rx = _mm256_mul_pd(
        _mm256_mul_pd(half, _mm256_add_pd(_mm256_div_pd(ax, n1), _mm256_div_pd(bx, n2))), scale);
    const __m256d ry = _mm256_mul_pd(
        _mm256_mul_pd(half, _mm256_add_pd(_mm256_div_pd(ay, n1), _mm256_div_pd(by, n2))), scale);
    _mm256_storeu_pd(out_x + i, _mm256_and_pd(rx, ok));
    _mm256_storeu_pd(out_y + i, _mm256_and_pd(ry, ok));
  }
  scalar::mog_gm_2d(n - i, g1x + i, g1y + i, g2x + i, g2y + i, out_x + i, out_y + i);
}

void domination_counts(std::size_t n, const double* f1, const double* f2,
                       std::uint32_t* counts) {
  for (std::size_t i = 0; i < n; ++i) {
    const __m256d a = _mm256_set1_pd(f1[i]);
    const __m256d b = _mm256_set1_pd(f2[i]);
    std::uint32_t c = 0;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      const __m256d x = _mm256_loadu_pd(f1 + j);
      const __m256d y = _mm256_loadu_pd(f2 + j);
      const __m256d weak = _mm256_and_pd(_mm256_cmp_pd(x, a, _CMP_LE_OQ),
                                         _mm256_cmp_pd(y, b, _CMP_LE_OQ));
      const __m256d strict = _mm256_or_pd(_mm256_cmp_pd(x, a, _CMP_LT_OQ),
                                          _mm256_cmp_pd(y, b, _CMP_LT_OQ));
      c += static_cast<std::uint32_t>(
          __builtin_popcount(_mm256_movemask_pd(_mm256_and_pd(weak, strict))));
    }
    for (; j < n; ++j) {
      c += (f1[j] <= f1[i] && f2[j] <= f2[i]) && (f1[j] < f1[i] || f2[j] < f2[i]);
    }
    counts[i] = c;
  }
}

}  // namespace mole::kernels::avx2
