// Batch kernels for the grid exporter.
//
// Every kernel has a portable scalar reference and an AVX2 variant. The two
// produce bit-identical results: the AVX2 path performs the same IEEE
// operations in the same order and is compiled without FMA contraction.

#ifndef MOLE_KERNELS_HPP
#define MOLE_KERNELS_HPP

#include <cstddef>
#include <cstdint>

namespace mole::kernels {

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa);

/// True when the CPU supports the instruction set.
bool supported(Isa isa);

/// Best supported instruction set. Setting MOLE_FORCE_SCALAR=1 in the
/// environment pins the scalar path.
Isa active_isa();

/// Geometric-mean multi-objective gradient of n planar gradient pairs given
/// as structure-of-arrays. Pairs with a vanishing gradient yield (0, 0).
void mog_gm_2d(Isa isa, std::size_t n, const double* g1x, const double* g1y,
               const double* g2x, const double* g2y, double* out_x, double* out_y);

/// counts[i] = number of j with (f1[j], f2[j]) Pareto-dominating (f1[i], f2[i]).
void domination_counts(Isa isa, std::size_t n, const double* f1, const double* f2,
                       std::uint32_t* counts);

inline void mog_gm_2d(std::size_t n, const double* g1x, const double* g1y, const double* g2x,
                      const double* g2y, double* out_x, double* out_y) {
  mog_gm_2d(active_isa(), n, g1x, g1y, g2x, g2y, out_x, out_y);
}

inline void domination_counts(std::size_t n, const double* f1, const double* f2,
                              std::uint32_t* counts) {
  domination_counts(active_isa(), n, f1, f2, counts);
}

namespace scalar {
void mog_gm_2d(std::size_t n, const double* g1x, const double* g1y, const double* g2x,
               const double* g2y, double* out_x, double* out_y);
void domination_counts(std::size_t n, const double* f1, const double* f2,
                       std::uint32_t* counts);
}  // namespace scalar

namespace avx2 {
void mog_gm_2d(std::size_t n, const double* g1x, const double* g1y, const double* g2x,
               const double* g2y, double* out_x, double* out_y);
void domination_counts(std::size_t n, const double* f1, const double* f2,
                       std::uint32_t* counts);
}  // namespace avx2

}  // namespace mole::kernels

#endif  // MOLE_KERNELS_HPP
