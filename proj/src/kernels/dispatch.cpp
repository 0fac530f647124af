#include <cstdlib>
#include <cstring>

#include "mole/kernels.hpp"

namespace mole::kernels {

const char* to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool supported(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa isa = [] {
    const char* force = std::getenv("MOLE_FORCE_SCALAR");
    if (force != nullptr && *force != '\0' && std::strcmp(force, "0") != 0) return Isa::Scalar;
    return supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  }();
  return isa;
}

void mog_gm_2d(Isa isa, std::size_t n, const double* g1x, const double* g1y,
               const double* g2x, const double* g2y, double* out_x, double* out_y) {
  if (isa == Isa::Avx2 && supported(Isa::Avx2)) {
    avx2::mog_gm_2d(n, g1x, g1y, g2x, g2y, out_x, out_y);
  } else {
    scalar::mog_gm_2d(n, g1x, g1y, g2x, g2y, out_x, out_y);
  }
}

void domination_counts(Isa isa, std::size_t n, const double* f1, const double* f2,
                       std::uint32_t* counts) {
  if (isa == Isa::Avx2 && supported(Isa::Avx2)) {
    avx2::domination_counts(n, f1, f2, counts);
  } else {
    scalar::domination_counts(n, f1, f2, counts);
  }
}

}  // namespace mole::kernels
