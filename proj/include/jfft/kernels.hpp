#pragma once

// Inner loops of the factored transform. Every level of a plan runs as
//   gather   buf[t] = prev[idx[t]]            (index moves, no arithmetic)
//   rotate   (x0, x1) <- (c00 x0 + c01 x1, c10 x0 + c11 x1) over the pair region
// with coefficients stored as structure-of-arrays. The scalar table is the reference;
// SIMD tables must agree with it bit for bit on gather/rotate and to rounding on the
// reductions.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace jfft {

struct KernelTable {
  const char* name;
  /// dst[t] = src[idx[t]] for t < count. src and dst must not alias.
  void (*gather)(const double* src, const std::uint32_t* idx, double* dst, std::size_t count);
  /// In-place 2x2 transform of count pairs. Each output is fma(c_0, x0, c_1 * x1).
  void (*rotate)(const double* c00, const double* c01, const double* c10, const double* c11, double* x0,
                 double* x1, std::size_t count);
  double (*sum_squares)(const double* x, std::size_t count);
  double (*dot)(const double* a, const double* b, std::size_t count);
};

namespace kernels {

const KernelTable& scalar();

/// AVX2+FMA table, or nullptr when not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2();

/// Every table usable on this machine, scalar first.
std::vector<const KernelTable*> available();

/// The widest available table. $JFFT_KERNELS=scalar|avx2 forces a choice.
const KernelTable& best();

/// Table by name; throws InputError when unknown or unavailable.
const KernelTable& by_name(std::string_view name);

}  // namespace kernels

}  // namespace jfft
