#include "jfft/kernels.hpp"

#if defined(JFFT_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))

#include <immintrin.h>

#include <cmath>

namespace jfft {

namespace {

__attribute__((target("avx2,fma"))) void gather_avx2(const double* src, const std::uint32_t* idx, double* dst,
                                                      std::size_t count) {
  std::size_t t = 0;
  for (; t + 8 <= count; t += 8) {
    const __m128i i0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + t));
    const __m128i i1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + t + 4));
    // Indices are below 2^31, so the signed 32-bit gather offsets are exact.
    _mm256_storeu_pd(dst + t, _mm256_i32gather_pd(src, i0, 8));
    _mm256_storeu_pd(dst + t + 4, _mm256_i32gather_pd(src, i1, 8));
  }
  for (; t < count; ++t) dst[t] = src[idx[t]];
}

__attribute__((target("avx2,fma"))) void rotate_avx2(const double* c00, const double* c01, const double* c10,
                                                      const double* c11, double* x0, double* x1, std::size_t count) {
  std::size_t t = 0;
  for (; t + 4 <= count; t += 4) {
    const __m256d a = _mm256_loadu_pd(x0 + t);
    const __m256d b = _mm256_loadu_pd(x1 + t);
    const __m256d y0 = _mm256_fmadd_pd(_mm256_loadu_pd(c00 + t), a, _mm256_mul_pd(_mm256_loadu_pd(c01 + t), b));
    const __m256d y1 = _mm256_fmadd_pd(_mm256_loadu_pd(c10 + t), a, _mm256_mul_pd(_mm256_loadu_pd(c11 + t), b));
    _mm256_storeu_pd(x0 + t, y0);
    _mm256_storeu_pd(x1 + t, y1);
  }
  for (; t < count; ++t) {
    const double a = x0[t];
    const double b = x1[t];
    x0[t] = std::fma(c00[t], a, c01[t] * b);
    x1[t] = std::fma(c10[t], a, c11[t] * b);
  }
}

__attribute__((target("avx2,fma"))) double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

__attribute__((target("avx2,fma"))) double sum_squares_avx2(const double* x, std::size_t count) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t t = 0;
  for (; t + 8 <= count; t += 8) {
    const __m256d a = _mm256_loadu_pd(x + t);
    const __m256d b = _mm256_loadu_pd(x + t + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; t < count; ++t) sum += x[t] * x[t];
  return sum;
}

__attribute__((target("avx2,fma"))) double dot_avx2(const double* a, const double* b, std::size_t count) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t t = 0;
  for (; t + 8 <= count; t += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + t), _mm256_loadu_pd(b + t), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + t + 4), _mm256_loadu_pd(b + t + 4), acc1);
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; t < count; ++t) sum += a[t] * b[t];
  return sum;
}

constexpr KernelTable kAvx2{"avx2", gather_avx2, rotate_avx2, sum_squares_avx2, dot_avx2};

}  // namespace

namespace detail {

const KernelTable* avx2_table() {
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &kAvx2;
  return nullptr;
}

}  // namespace detail

}  // namespace jfft

#else

namespace jfft::detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace jfft::detail

#endif
