#include <cmath>
#include <cstdlib>
#include <string>

#include "jfft/errors.hpp"
#include "jfft/kernels.hpp"

namespace jfft {

namespace detail {
const KernelTable* avx2_table();  // kernels_avx2.cpp, or nullptr
}

namespace {

void gather_scalar(const double* src, const std::uint32_t* idx, double* dst, std::size_t count) {
  for (std::size_t t = 0; t < count; ++t) dst[t] = src[idx[t]];
}

void rotate_scalar(const double* c00, const double* c01, const double* c10, const double* c11, double* x0, double* x1,
                   std::size_t count) {
  for (std::size_t t = 0; t < count; ++t) {
    const double a = x0[t];
    const double b = x1[t];
    x0[t] = std::fma(c00[t], a, c01[t] * b);
    x1[t] = std::fma(c10[t], a, c11[t] * b);
  }
}

double sum_squares_scalar(const double* x, std::size_t count) {
  double sum = 0.0;
  for (std::size_t t = 0; t < count; ++t) sum += x[t] * x[t];
  return sum;
}

double dot_scalar(const double* a, const double* b, std::size_t count) {
  double sum = 0.0;
  for (std::size_t t = 0; t < count; ++t) sum += a[t] * b[t];
  return sum;
}

constexpr KernelTable kScalar{"scalar", gather_scalar, rotate_scalar, sum_squares_scalar, dot_scalar};

}  // namespace

namespace kernels {

const KernelTable& scalar() { return kScalar; }

const KernelTable* avx2() {
  static const KernelTable* table = detail::avx2_table();
  return table;
}

std::vector<const KernelTable*> available() {
  std::vector<const KernelTable*> out{&kScalar};
  if (const KernelTable* t = avx2()) out.push_back(t);
  return out;
}

const KernelTable& by_name(std::string_view name) {
  for (const KernelTable* t : available()) {
    if (name == t->name) return *t;
  }
  throw InputError("kernel table '" + std::string(name) + "' is not available on this machine");
}

const KernelTable& best() {
  if (const char* forced = std::getenv("JFFT_KERNELS"); forced != nullptr && *forced != '\0') {
    return by_name(forced);
  }
  const KernelTable* t = avx2();
  return t ? *t : kScalar;
}

}  // namespace kernels

}  // namespace jfft
