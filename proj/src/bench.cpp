#include "jfft/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <vector>

#include "jfft/errors.hpp"
#include "jfft/transform.hpp"

namespace jfft {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Keeps the optimizer from discarding timed results.
volatile double g_sink = 0.0;

}  // namespace

BenchResult run_bench(const FactorPlan& plan, std::size_t repeat, std::uint64_t seed, std::uint64_t memory_budget) {
  if (repeat == 0) throw InputError("bench needs at least one repetition");
  const FourierEngine engine(plan);
  const ProblemDims& dims = plan.dims;
  const std::size_t dim = static_cast<std::size_t>(dims.dim);
  require_budget(dense_bytes(dim, dim), memory_budget, "dense benchmark matrix");

  // Row t of the dense transform is the GT basis vector t: forward(e_x) gives column x.
  std::vector<double> dense(dim * dim);
  {
    std::vector<double> unit(dim, 0.0);
    std::vector<double> col(dim);
    OpCounter scratch;
    for (std::size_t x = 0; x < dim; ++x) {
      unit[x] = 1.0;
      engine.forward(unit, col, scratch);
      unit[x] = 0.0;
      for (std::size_t t = 0; t < dim; ++t) dense[t * dim + x] = col[t];
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<double> f(dim);
  for (double& x : f) x = uniform(rng);

  BenchResult result;
  result.dims = dims;
  result.kernels = engine.kernels().name;
  result.repeat = repeat;
  result.dense_muladds = static_cast<std::uint64_t>(dim) * dim;

  using clock = std::chrono::steady_clock;
  std::vector<double> fast(dim);
  std::vector<double> slow(dim);
  std::vector<double> fast_times;
  std::vector<double> dense_times;
  const KernelTable& k = engine.kernels();
  // One untimed warm-up of each path.
  {
    OpCounter ops;
    engine.forward(f, fast, ops);
    result.factored_muladds = ops.muladds;
    for (std::size_t t = 0; t < dim; ++t) slow[t] = k.dot(dense.data() + t * dim, f.data(), dim);
  }
  for (std::size_t r = 0; r < repeat; ++r) {
    OpCounter ops;
    const auto t0 = clock::now();
    engine.forward(f, fast, ops);
    const auto t1 = clock::now();
    fast_times.push_back(std::chrono::duration<double>(t1 - t0).count());
    g_sink = g_sink + fast[r % dim];

    const auto t2 = clock::now();
    for (std::size_t t = 0; t < dim; ++t) slow[t] = k.dot(dense.data() + t * dim, f.data(), dim);
    const auto t3 = clock::now();
    dense_times.push_back(std::chrono::duration<double>(t3 - t2).count());
    g_sink = g_sink + slow[r % dim];
  }
  for (std::size_t t = 0; t < dim; ++t) result.max_abs_difference = std::max(result.max_abs_difference, std::abs(fast[t] - slow[t]));
  result.factored_median_seconds = median(std::move(fast_times));
  result.dense_median_seconds = median(std::move(dense_times));
  return result;
}

}  // namespace jfft
