#pragma once

#include <cstdint>
#include <string>

#include "jfft/budget.hpp"
#include "jfft/planner.hpp"

namespace jfft {

struct BenchResult {
  ProblemDims dims;
  std::string kernels;
  std::size_t repeat = 0;
  std::uint64_t factored_muladds = 0;
  std::uint64_t dense_muladds = 0;
  double factored_median_seconds = 0.0;
  double dense_median_seconds = 0.0;
  double max_abs_difference = 0.0;  // factored vs dense output on the timed vector

  double op_reduction() const { return static_cast<double>(dense_muladds) / static_cast<double>(factored_muladds); }
  double speedup() const { return dense_median_seconds / factored_median_seconds; }
};

/// Times the factored forward transform against a dense C x C matrix-vector product with the
/// same kernel table; reports medians over `repeat` runs each.
BenchResult run_bench(const FactorPlan& plan, std::size_t repeat, std::uint64_t seed = 7,
                      std::uint64_t memory_budget = memory_budget_bytes());

}  // namespace jfft
