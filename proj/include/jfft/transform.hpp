#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "jfft/core.hpp"
#include "jfft/kernels.hpp"
#include "jfft/planner.hpp"

namespace jfft {

/// Multiply-add count of one apply. A multiplication, an addition or a fused
/// multiply-add each count as one; index moves count as zero.
struct OpCounter {
  std::uint64_t muladds = 0;

  OpCounter& operator+=(const OpCounter& other) {
    muladds += other.muladds;
    return *this;
  }
};

/// Values indexed by the vertices of J(n,k) in enumerate_points order.
struct FunctionVector {
  ProblemDims dims;
  std::vector<double> values;

  static FunctionVector zeros(const ProblemDims& dims) { return {dims, std::vector<double>(dims.dim, 0.0)}; }
};

/// Coordinates in the Gelfand-Tsetlin basis, indexed by the level-n labels in canonical order.
struct GTVector {
  ProblemDims dims;
  std::vector<double> values;
};

template <typename T>
struct Counted {
  T value;
  OpCounter ops;
};

/// A FactorPlan compiled into per-level gather maps and structure-of-arrays rotation
/// coefficients. Immutable; any number of threads may apply it concurrently.
class FourierEngine {
 public:
  explicit FourierEngine(const FactorPlan& plan, const KernelTable& kernels = kernels::best());

  const ProblemDims& dims() const { return dims_; }
  const KernelTable& kernels() const { return *kernels_; }

  /// Tableau of every GT coordinate, canonical B_n order.
  const std::vector<Tableau>& gt_tableaux() const { return gt_tableaux_; }
  /// Row-2 length a of every GT coordinate's shape (n-a, a).
  const std::vector<int>& gt_shape() const { return gt_shape_; }

  void forward(std::span<const double> in, std::span<double> out, OpCounter& ops) const;
  void inverse(std::span<const double> in, std::span<double> out, OpCounter& ops) const;
  /// out = sum over a in `keep` of the isotypic components of `in`. keep[a] selects a.
  void project(std::span<const double> in, std::span<double> out, std::span<const bool> keep, OpCounter& ops) const;
  /// weights[a] = squared norm of the component of shape (n-a, a); weights.size() == s+1.
  void weights(std::span<const double> in, std::span<double> weights, OpCounter& ops) const;

 private:
  struct Stage {
    std::vector<std::uint32_t> gather;   // this level's layout <- previous layout
    std::vector<std::uint32_t> scatter;  // previous layout <- this level's layout
    std::size_t pairs = 0;
    std::vector<double> c00, c01, c10, c11;
  };

  void run_forward(std::vector<double>& a, std::vector<double>& b, OpCounter& ops) const;
  void run_inverse(std::vector<double>& a, std::vector<double>& b, OpCounter& ops) const;

  ProblemDims dims_;
  const KernelTable* kernels_;
  std::vector<Stage> stages_;
  std::vector<std::uint32_t> to_canonical_;    // GT index t <- final layout
  std::vector<std::uint32_t> from_canonical_;  // final layout <- GT index t
  std::vector<std::uint32_t> by_shape_;        // final layout positions grouped by a
  std::vector<std::size_t> shape_offsets_;     // group a spans [offsets[a], offsets[a+1])
  std::vector<int> layout_shape_;              // a of each final layout position
  std::vector<Tableau> gt_tableaux_;
  std::vector<int> gt_shape_;
};

Counted<GTVector> apply_forward(const FourierEngine& engine, const FunctionVector& f);
Counted<FunctionVector> apply_inverse(const FourierEngine& engine, const GTVector& g);
/// f_H for H a subset of {0..s}; throws InputError for a > s.
Counted<FunctionVector> project(const FourierEngine& engine, const FunctionVector& f, std::span<const int> components);
Counted<std::vector<double>> weights(const FourierEngine& engine, const FunctionVector& f);

Counted<GTVector> apply_forward(const FactorPlan& plan, const FunctionVector& f);
Counted<FunctionVector> apply_inverse(const FactorPlan& plan, const GTVector& g);
Counted<FunctionVector> project(const FactorPlan& plan, const FunctionVector& f, std::span<const int> components);
Counted<std::vector<double>> weights(const FactorPlan& plan, const FunctionVector& f);

/// Complex input as two real transforms of the real and imaginary parts.
Counted<std::vector<std::complex<double>>> apply_forward(const FourierEngine& engine,
                                                         std::span<const std::complex<double>> f);

/// Rows are the GT basis vectors written in the delta basis (row t = inverse of e_t).
/// Row-major dim x dim; checked against the memory budget.
std::vector<double> gt_basis_rows(const FourierEngine& engine, std::uint64_t memory_budget = memory_budget_bytes());

}  // namespace jfft
