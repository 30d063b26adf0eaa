#pragma once

// Brute-force ground truth at desk scale: the adjacency operator of J(n,k), its eigenspace
// projectors, and a reference Gelfand-Tsetlin basis obtained by splitting the whole space
// successively into eigenspaces of the Jucys-Murphy operators. Everything here is dense and
// O(C(n,k)^3); none of it goes through the planner or the transform engine.

#include <cstdint>
#include <span>
#include <vector>

#include "jfft/budget.hpp"
#include "jfft/core.hpp"
#include "jfft/planner.hpp"

namespace jfft {

struct DenseOperator {
  ProblemDims dims;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;  // row-major

  double& operator()(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

  /// Largest |A - A^T| entry.
  double asymmetry() const;
  std::vector<double> apply(std::span<const double> x) const;
};

struct OracleOptions {
  std::uint64_t max_dim = 5000;
  double group_tolerance = 1e-6;
  std::uint64_t memory_budget = memory_budget_bytes();
};

/// A[x][y] = 1 iff x and y are adjacent in J(n,k).
DenseOperator adjacency(const ProblemDims& dims, const OracleOptions& options = {});

/// P_0..P_s: projectors onto the adjacency eigenspaces, ordered by eigenvalue descending.
/// Throws VerificationError on a wrong group count or multiplicity.
std::vector<DenseOperator> isotypic_projectors(const ProblemDims& dims, const OracleOptions& options = {});

/// (X_i v)(x) = sum over j < i of v(x with letters j and i swapped); i is 1-based.
/// Direct word manipulation over enumerate_points order.
class PointYjm {
 public:
  explicit PointYjm(const ProblemDims& dims);
  void apply(int i, std::span<const double> in, std::span<double> out) const;
  const ProblemDims& dims() const { return dims_; }

 private:
  ProblemDims dims_;
  // swaps_[(i-1)][j][x]: index of x with letters j and i-1 (0-based) exchanged.
  std::vector<std::vector<std::vector<std::uint32_t>>> swaps_;
};

enum class RefinementOrder { kAscending, kDescending };

struct GTReferenceBasis {
  DenseOperator columns;                       // column j is the line labeled tableaux[j]
  std::vector<Tableau> tableaux;               // sorted by row sequence
  std::vector<std::vector<int>> eigenvalues;   // X_1..X_n eigenvalues of each column
};

GTReferenceBasis gt_reference_basis(const ProblemDims& dims, const OracleOptions& options = {},
                                    RefinementOrder order = RefinementOrder::kAscending);

struct OracleReport {
  double max_column_deviation = 0.0;   // max over columns of 1 - |<plan column, reference column>|
  double max_projector_error = 0.0;    // max |project(f, {a}) - P_a f|
  std::size_t columns_compared = 0;
  std::size_t vectors_compared = 0;
};

OracleReport compare_plan_to_oracle(const FactorPlan& plan, const OracleOptions& options = {},
                                    std::uint64_t seed = 0x5eed, std::size_t random_vectors = 20);

}  // namespace jfft
