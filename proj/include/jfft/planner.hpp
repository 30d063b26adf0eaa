#pragma once

// Construction of the sparse factor sequence [B_1]_{B_2}, ..., [B_{n-1}]_{B_n}.
//
// Level i couples B_{i-1} and B_i through blocks keyed by a frame (T, w): T a tableau
// with i-1 boxes and w a tail of length n-i. The sources of the block are the admissible
// labels (T, 1w), (T, 2w) of B_{i-1}; the destinations are the admissible extensions of T
// by box i, with tail w. Every block is 1x1 or 2x2. The 2x2 coefficients come from
// diagonalizing the Jucys-Murphy operator X_i = (1 i) + ... + (i-1 i) on the span of the
// two sources; its eigenvalues there are the contents of the two candidate boxes.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "jfft/budget.hpp"
#include "jfft/core.hpp"

namespace jfft {

inline constexpr int kPlanFormatVersion = 1;

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// 2x2 orthogonal block. Rows follow the destinations (row-1 extension, then row-2),
/// columns follow the sources (letter-1 predecessor, then letter-2).
struct Rotation {
  Matrix2 r{};

  friend bool operator==(const Rotation&, const Rotation&) = default;
};

struct Block {
  int level = 0;
  Tableau frame_tab;  // i-1 boxes
  Word frame_tail;    // n-i letters
  std::vector<std::uint32_t> srcs;  // indices into B_{i-1}
  std::vector<std::uint32_t> dsts;  // indices into B_i
  std::optional<Rotation> coeffs;   // present iff the block is a pair

  bool is_pair() const { return srcs.size() == 2; }

  friend bool operator==(const Block&, const Block&) = default;
};

struct FactorLevel {
  int i = 0;
  std::vector<Block> blocks;

  friend bool operator==(const FactorLevel&, const FactorLevel&) = default;
};

struct FactorPlan {
  ProblemDims dims;
  std::vector<FactorLevel> levels;  // i = 2..n, in order
  int format_version = kPlanFormatVersion;

  friend bool operator==(const FactorPlan&, const FactorPlan&) = default;
};

struct PlannerOptions {
  double content_tolerance = 1e-6;
  double orthogonality_tolerance = 1e-12;
  double symmetry_tolerance = 1e-10;
  /// Bound on ||X_i v - c v|| for every vector produced at level i.
  double residual_tolerance = 1e-8;
  std::uint64_t memory_budget = memory_budget_bytes();
};

/// Admissible labels of B_{i-1} sharing a frame with `label` (letter 1 first). Never empty.
std::vector<BasisLabel> predecessors(const BasisLabel& label, const ProblemDims& dims);

/// Block skeletons (no coefficients) of level i, ordered canonically by frame.
std::vector<Block> group_blocks(const ProblemDims& dims, int level);

/// Action of X_length on functions of words with `length` letters and `ones` ones,
/// indexed in lexicographic order. Each transposition (j, length) swaps two letters.
class YjmAction {
 public:
  YjmAction(int length, int ones);

  int length() const { return length_; }
  int ones() const { return ones_; }
  std::size_t size() const { return size_; }

  /// out = X_length in. `in` and `out` must not alias.
  void apply(std::span<const double> in, std::span<double> out) const;

 private:
  int length_;
  int ones_;
  std::size_t size_;
  // neighbors_[u * (length-1) + j]: index of the word obtained by swapping letters j and length-1 of u.
  std::vector<std::uint32_t> neighbors_;
};

/// Gram matrix m[p][q] = <b_p, X b_q> on the span of two orthonormal vectors.
/// Throws NumericalError when asymmetric beyond `symmetry_tolerance`.
Matrix2 yjm_block_matrix(std::span<const double> b1, std::span<const double> b2, const YjmAction& action,
                         double symmetry_tolerance = 1e-10);

/// Orthogonal change of basis diagonalizing a symmetric 2x2 block whose eigenvalues must be
/// the contents p and q-1 of the two boxes that can extend `frame_shape` = (p, q).
/// Row 0 is the eigenvector for p; each row is sign-normalized (letter-1 entry >= 0,
/// letter-2 entry > 0 when the first vanishes).
Rotation rotation_from_block(const Matrix2& m, TwoRowShape frame_shape, double content_tolerance = 1e-6);

/// True when R^T R = I within `tolerance` and both rows satisfy the sign convention.
bool rotation_is_normalized(const Rotation& rot, double tolerance = 1e-12);

FactorPlan build_plan(const ProblemDims& dims, const PlannerOptions& options = {});

/// Checks that `plan` has the skeleton group_blocks produces at every level and that every
/// pair block carries a normalized orthogonal rotation. Throws VerificationError.
void validate_plan(const FactorPlan& plan, double orthogonality_tolerance = 1e-12);

/// Largest number of nonzero couplings of any source or destination index at one level.
std::size_t max_coupling_degree(const FactorLevel& level, std::size_t dim, double zero_tolerance = 0.0);

}  // namespace jfft
