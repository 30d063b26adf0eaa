#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jfft/oracle.hpp"
#include "jfft/planner.hpp"
#include "jfft/transform.hpp"

namespace jfft {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool passed() const;
};

struct VerifyOptions {
  std::size_t random_vectors = 10;
  std::uint64_t seed = 20240917;
  double orthogonality_tolerance = 1e-12;
  double round_trip_tolerance = 1e-10;
  double parseval_tolerance = 1e-10;
  double gt_residual_tolerance = 1e-8;
  double oracle_tolerance = 1e-8;
  /// GT characterization checks every column up to this many, an even sample beyond.
  std::size_t max_gt_columns = 2048;
  bool with_oracle = false;
  OracleOptions oracle;
};

/// Runs every plan invariant; never throws for a failing check, records it instead.
VerifyReport verify_plan(const FactorPlan& plan, const VerifyOptions& options = {});

/// Max over the given GT columns v and i = 1..n of |X_i v - c_i v|, where c_i is the
/// content of box i of the column's tableau.
double max_gt_residual(const FourierEngine& engine, std::span<const std::size_t> columns);

}  // namespace jfft
