#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "jfft/core.hpp"
#include "jfft/errors.hpp"
#include "jfft/oracle.hpp"
#include "jfft/planner.hpp"

using namespace jfft;

namespace {

using Mat = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

Mat view(const DenseOperator& op) {
  return Mat(op.entries.data(), static_cast<Eigen::Index>(op.rows), static_cast<Eigen::Index>(op.cols));
}

std::uint64_t multiplicity(int n, int a) { return binomial(n, a) - binomial(n, a - 1); }

}  // namespace

TEST_CASE("adjacency examples") {
  const DenseOperator a21 = adjacency(ProblemDims::make(2, 1));
  CHECK(a21.entries == std::vector<double>{0, 1, 1, 0});

  const DenseOperator a0 = adjacency(ProblemDims::make(4, 0));
  CHECK(a0.rows == 1);
  CHECK(a0.entries == std::vector<double>{0});

  for (int n = 1; n <= 9; ++n) {
    for (int k = 0; k <= n; ++k) {
      const ProblemDims d = ProblemDims::make(n, k);
      const DenseOperator a = adjacency(d);
      const auto pts = enumerate_points(d);
      CHECK(a.asymmetry() == 0.0);
      for (std::size_t x = 0; x < a.rows; ++x) {
        double sum = 0.0;
        for (std::size_t y = 0; y < a.cols; ++y) {
          // Adjacent iff the subsets share k-1 elements.
          const auto sx = subset_of_word(pts[x]);
          const auto sy = subset_of_word(pts[y]);
          std::vector<int> common;
          std::set_intersection(sx.begin(), sx.end(), sy.begin(), sy.end(), std::back_inserter(common));
          CHECK(a(x, y) == (static_cast<int>(common.size()) == k - 1 ? 1.0 : 0.0));
          sum += a(x, y);
        }
        CHECK(sum == static_cast<double>(k * (n - k)));
      }
    }
  }
  const DenseOperator a52 = adjacency(ProblemDims::make(5, 2));
  for (std::size_t x = 0; x < a52.rows; ++x) CHECK(view(a52).row(static_cast<Eigen::Index>(x)).sum() == 6.0);
}

TEST_CASE("isotypic projector examples") {
  const auto p21 = isotypic_projectors(ProblemDims::make(2, 1));
  REQUIRE(p21.size() == 2);
  for (double v : p21[0].entries) CHECK(std::abs(v - 0.5) < 1e-12);

  const auto p42 = isotypic_projectors(ProblemDims::make(4, 2));
  REQUIRE(p42.size() == 3);
  CHECK(std::abs(view(p42[0]).trace() - 1.0) < 1e-9);
  CHECK(std::abs(view(p42[1]).trace() - 3.0) < 1e-9);
  CHECK(std::abs(view(p42[2]).trace() - 2.0) < 1e-9);
}

TEST_CASE("projector identities (n <= 10, all k)") {
  for (int n = 1; n <= 10; ++n) {
    for (int k = 0; k <= n; ++k) {
      const ProblemDims d = ProblemDims::make(n, k);
      const auto ps = isotypic_projectors(d);
      REQUIRE(ps.size() == static_cast<std::size_t>(d.s) + 1);
      const auto C = static_cast<Eigen::Index>(d.dim);
      Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(C, C);
      for (std::size_t a = 0; a < ps.size(); ++a) {
        const Eigen::MatrixXd pa = view(ps[a]);
        sum += pa;
        CHECK((pa * pa - pa).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK((pa - pa.transpose()).cwiseAbs().maxCoeff() <= 1e-9);
        for (std::size_t b = a + 1; b < ps.size(); ++b) CHECK((pa * view(ps[b])).cwiseAbs().maxCoeff() <= 1e-9);
        // Vertex transitivity: every delta carries the same share of component a.
        const double share = static_cast<double>(multiplicity(n, static_cast<int>(a))) / static_cast<double>(d.dim);
        CHECK((pa.diagonal().array() - share).abs().maxCoeff() <= 1e-10);
      }
      CHECK((sum - Eigen::MatrixXd::Identity(C, C)).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("eigenvalue groups number s+1 (n <= 12)") {
  for (int n = 11; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      const ProblemDims d = ProblemDims::make(n, k);
      CHECK(isotypic_projectors(d).size() == static_cast<std::size_t>(d.s) + 1);
    }
  }
}

TEST_CASE("oracle respects its size cap") {
  OracleOptions tiny;
  tiny.max_dim = 10;
  CHECK_THROWS_AS(adjacency(ProblemDims::make(6, 3), tiny), BudgetError);
  CHECK_THROWS_AS(gt_reference_basis(ProblemDims::make(6, 3), tiny), BudgetError);
}

TEST_CASE("reference GT basis n=2 k=1") {
  const GTReferenceBasis ref = gt_reference_basis(ProblemDims::make(2, 1));
  REQUIRE(ref.tableaux.size() == 2);
  CHECK(ref.tableaux[0].rowseq == "11");
  CHECK(ref.tableaux[1].rowseq == "12");
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(ref.columns(0, 0) - h) < 1e-12);
  CHECK(std::abs(ref.columns(1, 0) - h) < 1e-12);
  CHECK(std::abs(ref.columns(0, 1) - h) < 1e-12);
  CHECK(std::abs(ref.columns(1, 1) + h) < 1e-12);
}

TEST_CASE("reference GT basis: eigenvectors, labels and order independence (n <= 8)") {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      const ProblemDims d = ProblemDims::make(n, k);
      const GTReferenceBasis asc = gt_reference_basis(d);
      const GTReferenceBasis desc = gt_reference_basis(d, {}, RefinementOrder::kDescending);

      std::vector<std::string> expected;
      const LevelBasis top(d, n);
      for (const auto& label : top.labels()) expected.push_back(label.tab.rowseq);
      std::sort(expected.begin(), expected.end());
      std::vector<std::string> got;
      for (const Tableau& t : asc.tableaux) got.push_back(t.rowseq);
      CHECK(got == expected);
      for (std::size_t j = 0; j < asc.tableaux.size(); ++j) CHECK(asc.eigenvalues[j] == tableau_contents(asc.tableaux[j]));

      const PointYjm yjm(d);
      const std::size_t C = d.dim;
      std::vector<double> col(C), out(C);
      double worst = 0.0;
      for (std::size_t j = 0; j < C; ++j) {
        for (std::size_t x = 0; x < C; ++x) col[x] = asc.columns(x, j);
        for (int i = 1; i <= n; ++i) {
          yjm.apply(i, col, out);
          const double c = asc.eigenvalues[j][static_cast<std::size_t>(i - 1)];
          for (std::size_t x = 0; x < C; ++x) worst = std::max(worst, std::abs(out[x] - c * col[x]));
        }
      }
      CHECK(worst <= 1e-8);

      REQUIRE(desc.tableaux == asc.tableaux);
      double deviation = 0.0;
      for (std::size_t j = 0; j < C; ++j) {
        double dot = 0.0;
        for (std::size_t x = 0; x < C; ++x) dot += asc.columns(x, j) * desc.columns(x, j);
        deviation = std::max(deviation, 1.0 - std::abs(dot));
      }
      CHECK(deviation <= 1e-8);
    }
  }
}

TEST_CASE("plans agree with the oracle (n <= 8)") {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      const ProblemDims d = ProblemDims::make(n, k);
      const OracleReport r = compare_plan_to_oracle(build_plan(d));
      CHECK(r.columns_compared == d.dim);
      CHECK(r.vectors_compared == 20);
      CHECK(r.max_column_deviation <= 1e-8);
      CHECK(r.max_projector_error <= 1e-8);
      if (k == 0) CHECK(r.max_column_deviation == 0.0);
    }
  }
}
