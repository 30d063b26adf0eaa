#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "jfft/core.hpp"
#include "jfft/errors.hpp"
#include "jfft/planner.hpp"

using namespace jfft;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::multiset<std::size_t> block_sizes(const std::vector<Block>& blocks) {
  std::multiset<std::size_t> out;
  for (const Block& b : blocks) out.insert(b.srcs.size());
  return out;
}

// Rows of the dense product [B_0]_{B_n}: row t is GT basis vector t in the delta basis.
// Built directly from the plan's blocks, without the transform engine.
std::vector<std::vector<double>> dense_product(const FactorPlan& plan) {
  const ProblemDims& d = plan.dims;
  const std::size_t dim = d.dim;
  // B_1 is B_0 reordered: label (tab "1", w) is the delta of the single completing letter followed by w.
  std::vector<std::vector<double>> rows(dim, std::vector<double>(dim, 0.0));
  const LevelBasis b1(d, 1);
  for (std::size_t j = 0; j < dim; ++j) {
    const Word& w = b1[j].tail;
    const std::string point = std::string(1, d.k - w.ones() == 1 ? '1' : '2') + w.letters;
    rows[j][word_rank(point)] = 1.0;
  }
  for (const FactorLevel& level : plan.levels) {
    std::vector<std::vector<double>> next(dim);
    for (const Block& b : level.blocks) {
      if (!b.is_pair()) {
        next[b.dsts[0]] = rows[b.srcs[0]];
        continue;
      }
      for (int r = 0; r < 2; ++r) {
        std::vector<double> v(dim);
        for (std::size_t x = 0; x < dim; ++x) {
          v[x] = b.coeffs->r[r][0] * rows[b.srcs[0]][x] + b.coeffs->r[r][1] * rows[b.srcs[1]][x];
        }
        next[b.dsts[r]] = std::move(v);
      }
    }
    rows = std::move(next);
  }
  return rows;
}

// (X_i v)(x) = sum_{j<i} v(x with letters j,i swapped), straight from the word definition.
std::vector<double> apply_x(const ProblemDims& d, int i, const std::vector<double>& v) {
  const auto pts = enumerate_points(d);
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t t = 0; t < pts.size(); ++t) {
    for (int j = 1; j < i; ++j) {
      std::string s = pts[t].letters;
      std::swap(s[static_cast<std::size_t>(j - 1)], s[static_cast<std::size_t>(i - 1)]);
      out[t] += v[word_rank(s)];
    }
  }
  return out;
}

int content_of_box(const std::string& rowseq, int box) {
  const char row = rowseq[static_cast<std::size_t>(box - 1)];
  const int column = static_cast<int>(std::count(rowseq.begin(), rowseq.begin() + (box - 1), row));
  return column - (row - '1');
}

}  // namespace

TEST_CASE("predecessors") {
  const ProblemDims d21 = ProblemDims::make(2, 1);
  auto p = predecessors(BasisLabel{Tableau{"11"}, Word{}}, d21);
  REQUIRE(p.size() == 2);
  CHECK(p[0] == BasisLabel{Tableau{"1"}, Word{"1"}});
  CHECK(p[1] == BasisLabel{Tableau{"1"}, Word{"2"}});

  const ProblemDims d42 = ProblemDims::make(4, 2);
  p = predecessors(BasisLabel{Tableau{"1122"}, Word{}}, d42);
  REQUIRE(p.size() == 2);
  CHECK(p[0] == BasisLabel{Tableau{"112"}, Word{"1"}});
  CHECK(p[1] == BasisLabel{Tableau{"112"}, Word{"2"}});

  // Tail "1" already holds the only one: prefixing another 1 would need r = -1.
  p = predecessors(BasisLabel{Tableau{"11"}, Word{"1"}}, ProblemDims::make(3, 1));
  REQUIRE(p.size() == 1);
  CHECK(p[0] == BasisLabel{Tableau{"1"}, Word{"21"}});

  CHECK_THROWS_AS(predecessors(BasisLabel{Tableau{"1221"}, Word{}}, d42), InputError);
}

TEST_CASE("group_blocks block multisets") {
  const ProblemDims d42 = ProblemDims::make(4, 2);
  CHECK(block_sizes(group_blocks(d42, 2)) == std::multiset<std::size_t>{1, 1, 2, 2});
  CHECK(block_sizes(group_blocks(d42, 3)) == std::multiset<std::size_t>{1, 1, 2, 2});
  CHECK(block_sizes(group_blocks(d42, 4)) == std::multiset<std::size_t>{2, 2, 2});
  CHECK(block_sizes(group_blocks(ProblemDims::make(2, 1), 2)) == std::multiset<std::size_t>{2});
  CHECK_THROWS_AS(group_blocks(d42, 1), InputError);
  CHECK_THROWS_AS(group_blocks(d42, 5), InputError);
}

TEST_CASE("blocks partition both bases at every level (exhaustive, n <= 12)") {
  for (int n = 2; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      const ProblemDims d = ProblemDims::make(n, k);
      for (int i = 2; i <= n; ++i) {
        const LevelBasis prev(d, i - 1);
        const LevelBasis cur(d, i);
        std::vector<int> src_hits(d.dim, 0);
        std::vector<int> dst_hits(d.dim, 0);
        for (const Block& b : group_blocks(d, i)) {
          REQUIRE(b.srcs.size() == b.dsts.size());
          REQUIRE((b.srcs.size() == 1 || b.srcs.size() == 2));
          CHECK_FALSE(b.coeffs.has_value());
          for (std::size_t j = 0; j < b.srcs.size(); ++j) {
            ++src_hits[b.srcs[j]];
            ++dst_hits[b.dsts[j]];
            // Sources are (T, c w), letter 1 first; destinations extend T, row 1 first.
            const BasisLabel& s = prev[b.srcs[j]];
            const BasisLabel& t = cur[b.dsts[j]];
            CHECK(s.tab == b.frame_tab);
            CHECK(s.tail.letters.substr(1) == b.frame_tail.letters);
            CHECK(t.tail == b.frame_tail);
            CHECK(t.tab.rowseq.substr(0, t.tab.rowseq.size() - 1) == b.frame_tab.rowseq);
            if (b.srcs.size() == 2) {
              CHECK(s.tail.letters[0] == (j == 0 ? '1' : '2'));
              CHECK(t.tab.rowseq.back() == (j == 0 ? '1' : '2'));
            }
          }
        }
        CHECK(std::all_of(src_hits.begin(), src_hits.end(), [](int h) { return h == 1; }));
        CHECK(std::all_of(dst_hits.begin(), dst_hits.end(), [](int h) { return h == 1; }));
      }
    }
  }
}

TEST_CASE("yjm_block_matrix") {
  // Words of length 2 with one 1: "12" (index 0), "21" (index 1). X_2 = (1 2) swaps them.
  const YjmAction x2(2, 1);
  const std::vector<double> b1{0.0, 1.0};  // delta "21"
  const std::vector<double> b2{1.0, 0.0};  // delta "12"
  const Matrix2 m = yjm_block_matrix(b1, b2, x2);
  CHECK(m[0][0] == 0.0);
  CHECK(m[0][1] == 1.0);
  CHECK(m[1][0] == 1.0);
  CHECK(m[1][1] == 0.0);

  // X on length 3 with one 1: (1 3) + (2 3). Constant vector is fixed with eigenvalue 2.
  const YjmAction x3(3, 1);
  std::vector<double> ones(3, 1.0 / std::sqrt(3.0));
  std::vector<double> out(3);
  x3.apply(ones, out);
  for (double v : out) CHECK(v == doctest::Approx(2.0 / std::sqrt(3.0)));
  CHECK_THROWS_AS(YjmAction(0, 0), InputError);
}

TEST_CASE("rotation_from_block examples") {
  const Rotation swap_pair = rotation_from_block(Matrix2{{{0.0, 1.0}, {1.0, 0.0}}}, TwoRowShape{1, 0});
  CHECK(swap_pair.r[0][0] == doctest::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(swap_pair.r[0][1] == doctest::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(swap_pair.r[1][0] == doctest::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(swap_pair.r[1][1] == doctest::Approx(-kInvSqrt2).epsilon(1e-15));

  // Frame (3,1): contents 3 (row 1) and 0 (row 2).
  const Rotation id = rotation_from_block(Matrix2{{{3.0, 0.0}, {0.0, 0.0}}}, TwoRowShape{3, 1});
  CHECK(id.r == Matrix2{{{1.0, 0.0}, {0.0, 1.0}}});
  const Rotation anti = rotation_from_block(Matrix2{{{0.0, 0.0}, {0.0, 3.0}}}, TwoRowShape{3, 1});
  CHECK(anti.r == Matrix2{{{0.0, 1.0}, {1.0, 0.0}}});

  CHECK_THROWS_AS(rotation_from_block(Matrix2{{{0.0, 2.0}, {2.0, 0.0}}}, TwoRowShape{1, 0}), VerificationError);
}

TEST_CASE("rotation_from_block recovers hand-built eigenvectors") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 1 + trial % 6;
    const int q = std::min(p, trial % 4);
    const double hi = p;
    const double lo = q - 1;
    const double t = angle(rng);
    const double c = std::cos(t);
    const double s = std::sin(t);
    // Eigenvector (c, s) for hi, (-s, c) for lo.
    const Matrix2 m{{{hi * c * c + lo * s * s, (hi - lo) * c * s}, {(hi - lo) * c * s, hi * s * s + lo * c * c}}};
    const Rotation r = rotation_from_block(m, TwoRowShape{p, q});
    CHECK(rotation_is_normalized(r));
    // Row 0 is parallel to (c, s), row 1 to (-s, c).
    CHECK(std::abs(r.r[0][0] * s - r.r[0][1] * c) < 1e-12);
    CHECK(std::abs(r.r[1][0] * c + r.r[1][1] * s) < 1e-12);
    // R M R^T = diag(hi, lo).
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        double v = 0.0;
        for (int x = 0; x < 2; ++x) {
          for (int y = 0; y < 2; ++y) v += r.r[a][x] * m[x][y] * r.r[b][y];
        }
        CHECK(std::abs(v - (a != b ? 0.0 : a == 0 ? hi : lo)) < 1e-12);
      }
    }
  }
}

TEST_CASE("rotation_is_normalized") {
  CHECK(rotation_is_normalized(Rotation{Matrix2{{{1.0, 0.0}, {0.0, 1.0}}}}));
  CHECK_FALSE(rotation_is_normalized(Rotation{Matrix2{{{-1.0, 0.0}, {0.0, 1.0}}}}));
  CHECK_FALSE(rotation_is_normalized(Rotation{Matrix2{{{0.0, -1.0}, {1.0, 0.0}}}}));
  CHECK_FALSE(rotation_is_normalized(Rotation{Matrix2{{{1.0, 0.1}, {0.0, 1.0}}}}));
}

TEST_CASE("build_plan examples") {
  const FactorPlan p21 = build_plan(ProblemDims::make(2, 1));
  REQUIRE(p21.levels.size() == 1);
  REQUIRE(p21.levels[0].blocks.size() == 1);
  const Block& b = p21.levels[0].blocks[0];
  REQUIRE(b.coeffs.has_value());
  for (const auto& row : b.coeffs->r) {
    for (double v : row) CHECK(std::abs(std::abs(v) - kInvSqrt2) < 1e-15);
  }

  const FactorPlan p42 = build_plan(ProblemDims::make(4, 2));
  REQUIRE(p42.levels.size() == 3);
  CHECK(block_sizes(p42.levels[0].blocks) == std::multiset<std::size_t>{1, 1, 2, 2});
  CHECK(block_sizes(p42.levels[1].blocks) == std::multiset<std::size_t>{1, 1, 2, 2});
  CHECK(block_sizes(p42.levels[2].blocks) == std::multiset<std::size_t>{2, 2, 2});

  CHECK(build_plan(ProblemDims::make(1, 0)).levels.empty());
  for (int n = 2; n <= 9; ++n) {
    for (int k : {0, n}) {
      const FactorPlan p = build_plan(ProblemDims::make(n, k));
      REQUIRE(p.levels.size() == static_cast<std::size_t>(n - 1));
      for (const FactorLevel& level : p.levels) {
        REQUIRE(level.blocks.size() == 1);
        CHECK_FALSE(level.blocks[0].is_pair());
      }
    }
  }

  PlannerOptions tight;
  tight.memory_budget = 16;
  CHECK_THROWS_AS(build_plan(ProblemDims::make(6, 3), tight), BudgetError);
}

TEST_CASE("built plans are normalized and sparse (n <= 12)") {
  for (int n = 2; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      const FactorPlan plan = build_plan(ProblemDims::make(n, k));
      CHECK_NOTHROW(validate_plan(plan));
      for (const FactorLevel& level : plan.levels) {
        CHECK(max_coupling_degree(level, plan.dims.dim) <= 2);
        for (const Block& b : level.blocks) {
          if (b.is_pair()) CHECK(rotation_is_normalized(*b.coeffs));
        }
      }
    }
  }
}

TEST_CASE("dense product is orthogonal (n <= 10)") {
  for (int n = 2; n <= 10; ++n) {
    for (int k = 0; k <= n; ++k) {
      const FactorPlan plan = build_plan(ProblemDims::make(n, k));
      const auto rows = dense_product(plan);
      double worst = 0.0;
      for (std::size_t a = 0; a < rows.size(); ++a) {
        for (std::size_t b = a; b < rows.size(); ++b) {
          double dot = 0.0;
          for (std::size_t x = 0; x < rows.size(); ++x) dot += rows[a][x] * rows[b][x];
          worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
        }
      }
      CHECK_MESSAGE(worst <= 1e-10, "n=" << n << " k=" << k << " worst=" << worst);
    }
  }
}

TEST_CASE("final columns are X_i eigenvectors with the tableau contents (n <= 8)") {
  for (int n = 2; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      const ProblemDims d = ProblemDims::make(n, k);
      const auto rows = dense_product(build_plan(d));
      const LevelBasis top(d, n);
      double worst = 0.0;
      for (std::size_t t = 0; t < rows.size(); ++t) {
        const std::string& rowseq = top[t].tab.rowseq;
        for (int i = 1; i <= n; ++i) {
          const auto xv = apply_x(d, i, rows[t]);
          const int c = content_of_box(rowseq, i);
          for (std::size_t x = 0; x < xv.size(); ++x) worst = std::max(worst, std::abs(xv[x] - c * rows[t][x]));
        }
      }
      CHECK_MESSAGE(worst <= 1e-8, "n=" << n << " k=" << k << " worst=" << worst);
    }
  }
}

TEST_CASE("RS paths step between related labels (n <= 10)") {
  for (int n = 2; n <= 10; ++n) {
    for (int k = 0; k <= n; ++k) {
      const ProblemDims d = ProblemDims::make(n, k);
      std::vector<std::map<std::pair<std::uint32_t, std::uint32_t>, bool>> related(static_cast<std::size_t>(n) + 1);
      std::vector<LevelBasis> bases;
      for (int i = 0; i <= n; ++i) bases.emplace_back(d, i);
      for (int i = 2; i <= n; ++i) {
        for (const Block& b : group_blocks(d, i)) {
          for (auto s : b.srcs) {
            for (auto t : b.dsts) related[static_cast<std::size_t>(i)][{s, t}] = true;
          }
        }
      }
      for (const Word& x : enumerate_points(d)) {
        const auto path = rs_path(x, d);
        for (int i = 2; i <= n; ++i) {
          const auto s = static_cast<std::uint32_t>(bases[static_cast<std::size_t>(i - 1)].index_of(path[static_cast<std::size_t>(i - 1)]));
          const auto t = static_cast<std::uint32_t>(bases[static_cast<std::size_t>(i)].index_of(path[static_cast<std::size_t>(i)]));
          CHECK(related[static_cast<std::size_t>(i)].count({s, t}) == 1);
        }
      }
    }
  }
}

TEST_CASE("validate_plan rejects broken plans") {
  FactorPlan plan = build_plan(ProblemDims::make(5, 2));
  CHECK_NOTHROW(validate_plan(plan));

  FactorPlan missing_level = plan;
  missing_level.levels.pop_back();
  CHECK_THROWS_AS(validate_plan(missing_level), VerificationError);

  FactorPlan bad_sign = plan;
  for (Block& b : bad_sign.levels[1].blocks) {
    if (b.is_pair()) {
      b.coeffs->r[0][0] = -b.coeffs->r[0][0];
      b.coeffs->r[0][1] = -b.coeffs->r[0][1];
      break;
    }
  }
  CHECK_THROWS_AS(validate_plan(bad_sign), VerificationError);

  FactorPlan bad_version = plan;
  bad_version.format_version = 2;
  CHECK_THROWS_AS(validate_plan(bad_version), VerificationError);
}
