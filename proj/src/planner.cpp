#include "jfft/planner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "jfft/errors.hpp"

namespace jfft {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) sum += a[t] * b[t];
  return sum;
}

std::string describe(const Tableau& tab, const Word& tail) { return "(" + tab.rowseq + ", " + tail.letters + ")"; }

// Blocks between two adjacent bases. Keyed by the frame label (T, w) so iteration
// follows the canonical order.
std::vector<Block> group_between(const LevelBasis& prev, const LevelBasis& cur) {
  const int i = cur.level();
  std::map<BasisLabel, Block> frames;
  auto frame_of = [&](const Tableau& tab, const Word& tail) -> Block& {
    Block& b = frames[BasisLabel{tab, tail}];
    b.level = i;
    b.frame_tab = tab;
    b.frame_tail = tail;
    return b;
  };
  // prev and cur are in canonical order, which puts (T,1w) before (T,2w) and the
  // row-1 extension of T before the row-2 extension.
  for (std::size_t j = 0; j < prev.size(); ++j) {
    const BasisLabel& label = prev[j];
    frame_of(label.tab, Word{label.tail.letters.substr(1)}).srcs.push_back(static_cast<std::uint32_t>(j));
  }
  for (std::size_t j = 0; j < cur.size(); ++j) {
    const BasisLabel& label = cur[j];
    frame_of(label.tab.restrict(static_cast<std::size_t>(i - 1)), label.tail).dsts.push_back(static_cast<std::uint32_t>(j));
  }
  std::vector<Block> out;
  out.reserve(frames.size());
  for (auto& [key, block] : frames) {
    if (block.srcs.size() != block.dsts.size() || block.srcs.empty() || block.srcs.size() > 2) {
      throw ConsistencyError("frame " + describe(block.frame_tab, block.frame_tail) + " at level " + std::to_string(i) +
                             " has " + std::to_string(block.srcs.size()) + " sources and " +
                             std::to_string(block.dsts.size()) + " destinations");
    }
    if (block.is_pair()) {
      if (prev[block.srcs[0]].tail[0] != '1' || prev[block.srcs[1]].tail[0] != '2' ||
          cur[block.dsts[0]].tab.rowseq.back() != '1' || cur[block.dsts[1]].tab.rowseq.back() != '2') {
        throw ConsistencyError("pair block at " + describe(block.frame_tab, block.frame_tail) + " is misordered");
      }
    }
    out.push_back(std::move(block));
  }
  return out;
}

void normalize_row(std::array<double, 2>& row) {
  constexpr double kZero = 1e-12;
  const bool flip = row[0] < -kZero || (row[0] <= kZero && row[1] < 0.0);
  if (flip) {
    row[0] = -row[0];
    row[1] = -row[1];
  }
}

// Word spaces and embedding maps shared across blocks of one build.
class SpaceCache {
 public:
  const YjmAction& action(int length, int ones) {
    auto it = actions_.find({length, ones});
    if (it == actions_.end()) it = actions_.emplace(std::pair{length, ones}, YjmAction(length, ones)).first;
    return it->second;
  }

  // Position of u·letter among words of length+1 for every word u of the given length and ones.
  const std::vector<std::uint32_t>& embedding(int length, int ones, char letter) {
    const auto key = std::tuple{length, ones, letter};
    auto it = embeddings_.find(key);
    if (it == embeddings_.end()) {
      std::vector<std::uint32_t> map;
      for (const Word& u : enumerate_words(length, ones)) {
        map.push_back(static_cast<std::uint32_t>(word_rank(u.letters + letter)));
      }
      it = embeddings_.emplace(key, std::move(map)).first;
    }
    return it->second;
  }

 private:
  std::map<std::pair<int, int>, YjmAction> actions_;
  std::map<std::tuple<int, int, char>, std::vector<std::uint32_t>> embeddings_;
};

double residual_norm(std::span<const double> xv, std::span<const double> v, double eigenvalue) {
  double sum = 0.0;
  for (std::size_t t = 0; t < v.size(); ++t) {
    const double d = xv[t] - eigenvalue * v[t];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace

std::vector<BasisLabel> predecessors(const BasisLabel& label, const ProblemDims& dims) {
  const int i = label.level();
  if (i < 1 || !is_admissible(label, dims)) throw InputError("predecessors needs an admissible label with i >= 1");
  std::vector<BasisLabel> out;
  const Tableau restricted = label.tab.restrict(static_cast<std::size_t>(i - 1));
  for (char c : {'1', '2'}) {
    BasisLabel candidate{restricted, Word{std::string(1, c) + label.tail.letters}};
    if (is_admissible(candidate, dims)) out.push_back(std::move(candidate));
  }
  if (out.empty()) {
    throw ConsistencyError("label " + describe(label.tab, label.tail) + " has no admissible predecessor");
  }
  return out;
}

std::vector<Block> group_blocks(const ProblemDims& dims, int level) {
  if (level < 2 || level > dims.n) throw InputError("group_blocks needs 2 <= i <= n");
  return group_between(LevelBasis(dims, level - 1), LevelBasis(dims, level));
}

YjmAction::YjmAction(int length, int ones)
    : length_(length), ones_(ones), size_(static_cast<std::size_t>(binomial(length, ones))) {
  if (length < 1 || ones < 0 || ones > length) throw InputError("YjmAction needs 0 <= ones <= length, length >= 1");
  const std::size_t arms = static_cast<std::size_t>(length - 1);
  neighbors_.reserve(size_ * arms);
  const std::size_t last = static_cast<std::size_t>(length - 1);
  for (const Word& u : enumerate_words(length, ones)) {
    for (std::size_t j = 0; j < arms; ++j) {
      std::string swapped = u.letters;
      std::swap(swapped[j], swapped[last]);
      neighbors_.push_back(static_cast<std::uint32_t>(word_rank(swapped)));
    }
  }
}

void YjmAction::apply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != size_ || out.size() != size_) throw InputError("YjmAction::apply: vector length mismatch");
  const std::size_t arms = static_cast<std::size_t>(length_ - 1);
  for (std::size_t t = 0; t < size_; ++t) {
    const std::uint32_t* nb = neighbors_.data() + t * arms;
    double sum = 0.0;
    for (std::size_t j = 0; j < arms; ++j) sum += in[nb[j]];
    out[t] = sum;
  }
}

Matrix2 yjm_block_matrix(std::span<const double> b1, std::span<const double> b2, const YjmAction& action,
                         double symmetry_tolerance) {
  std::vector<double> x1(action.size());
  std::vector<double> x2(action.size());
  action.apply(b1, x1);
  action.apply(b2, x2);
  Matrix2 m{};
  m[0][0] = dot(b1, x1);
  m[0][1] = dot(b1, x2);
  m[1][0] = dot(b2, x1);
  m[1][1] = dot(b2, x2);
  if (std::abs(m[0][1] - m[1][0]) > symmetry_tolerance) {
    throw NumericalError("Jucys-Murphy block matrix is not symmetric: " + std::to_string(m[0][1]) + " vs " +
                         std::to_string(m[1][0]));
  }
  return m;
}

Rotation rotation_from_block(const Matrix2& m, TwoRowShape frame_shape, double content_tolerance) {
  const double row1_content = box_content(frame_shape, 1);
  const double row2_content = box_content(frame_shape, 2);
  const double a = m[0][0];
  const double d = m[1][1];
  const double b = 0.5 * (m[0][1] + m[1][0]);
  Rotation rot;
  double high = 0.0;
  double low = 0.0;
  if (b == 0.0) {
    // Already diagonal: identity or a swap of the two sources.
    if (a >= d) {
      rot.r = {{{1.0, 0.0}, {0.0, 1.0}}};
      high = a;
      low = d;
    } else {
      rot.r = {{{0.0, 1.0}, {1.0, 0.0}}};
      high = d;
      low = a;
    }
  } else {
    const double theta = 0.5 * std::atan2(2.0 * b, a - d);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    high = a * c * c + 2.0 * b * s * c + d * s * s;
    low = a * s * s - 2.0 * b * s * c + d * c * c;
    rot.r = {{{c, s}, {-s, c}}};
  }
  if (std::abs(high - row1_content) > content_tolerance || std::abs(low - row2_content) > content_tolerance) {
    throw NumericalError("block eigenvalues (" + std::to_string(high) + ", " + std::to_string(low) +
                         ") do not match box contents (" + std::to_string(row1_content) + ", " +
                         std::to_string(row2_content) + ")");
  }
  normalize_row(rot.r[0]);
  normalize_row(rot.r[1]);
  return rot;
}

bool rotation_is_normalized(const Rotation& rot, double tolerance) {
  const Matrix2& r = rot.r;
  for (const auto& row : r) {
    for (double v : row) {
      if (!std::isfinite(v)) return false;
    }
  }
  const double g00 = r[0][0] * r[0][0] + r[1][0] * r[1][0];
  const double g11 = r[0][1] * r[0][1] + r[1][1] * r[1][1];
  const double g01 = r[0][0] * r[0][1] + r[1][0] * r[1][1];
  if (std::abs(g00 - 1.0) > tolerance || std::abs(g11 - 1.0) > tolerance || std::abs(g01) > tolerance) return false;
  for (const auto& row : r) {
    if (row[0] < -tolerance) return false;
    if (row[0] <= tolerance && !(row[1] > 0.0)) return false;
  }
  return true;
}

FactorPlan build_plan(const ProblemDims& dims, const PlannerOptions& options) {
  // The two live levels hold at most C(n,k) coordinates per basis vector.
  const std::uint64_t dense = dense_bytes(dims.dim, dims.dim);
  require_budget(dense > UINT64_MAX / 2 ? UINT64_MAX : 2 * dense, options.memory_budget, "dense planner");

  FactorPlan plan;
  plan.dims = dims;
  if (dims.n == 1) return plan;

  SpaceCache spaces;
  LevelBasis prev(dims, 1);
  // B_1 = B_0: every level-1 vector is a delta on a one-word local space.
  std::vector<std::vector<double>> prev_vecs(prev.size(), std::vector<double>{1.0});

  for (int i = 2; i <= dims.n; ++i) {
    LevelBasis cur(dims, i);
    std::vector<Block> blocks = group_between(prev, cur);
    std::vector<std::vector<double>> cur_vecs(cur.size());

    for (Block& block : blocks) {
      const int r = dims.k - block.frame_tail.ones();
      const YjmAction& action = spaces.action(i, r);
      const TwoRowShape frame_shape = block.frame_tab.shape();

      std::array<std::vector<double>, 2> src;
      std::array<std::vector<double>, 2> xsrc;
      for (std::size_t p = 0; p < block.srcs.size(); ++p) {
        const BasisLabel& label = prev[block.srcs[p]];
        const char letter = label.tail[0];
        const auto& embed = spaces.embedding(i - 1, r - (letter == '1'), letter);
        const std::vector<double>& local = prev_vecs[block.srcs[p]];
        if (local.size() != embed.size()) throw ConsistencyError("source vector does not match its word space");
        src[p].assign(action.size(), 0.0);
        for (std::size_t t = 0; t < local.size(); ++t) src[p][embed[t]] = local[t];
        xsrc[p].resize(action.size());
        action.apply(src[p], xsrc[p]);
      }

      if (!block.is_pair()) {
        const int row = cur[block.dsts[0]].tab.rowseq.back() == '1' ? 1 : 2;
        const double content = box_content(frame_shape, row);
        const double value = dot(src[0], xsrc[0]);
        if (std::abs(value - content) > options.content_tolerance ||
            residual_norm(xsrc[0], src[0], content) > options.residual_tolerance) {
          throw NumericalError("singleton block at level " + std::to_string(i) + " frame " +
                               describe(block.frame_tab, block.frame_tail) + " has eigenvalue " +
                               std::to_string(value) + ", expected content " + std::to_string(content));
        }
        cur_vecs[block.dsts[0]] = std::move(src[0]);
        continue;
      }

      Matrix2 m{};
      m[0][0] = dot(src[0], xsrc[0]);
      m[0][1] = dot(src[0], xsrc[1]);
      m[1][0] = dot(src[1], xsrc[0]);
      m[1][1] = dot(src[1], xsrc[1]);
      if (std::abs(m[0][1] - m[1][0]) > options.symmetry_tolerance) {
        throw NumericalError("asymmetric Jucys-Murphy block at level " + std::to_string(i));
      }
      const Rotation rot = rotation_from_block(m, frame_shape, options.content_tolerance);
      if (!rotation_is_normalized(rot, options.orthogonality_tolerance)) {
        throw NumericalError("rotation at level " + std::to_string(i) + " is not orthogonal");
      }
      for (std::size_t row = 0; row < 2; ++row) {
        const double c0 = rot.r[row][0];
        const double c1 = rot.r[row][1];
        std::vector<double> v(action.size());
        std::vector<double> xv(action.size());
        for (std::size_t t = 0; t < v.size(); ++t) {
          v[t] = c0 * src[0][t] + c1 * src[1][t];
          xv[t] = c0 * xsrc[0][t] + c1 * xsrc[1][t];
        }
        const double content = box_content(frame_shape, static_cast<int>(row) + 1);
        if (residual_norm(xv, v, content) > options.residual_tolerance) {
          throw NumericalError("rotated vector at level " + std::to_string(i) + " is not an X_i eigenvector");
        }
        cur_vecs[block.dsts[row]] = std::move(v);
      }
      block.coeffs = rot;
    }

    plan.levels.push_back(FactorLevel{i, std::move(blocks)});
    prev = std::move(cur);
    prev_vecs = std::move(cur_vecs);
  }
  return plan;
}

void validate_plan(const FactorPlan& plan, double orthogonality_tolerance) {
  const ProblemDims& dims = plan.dims;
  if (plan.format_version != kPlanFormatVersion) {
    throw VerificationError("unsupported plan version " + std::to_string(plan.format_version));
  }
  if (plan.levels.size() != static_cast<std::size_t>(dims.n - 1)) {
    throw VerificationError("plan has " + std::to_string(plan.levels.size()) + " levels, expected n-1 = " +
                            std::to_string(dims.n - 1));
  }
  if (dims.n == 1) return;
  LevelBasis prev(dims, 1);
  for (std::size_t idx = 0; idx < plan.levels.size(); ++idx) {
    const FactorLevel& level = plan.levels[idx];
    const int i = static_cast<int>(idx) + 2;
    if (level.i != i) throw VerificationError("level " + std::to_string(idx) + " is labeled i=" + std::to_string(level.i));
    LevelBasis cur(dims, i);
    const std::vector<Block> skeleton = group_between(prev, cur);
    if (skeleton.size() != level.blocks.size()) {
      throw VerificationError("level " + std::to_string(i) + " has " + std::to_string(level.blocks.size()) +
                              " blocks, expected " + std::to_string(skeleton.size()));
    }
    for (std::size_t b = 0; b < skeleton.size(); ++b) {
      const Block& want = skeleton[b];
      const Block& got = level.blocks[b];
      if (got.level != i || got.frame_tab != want.frame_tab || got.frame_tail != want.frame_tail ||
          got.srcs != want.srcs || got.dsts != want.dsts) {
        throw VerificationError("level " + std::to_string(i) + " block " + std::to_string(b) +
                                " does not match frame " + describe(want.frame_tab, want.frame_tail));
      }
      if (got.is_pair() != got.coeffs.has_value()) {
        throw VerificationError("level " + std::to_string(i) + " block " + std::to_string(b) +
                                (got.is_pair() ? " lacks coefficients" : " is a singleton with coefficients"));
      }
      if (got.coeffs && !rotation_is_normalized(*got.coeffs, orthogonality_tolerance)) {
        throw VerificationError("level " + std::to_string(i) + " block " + std::to_string(b) +
                                " coefficients are not a normalized orthogonal matrix");
      }
    }
    prev = std::move(cur);
  }
}

std::size_t max_coupling_degree(const FactorLevel& level, std::size_t dim, double zero_tolerance) {
  std::vector<std::size_t> src_degree(dim, 0);
  std::vector<std::size_t> dst_degree(dim, 0);
  for (const Block& block : level.blocks) {
    for (std::size_t row = 0; row < block.dsts.size(); ++row) {
      for (std::size_t col = 0; col < block.srcs.size(); ++col) {
        const double coef = block.coeffs ? block.coeffs->r[row][col] : 1.0;
        if (std::abs(coef) <= zero_tolerance) continue;
        if (block.srcs[col] >= dim || block.dsts[row] >= dim) throw InputError("block index out of range");
        ++src_degree[block.srcs[col]];
        ++dst_degree[block.dsts[row]];
      }
    }
  }
  std::size_t worst = 0;
  for (std::size_t t = 0; t < dim; ++t) worst = std::max({worst, src_degree[t], dst_degree[t]});
  return worst;
}

}  // namespace jfft
