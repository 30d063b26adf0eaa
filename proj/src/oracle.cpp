#include "jfft/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "jfft/errors.hpp"
#include "jfft/transform.hpp"

namespace jfft {

namespace {

void check_scale(const ProblemDims& dims, const OracleOptions& options, std::uint64_t matrices, const char* what) {
  if (dims.dim > options.max_dim) {
    throw BudgetError(std::string(what) + ": C(n,k)=" + std::to_string(dims.dim) + " exceeds the oracle cap " +
                      std::to_string(options.max_dim));
  }
  const std::uint64_t one = dense_bytes(dims.dim, dims.dim);
  require_budget(one > UINT64_MAX / matrices ? UINT64_MAX : one * matrices, options.memory_budget, what);
}

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>;

DenseOperator to_dense(const ProblemDims& dims, const Matrix& m) {
  DenseOperator out;
  out.dims = dims;
  out.rows = static_cast<std::size_t>(m.rows());
  out.cols = static_cast<std::size_t>(m.cols());
  out.entries.resize(out.rows * out.cols);
  for (std::size_t r = 0; r < out.rows; ++r) {
    for (std::size_t c = 0; c < out.cols; ++c) out.entries[r * out.cols + c] = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  return out;
}

struct EigenGroup {
  double value;
  std::vector<Eigen::Index> members;
};

// Eigenvalues come back ascending; split wherever consecutive values differ by more than tol.
std::vector<EigenGroup> group_eigenvalues(const Eigen::VectorXd& values, double tol) {
  std::vector<EigenGroup> groups;
  for (Eigen::Index t = 0; t < values.size(); ++t) {
    if (groups.empty() || values(t) - values(groups.back().members.back()) > tol) {
      groups.push_back(EigenGroup{values(t), {}});
    }
    groups.back().members.push_back(t);
  }
  for (EigenGroup& g : groups) {
    double sum = 0.0;
    for (Eigen::Index t : g.members) sum += values(t);
    g.value = sum / static_cast<double>(g.members.size());
  }
  return groups;
}

Matrix select_columns(const Matrix& m, const std::vector<Eigen::Index>& cols) {
  Matrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = m.col(cols[c]);
  return out;
}

}  // namespace

double DenseOperator::asymmetry() const {
  if (rows != cols) return INFINITY;
  double worst = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = r + 1; c < cols; ++c) worst = std::max(worst, std::abs((*this)(r, c) - (*this)(c, r)));
  }
  return worst;
}

std::vector<double> DenseOperator::apply(std::span<const double> x) const {
  if (x.size() != cols) throw InputError("DenseOperator::apply: length mismatch");
  std::vector<double> y(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < cols; ++c) sum += entries[r * cols + c] * x[c];
    y[r] = sum;
  }
  return y;
}

DenseOperator adjacency(const ProblemDims& dims, const OracleOptions& options) {
  check_scale(dims, options, 1, "adjacency operator");
  const std::vector<Word> points = enumerate_points(dims);
  DenseOperator a;
  a.dims = dims;
  a.rows = a.cols = points.size();
  a.entries.assign(a.rows * a.cols, 0.0);
  for (std::size_t x = 0; x < points.size(); ++x) {
    for (std::size_t y = 0; y < points.size(); ++y) {
      if (johnson_distance(points[x], points[y]) == 1) a(x, y) = 1.0;
    }
  }
  return a;
}

std::vector<DenseOperator> isotypic_projectors(const ProblemDims& dims, const OracleOptions& options) {
  check_scale(dims, options, static_cast<std::uint64_t>(dims.s) + 3, "isotypic projectors");
  const DenseOperator a = adjacency(dims, options);
  const auto c = static_cast<Eigen::Index>(a.rows);
  Matrix m(c, c);
  for (Eigen::Index r = 0; r < c; ++r) {
    for (Eigen::Index col = 0; col < c; ++col) m(r, col) = a(static_cast<std::size_t>(r), static_cast<std::size_t>(col));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) throw VerificationError("oracle: adjacency eigendecomposition failed");

  std::vector<EigenGroup> groups = group_eigenvalues(solver.eigenvalues(), options.group_tolerance);
  std::reverse(groups.begin(), groups.end());  // a = 0 is the largest eigenvalue
  if (groups.size() != static_cast<std::size_t>(dims.s) + 1) {
    throw VerificationError("oracle: adjacency has " + std::to_string(groups.size()) +
                            " eigenvalue groups, expected s+1 = " + std::to_string(dims.s + 1));
  }
  std::vector<DenseOperator> out;
  for (int comp = 0; comp <= dims.s; ++comp) {
    const EigenGroup& g = groups[static_cast<std::size_t>(comp)];
    const std::uint64_t want = binomial(dims.n, comp) - binomial(dims.n, comp - 1);
    if (g.members.size() != want) {
      throw VerificationError("oracle: eigenvalue group " + std::to_string(comp) + " has multiplicity " +
                              std::to_string(g.members.size()) + ", expected " + std::to_string(want));
    }
    const Matrix v = select_columns(solver.eigenvectors(), g.members);
    out.push_back(to_dense(dims, v * v.transpose()));
  }
  // The trivial component must hold the constants.
  const std::vector<double> ones(a.rows, 1.0);
  const std::vector<double> p0 = out[0].apply(ones);
  for (double v : p0) {
    if (std::abs(v - 1.0) > 1e-9) throw VerificationError("oracle: P_0 does not fix the constant function");
  }
  return out;
}

PointYjm::PointYjm(const ProblemDims& dims) : dims_(dims) {
  const std::vector<Word> points = enumerate_points(dims);
  std::map<std::string, std::uint32_t> index;
  for (std::size_t x = 0; x < points.size(); ++x) index.emplace(points[x].letters, static_cast<std::uint32_t>(x));
  swaps_.resize(static_cast<std::size_t>(dims.n));
  for (int i = 1; i <= dims.n; ++i) {
    auto& per_i = swaps_[static_cast<std::size_t>(i - 1)];
    per_i.resize(static_cast<std::size_t>(i - 1));
    for (int j = 1; j < i; ++j) {
      auto& table = per_i[static_cast<std::size_t>(j - 1)];
      table.reserve(points.size());
      for (const Word& x : points) {
        std::string y = x.letters;
        std::swap(y[static_cast<std::size_t>(j - 1)], y[static_cast<std::size_t>(i - 1)]);
        table.push_back(index.at(y));
      }
    }
  }
}

void PointYjm::apply(int i, std::span<const double> in, std::span<double> out) const {
  if (i < 1 || i > dims_.n) throw InputError("PointYjm::apply: i outside 1..n");
  if (in.size() != dims_.dim || out.size() != dims_.dim) throw InputError("PointYjm::apply: length mismatch");
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& table : swaps_[static_cast<std::size_t>(i - 1)]) {
    for (std::size_t x = 0; x < out.size(); ++x) out[x] += in[table[x]];
  }
}

GTReferenceBasis gt_reference_basis(const ProblemDims& dims, const OracleOptions& options, RefinementOrder order) {
  check_scale(dims, options, 3, "reference GT basis");
  const PointYjm yjm(dims);
  const auto c = static_cast<Eigen::Index>(dims.dim);

  struct Piece {
    Matrix basis;
    std::vector<int> eigenvalues;  // indexed by i-1; X_1 = 0
  };
  std::vector<Piece> pieces;
  pieces.push_back(Piece{Matrix::Identity(c, c), std::vector<int>(static_cast<std::size_t>(dims.n), 0)});

  std::vector<int> levels;
  for (int i = 2; i <= dims.n; ++i) levels.push_back(i);
  if (order == RefinementOrder::kDescending) std::reverse(levels.begin(), levels.end());

  std::vector<double> col_in(static_cast<std::size_t>(c));
  std::vector<double> col_out(static_cast<std::size_t>(c));
  for (int i : levels) {
    std::vector<Piece> next;
    for (Piece& piece : pieces) {
      const Eigen::Index d = piece.basis.cols();
      Matrix image(c, d);
      for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index x = 0; x < c; ++x) col_in[static_cast<std::size_t>(x)] = piece.basis(x, j);
        yjm.apply(i, col_in, col_out);
        for (Eigen::Index x = 0; x < c; ++x) image(x, j) = col_out[static_cast<std::size_t>(x)];
      }
      Matrix restricted = piece.basis.transpose() * image;
      restricted = 0.5 * (restricted + restricted.transpose()).eval();
      Eigen::SelfAdjointEigenSolver<Matrix> solver(restricted);
      if (solver.info() != Eigen::Success) throw VerificationError("oracle: X_i eigendecomposition failed");
      for (const EigenGroup& g : group_eigenvalues(solver.eigenvalues(), options.group_tolerance)) {
        const double rounded = std::round(g.value);
        if (std::abs(g.value - rounded) > options.group_tolerance) {
          throw VerificationError("oracle: X_" + std::to_string(i) + " eigenvalue " + std::to_string(g.value) +
                                  " is not an integer");
        }
        Piece child{piece.basis * select_columns(solver.eigenvectors(), g.members), piece.eigenvalues};
        child.eigenvalues[static_cast<std::size_t>(i - 1)] = static_cast<int>(rounded);
        next.push_back(std::move(child));
      }
    }
    pieces = std::move(next);
  }

  struct Line {
    Tableau tab;
    std::vector<int> eigenvalues;
    Eigen::VectorXd v;
  };
  std::vector<Line> lines;
  for (Piece& piece : pieces) {
    if (piece.basis.cols() != 1) {
      throw VerificationError("oracle: joint eigenspace of dimension " + std::to_string(piece.basis.cols()) +
                              " survives refinement");
    }
    // Content sequence -> tableau: the two addable boxes of (p, q) have contents p and q-1.
    std::string rowseq;
    TwoRowShape shape;
    for (int value : piece.eigenvalues) {
      if (value == box_content(shape, 1)) {
        rowseq.push_back('1');
        ++shape.p;
      } else if (shape.q < shape.p && value == box_content(shape, 2)) {
        rowseq.push_back('2');
        ++shape.q;
      } else {
        throw VerificationError("oracle: eigenvalue sequence is not a content sequence");
      }
    }
    Eigen::VectorXd v = piece.basis.col(0).normalized();
    for (Eigen::Index x = 0; x < v.size(); ++x) {
      if (std::abs(v(x)) > 1e-9) {
        if (v(x) < 0) v = -v;
        break;
      }
    }
    lines.push_back(Line{Tableau{rowseq}, piece.eigenvalues, std::move(v)});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.tab < b.tab; });

  GTReferenceBasis out;
  out.columns.dims = dims;
  out.columns.rows = out.columns.cols = static_cast<std::size_t>(c);
  out.columns.entries.assign(out.columns.rows * out.columns.cols, 0.0);
  for (std::size_t j = 0; j < lines.size(); ++j) {
    for (Eigen::Index x = 0; x < c; ++x) out.columns(static_cast<std::size_t>(x), j) = lines[j].v(x);
    out.tableaux.push_back(lines[j].tab);
    out.eigenvalues.push_back(lines[j].eigenvalues);
  }
  return out;
}

OracleReport compare_plan_to_oracle(const FactorPlan& plan, const OracleOptions& options, std::uint64_t seed,
                                    std::size_t random_vectors) {
  const ProblemDims& dims = plan.dims;
  const FourierEngine engine(plan);
  const std::size_t dim = static_cast<std::size_t>(dims.dim);
  OracleReport report;

  const GTReferenceBasis ref = gt_reference_basis(dims, options);
  std::map<std::string, std::size_t> ref_index;
  for (std::size_t j = 0; j < ref.tableaux.size(); ++j) ref_index.emplace(ref.tableaux[j].rowseq, j);
  const std::vector<double> rows = gt_basis_rows(engine, options.memory_budget);
  for (std::size_t t = 0; t < dim; ++t) {
    const auto it = ref_index.find(engine.gt_tableaux()[t].rowseq);
    if (it == ref_index.end()) {
      throw VerificationError("oracle: plan label " + engine.gt_tableaux()[t].rowseq + " has no reference line");
    }
    double dotp = 0.0;
    for (std::size_t x = 0; x < dim; ++x) dotp += rows[t * dim + x] * ref.columns(x, it->second);
    report.max_column_deviation = std::max(report.max_column_deviation, 1.0 - std::abs(dotp));
    ++report.columns_compared;
  }

  const std::vector<DenseOperator> projectors = isotypic_projectors(dims, options);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  for (std::size_t v = 0; v < random_vectors; ++v) {
    FunctionVector f = FunctionVector::zeros(dims);
    for (double& x : f.values) x = uniform(rng);
    for (int a = 0; a <= dims.s; ++a) {
      const int component[] = {a};
      const std::vector<double> fast = project(engine, f, component).value.values;
      const std::vector<double> dense = projectors[static_cast<std::size_t>(a)].apply(f.values);
      for (std::size_t x = 0; x < dim; ++x) {
        report.max_projector_error = std::max(report.max_projector_error, std::abs(fast[x] - dense[x]));
      }
    }
    ++report.vectors_compared;
  }
  return report;
}

}  // namespace jfft
