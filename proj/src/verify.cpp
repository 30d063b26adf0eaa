#include "jfft/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <random>

#include "jfft/errors.hpp"
#include "jfft/format.hpp"

namespace jfft {

namespace {

void run_check(VerifyReport& report, std::string name, const std::function<std::string()>& body) {
  CheckResult result{std::move(name), false, {}};
  try {
    result.detail = body();
    result.passed = true;
  } catch (const std::exception& e) {
    result.detail = e.what();
  }
  report.checks.push_back(std::move(result));
}

void expect(bool ok, const std::string& message) {
  if (!ok) throw VerificationError(message);
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

double max_gt_residual(const FourierEngine& engine, std::span<const std::size_t> columns) {
  const ProblemDims& dims = engine.dims();
  const std::size_t dim = static_cast<std::size_t>(dims.dim);
  const PointYjm yjm(dims);
  std::vector<double> unit(dim, 0.0);
  std::vector<double> v(dim);
  std::vector<double> xv(dim);
  double worst = 0.0;
  OpCounter ops;
  for (std::size_t t : columns) {
    if (t >= dim) throw InputError("GT column index out of range");
    unit[t] = 1.0;
    engine.inverse(unit, v, ops);
    unit[t] = 0.0;
    const std::vector<int> contents = tableau_contents(engine.gt_tableaux()[t]);
    for (int i = 1; i <= dims.n; ++i) {
      yjm.apply(i, v, xv);
      const double c = contents[static_cast<std::size_t>(i - 1)];
      for (std::size_t x = 0; x < dim; ++x) worst = std::max(worst, std::abs(xv[x] - c * v[x]));
    }
  }
  return worst;
}

VerifyReport verify_plan(const FactorPlan& plan, const VerifyOptions& options) {
  VerifyReport report;
  const ProblemDims& dims = plan.dims;
  const std::uint64_t dim = dims.dim;
  const std::uint64_t levels = static_cast<std::uint64_t>(dims.n - 1);

  run_check(report, "structure", [&] {
    validate_plan(plan, options.orthogonality_tolerance);
    return std::to_string(plan.levels.size()) + " levels match their block skeletons";
  });

  run_check(report, "sparsity", [&] {
    std::size_t worst = 0;
    for (const FactorLevel& level : plan.levels) {
      worst = std::max(worst, max_coupling_degree(level, static_cast<std::size_t>(dim)));
    }
    expect(worst <= 2, "an index couples to " + std::to_string(worst) + " partners");
    return "max coupling degree " + std::to_string(worst);
  });

  // The remaining checks need an engine; a structurally broken plan fails them all.
  std::unique_ptr<FourierEngine> engine;
  run_check(report, "engine", [&] {
    engine = std::make_unique<FourierEngine>(plan);
    return std::string("compiled with ") + engine->kernels().name + " kernels";
  });
  if (!engine) return report;

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<FunctionVector> samples;
  for (std::size_t v = 0; v < options.random_vectors; ++v) {
    FunctionVector f = FunctionVector::zeros(dims);
    for (double& x : f.values) x = uniform(rng);
    samples.push_back(std::move(f));
  }

  run_check(report, "op-bounds", [&] {
    std::uint64_t fwd = 0, inv = 0, proj = 0, wts = 0;
    std::vector<int> all(static_cast<std::size_t>(dims.s) + 1);
    for (int a = 0; a <= dims.s; ++a) all[static_cast<std::size_t>(a)] = a;
    for (const FunctionVector& f : samples) {
      const auto g = apply_forward(*engine, f);
      fwd = std::max(fwd, g.ops.muladds);
      inv = std::max(inv, apply_inverse(*engine, g.value).ops.muladds);
      proj = std::max(proj, project(*engine, f, all).ops.muladds);
      wts = std::max(wts, weights(*engine, f).ops.muladds);
    }
    expect(fwd <= 2 * levels * dim, "forward uses " + std::to_string(fwd) + " > 2(n-1)C(n,k)");
    expect(inv <= 2 * levels * dim, "inverse uses " + std::to_string(inv) + " > 2(n-1)C(n,k)");
    expect(proj <= 4 * levels * dim, "project uses " + std::to_string(proj) + " > 4(n-1)C(n,k)");
    expect(wts <= (2 * levels + 1) * dim, "weights uses " + std::to_string(wts) + " > (2n-1)C(n,k)");
    return "forward " + std::to_string(fwd) + ", inverse " + std::to_string(inv) + ", project " +
           std::to_string(proj) + ", weights " + std::to_string(wts) + " muladds";
  });

  run_check(report, "round-trip", [&] {
    double worst = 0.0;
    for (const FunctionVector& f : samples) {
      const auto back = apply_inverse(*engine, apply_forward(*engine, f).value).value;
      for (std::size_t x = 0; x < f.values.size(); ++x) worst = std::max(worst, std::abs(back.values[x] - f.values[x]));
    }
    expect(worst <= options.round_trip_tolerance, "round-trip error " + format_double(worst));
    return "max error " + format_double(worst);
  });

  run_check(report, "parseval", [&] {
    double worst = 0.0;
    for (const FunctionVector& f : samples) {
      const auto g = apply_forward(*engine, f).value;
      double nf = 0.0, ng = 0.0;
      for (double x : f.values) nf += x * x;
      for (double x : g.values) ng += x * x;
      worst = std::max(worst, std::abs(std::sqrt(nf) - std::sqrt(ng)));
    }
    expect(worst <= options.parseval_tolerance, "norm drift " + format_double(worst));
    return "max norm drift " + format_double(worst);
  });

  run_check(report, "weights-sum", [&] {
    double worst = 0.0;
    for (const FunctionVector& f : samples) {
      const auto w = weights(*engine, f).value;
      double norm2 = 0.0;
      for (double x : f.values) norm2 += x * x;
      double total = 0.0;
      for (double x : w) total += x;
      worst = std::max(worst, std::abs(total - norm2));
    }
    expect(worst <= options.parseval_tolerance, "weights miss ||f||^2 by " + format_double(worst));
    return "max deviation " + format_double(worst);
  });

  run_check(report, "gt-characterization", [&] {
    std::vector<std::size_t> columns;
    const std::size_t d = static_cast<std::size_t>(dim);
    const std::size_t take = std::min(d, options.max_gt_columns);
    for (std::size_t t = 0; t < take; ++t) columns.push_back(take == d ? t : t * d / take);
    const double residual = max_gt_residual(*engine, columns);
    expect(residual <= options.gt_residual_tolerance, "X_i residual " + format_double(residual));
    return std::to_string(columns.size()) + " columns, max residual " + format_double(residual);
  });

  if (options.with_oracle) {
    run_check(report, "oracle", [&] {
      const OracleReport r = compare_plan_to_oracle(plan, options.oracle, options.seed);
      expect(r.max_column_deviation <= options.oracle_tolerance,
             "column deviation " + format_double(r.max_column_deviation));
      expect(r.max_projector_error <= options.oracle_tolerance,
             "projector error " + format_double(r.max_projector_error));
      return "column deviation " + format_double(r.max_column_deviation) + ", projector error " +
             format_double(r.max_projector_error);
    });
  }
  return report;
}

}  // namespace jfft
