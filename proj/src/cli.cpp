#include "jfft/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "jfft/bench.hpp"
#include "jfft/csv_io.hpp"
#include "jfft/errors.hpp"
#include "jfft/format.hpp"
#include "jfft/plan_io.hpp"
#include "jfft/transform.hpp"
#include "jfft/verify.hpp"

namespace jfft::cli {

namespace {

struct Options {
  int n = -1;
  int k = -1;
  std::string plan_path;
  std::string output;
  std::string input;
  std::string components;
  bool verify = false;
  bool oracle = false;
  std::size_t repeat = 100;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input '" + path + "'");
  return in;
}

// Writes `body` to the output file, or to `out` when none was named.
void emit(const Options& opt, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (opt.output.empty() || opt.output == "-") {
    body(out);
    return;
  }
  std::ofstream file(opt.output, std::ios::binary | std::ios::trunc);
  if (!file) throw InputError("cannot open output '" + opt.output + "'");
  body(file);
  if (!file) throw InputError("failed writing '" + opt.output + "'");
}

void print_report(const VerifyReport& report, std::ostream& out) {
  for (const CheckResult& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
}

int cmd_plan(const Options& opt, std::ostream& out, std::ostream& err) {
  const ProblemDims dims = ProblemDims::make(opt.n, opt.k);
  const FactorPlan plan = build_plan(dims);
  if (opt.verify) {
    VerifyOptions vopt;
    vopt.with_oracle = dims.dim <= vopt.oracle.max_dim;
    if (!vopt.with_oracle) err << "note: C(n,k) exceeds the oracle cap; oracle comparison skipped\n";
    const VerifyReport report = verify_plan(plan, vopt);
    print_report(report, out);
    if (!report.passed()) {
      err << "plan verification failed; nothing written\n";
      return kVerification;
    }
  }
  save_plan(plan, opt.output);
  std::size_t pairs = 0;
  std::size_t singles = 0;
  for (const FactorLevel& level : plan.levels) {
    for (const Block& b : level.blocks) (b.is_pair() ? pairs : singles) += 1;
  }
  out << "wrote " << opt.output << ": n=" << dims.n << " k=" << dims.k << " dim=" << dims.dim << " levels="
      << plan.levels.size() << " pair_blocks=" << pairs << " singleton_blocks=" << singles << '\n';
  return kSuccess;
}

int cmd_transform(const Options& opt, std::ostream& out) {
  const FourierEngine engine(load_plan(opt.plan_path));
  auto in = open_input(opt.input);
  const FunctionVector f = read_function_csv(in, engine.dims());
  const auto g = apply_forward(engine, f);
  emit(opt, out, [&](std::ostream& os) { write_gt_csv(os, g.value); });
  return kSuccess;
}

int cmd_itransform(const Options& opt, std::ostream& out) {
  const FourierEngine engine(load_plan(opt.plan_path));
  auto in = open_input(opt.input);
  const GTVector g = read_gt_csv(in, engine.dims());
  const auto f = apply_inverse(engine, g);
  emit(opt, out, [&](std::ostream& os) { write_function_csv(os, f.value); });
  return kSuccess;
}

int cmd_project(const Options& opt, std::ostream& out) {
  const FourierEngine engine(load_plan(opt.plan_path));
  const std::vector<int> components = parse_components(opt.components, engine.dims().s);
  auto in = open_input(opt.input);
  const FunctionVector f = read_function_csv(in, engine.dims());
  const auto fh = project(engine, f, components);
  emit(opt, out, [&](std::ostream& os) { write_function_csv(os, fh.value); });
  return kSuccess;
}

int cmd_weights(const Options& opt, std::ostream& out) {
  const FourierEngine engine(load_plan(opt.plan_path));
  auto in = open_input(opt.input);
  const FunctionVector f = read_function_csv(in, engine.dims());
  const auto w = weights(engine, f);
  emit(opt, out, [&](std::ostream& os) { write_weights_csv(os, w.value); });
  return kSuccess;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  FactorPlan plan;
  try {
    plan = load_plan(opt.plan_path);
  } catch (const VerificationError& e) {
    out << "FAIL load: " << e.what() << '\n';
    return kVerification;
  }
  VerifyOptions vopt;
  vopt.with_oracle = opt.oracle;
  const VerifyReport report = verify_plan(plan, vopt);
  print_report(report, out);
  if (!report.passed()) {
    err << "verification failed\n";
    return kVerification;
  }
  return kSuccess;
}

int cmd_bench(const Options& opt, std::ostream& out) {
  const ProblemDims dims = ProblemDims::make(opt.n, opt.k);
  FactorPlan plan;
  if (opt.plan_path.empty()) {
    plan = build_plan(dims);
  } else {
    plan = load_plan(opt.plan_path);
    if (!(plan.dims == dims)) throw InputError("plan dimensions do not match -n/-k");
  }
  const BenchResult r = run_bench(plan, opt.repeat);
  const std::uint64_t bound = 2 * static_cast<std::uint64_t>(dims.n - 1) * dims.dim;
  out << "n=" << dims.n << " k=" << dims.k << " dim=" << dims.dim << " kernels=" << r.kernels
      << " repeat=" << r.repeat << '\n';
  out << "factored_muladds=" << r.factored_muladds << " bound=" << bound << '\n';
  out << "dense_muladds=" << r.dense_muladds << '\n';
  out << "op_reduction=" << format_double(r.op_reduction()) << '\n';
  out << "factored_median_seconds=" << format_double(r.factored_median_seconds) << '\n';
  out << "dense_median_seconds=" << format_double(r.dense_median_seconds) << '\n';
  out << "speedup=" << format_double(r.speedup()) << '\n';
  out << "max_abs_difference=" << format_double(r.max_abs_difference) << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fast Gelfand-Tsetlin Fourier transform on the Johnson graph J(n,k)", "jfft"};
  app.require_subcommand(1, 1);
  Options opt;

  auto* plan = app.add_subcommand("plan", "Build a factor plan and save it as JSON");
  plan->add_option("-n", opt.n, "Ground set size")->required();
  plan->add_option("-k", opt.k, "Subset size")->required();
  plan->add_option("-o,--output", opt.output, "Plan file to write")->required();
  plan->add_flag("--verify", opt.verify, "Run the invariant suite and the oracle comparison before saving");

  auto add_io = [&](CLI::App* sub, const char* input_help) {
    sub->add_option("--plan", opt.plan_path, "Plan file")->required();
    sub->add_option("--input", opt.input, input_help)->required();
    sub->add_option("-o,--output", opt.output, "Output CSV (default: stdout)");
  };
  auto* transform = app.add_subcommand("transform", "Forward transform: subset,value -> rowseq,a,value");
  add_io(transform, "Function CSV (subset,value)");
  auto* itransform = app.add_subcommand("itransform", "Inverse transform: rowseq,a,value -> subset,value");
  add_io(itransform, "GT coordinate CSV (rowseq,a,value)");
  auto* proj = app.add_subcommand("project", "Isotypic projection f_H");
  add_io(proj, "Function CSV (subset,value)");
  proj->add_option("--components", opt.components, "Components a, e.g. 0,2 or 0-2")->required();
  auto* wts = app.add_subcommand("weights", "Component weights ||f_a||^2");
  add_io(wts, "Function CSV (subset,value)");

  auto* verify = app.add_subcommand("verify", "Run the invariant suite on a plan");
  verify->add_option("--plan", opt.plan_path, "Plan file")->required();
  verify->add_flag("--oracle", opt.oracle, "Also compare against the dense oracle");

  auto* bench = app.add_subcommand("bench", "Factored apply vs dense matvec");
  bench->add_option("-n", opt.n, "Ground set size")->required();
  bench->add_option("-k", opt.k, "Subset size")->required();
  bench->add_option("--plan", opt.plan_path, "Plan file (built in memory when omitted)");
  bench->add_option("--repeat", opt.repeat, "Repetitions")->check(CLI::PositiveNumber);

  std::vector<const char*> raw;
  raw.reserve(argv.size());
  for (const std::string& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (plan->parsed()) return cmd_plan(opt, out, err);
    if (transform->parsed()) return cmd_transform(opt, out);
    if (itransform->parsed()) return cmd_itransform(opt, out);
    if (proj->parsed()) return cmd_project(opt, out);
    if (wts->parsed()) return cmd_weights(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out, err);
    if (bench->parsed()) return cmd_bench(opt, out);
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const VerificationError& e) {
    err << "error: " << e.what() << '\n';
    return kVerification;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputFormat;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kInputFormat;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kVerification;
  }
  return kUsage;
}

}  // namespace jfft::cli
