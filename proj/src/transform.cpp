#include "jfft/transform.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>

#include "jfft/errors.hpp"

namespace jfft {

namespace {

void require_length(std::size_t got, std::uint64_t want, const char* what) {
  if (got != want) {
    throw InputError(std::string(what) + " has length " + std::to_string(got) + ", expected C(n,k)=" +
                     std::to_string(want));
  }
}

void require_dims(const ProblemDims& got, const ProblemDims& want) {
  if (!(got == want)) {
    throw InputError("dimension mismatch: vector is for n=" + std::to_string(got.n) + " k=" + std::to_string(got.k) +
                     ", plan is for n=" + std::to_string(want.n) + " k=" + std::to_string(want.k));
  }
}

}  // namespace

FourierEngine::FourierEngine(const FactorPlan& plan, const KernelTable& kernels)
    : dims_(plan.dims), kernels_(&kernels) {
  const std::size_t dim = static_cast<std::size_t>(dims_.dim);
  if (plan.levels.size() != static_cast<std::size_t>(dims_.n - 1)) {
    throw VerificationError("plan has " + std::to_string(plan.levels.size()) + " levels, expected n-1");
  }
  if (dim > std::size_t{1} << 31) throw BudgetError("C(n,k) exceeds the 32-bit index range of the engine");

  // B_1 coincides with B_0 up to order: label ("1", w) is the delta of the word (letter)w.
  std::vector<std::uint32_t> pos(dim);
  {
    const LevelBasis b1(dims_, 1);
    for (std::size_t j = 0; j < dim; ++j) {
      const Word& tail = b1[j].tail;
      const char first = dims_.k - tail.ones() == 1 ? '1' : '2';
      pos[j] = static_cast<std::uint32_t>(word_rank(first + tail.letters));
    }
  }

  std::vector<char> seen(dim);
  for (const FactorLevel& level : plan.levels) {
    Stage st;
    st.pairs = static_cast<std::size_t>(
        std::count_if(level.blocks.begin(), level.blocks.end(), [](const Block& b) { return b.is_pair(); }));
    st.gather.assign(dim, 0);
    st.scatter.assign(dim, 0);
    st.c00.reserve(st.pairs);
    st.c01.reserve(st.pairs);
    st.c10.reserve(st.pairs);
    st.c11.reserve(st.pairs);
    std::vector<std::uint32_t> next(dim, 0);
    std::fill(seen.begin(), seen.end(), 0);
    std::size_t pair = 0;
    std::size_t single = 2 * st.pairs;
    auto place = [&](std::uint32_t src, std::uint32_t dst, std::size_t slot) {
      if (src >= dim || dst >= dim || slot >= dim) throw VerificationError("plan index out of range");
      if (seen[dst]) throw VerificationError("plan level " + std::to_string(level.i) + " repeats a destination");
      seen[dst] = 1;
      st.gather[slot] = pos[src];
      next[dst] = static_cast<std::uint32_t>(slot);
    };
    for (const Block& block : level.blocks) {
      if (block.srcs.size() != block.dsts.size() || block.srcs.empty() || block.srcs.size() > 2) {
        throw VerificationError("plan level " + std::to_string(level.i) + " has a malformed block");
      }
      if (block.is_pair()) {
        if (!block.coeffs) throw VerificationError("pair block without coefficients");
        place(block.srcs[0], block.dsts[0], pair);
        place(block.srcs[1], block.dsts[1], st.pairs + pair);
        const Matrix2& r = block.coeffs->r;
        st.c00.push_back(r[0][0]);
        st.c01.push_back(r[0][1]);
        st.c10.push_back(r[1][0]);
        st.c11.push_back(r[1][1]);
        ++pair;
      } else {
        place(block.srcs[0], block.dsts[0], single++);
      }
    }
    if (single != dim) throw VerificationError("plan level " + std::to_string(level.i) + " does not cover B_i");
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t t = 0; t < dim; ++t) {
      if (seen[st.gather[t]]) throw VerificationError("plan level " + std::to_string(level.i) + " repeats a source");
      seen[st.gather[t]] = 1;
      st.scatter[st.gather[t]] = static_cast<std::uint32_t>(t);
    }
    stages_.push_back(std::move(st));
    pos = std::move(next);
  }

  const LevelBasis top(dims_, dims_.n);
  to_canonical_ = pos;
  from_canonical_.assign(dim, 0);
  layout_shape_.assign(dim, 0);
  gt_tableaux_.reserve(dim);
  gt_shape_.reserve(dim);
  for (std::size_t t = 0; t < dim; ++t) {
    from_canonical_[pos[t]] = static_cast<std::uint32_t>(t);
    gt_tableaux_.push_back(top[t].tab);
    gt_shape_.push_back(top[t].tab.shape().q);
    layout_shape_[pos[t]] = gt_shape_.back();
  }
  by_shape_.resize(dim);
  std::iota(by_shape_.begin(), by_shape_.end(), 0u);
  std::stable_sort(by_shape_.begin(), by_shape_.end(),
                   [&](std::uint32_t x, std::uint32_t y) { return layout_shape_[x] < layout_shape_[y]; });
  shape_offsets_.assign(static_cast<std::size_t>(dims_.s) + 2, 0);
  for (int a : layout_shape_) ++shape_offsets_[static_cast<std::size_t>(a) + 1];
  std::partial_sum(shape_offsets_.begin(), shape_offsets_.end(), shape_offsets_.begin());
}

void FourierEngine::run_forward(std::vector<double>& a, std::vector<double>& b, OpCounter& ops) const {
  const std::size_t dim = a.size();
  for (const Stage& st : stages_) {
    kernels_->gather(a.data(), st.gather.data(), b.data(), dim);
    kernels_->rotate(st.c00.data(), st.c01.data(), st.c10.data(), st.c11.data(), b.data(), b.data() + st.pairs,
                     st.pairs);
    ops.muladds += 4 * st.pairs;
    a.swap(b);
  }
}

void FourierEngine::run_inverse(std::vector<double>& a, std::vector<double>& b, OpCounter& ops) const {
  const std::size_t dim = a.size();
  for (auto it = stages_.rbegin(); it != stages_.rend(); ++it) {
    const Stage& st = *it;
    // Transposed rotation.
    kernels_->rotate(st.c00.data(), st.c10.data(), st.c01.data(), st.c11.data(), a.data(), a.data() + st.pairs,
                     st.pairs);
    ops.muladds += 4 * st.pairs;
    kernels_->gather(a.data(), st.scatter.data(), b.data(), dim);
    a.swap(b);
  }
}

void FourierEngine::forward(std::span<const double> in, std::span<double> out, OpCounter& ops) const {
  require_length(in.size(), dims_.dim, "input");
  require_length(out.size(), dims_.dim, "output");
  std::vector<double> a(in.begin(), in.end());
  std::vector<double> b(a.size());
  run_forward(a, b, ops);
  kernels_->gather(a.data(), to_canonical_.data(), out.data(), a.size());
}

void FourierEngine::inverse(std::span<const double> in, std::span<double> out, OpCounter& ops) const {
  require_length(in.size(), dims_.dim, "input");
  require_length(out.size(), dims_.dim, "output");
  std::vector<double> a(in.size());
  std::vector<double> b(in.size());
  kernels_->gather(in.data(), from_canonical_.data(), a.data(), a.size());
  run_inverse(a, b, ops);
  std::copy(a.begin(), a.end(), out.begin());
}

void FourierEngine::project(std::span<const double> in, std::span<double> out, std::span<const bool> keep,
                            OpCounter& ops) const {
  require_length(in.size(), dims_.dim, "input");
  require_length(out.size(), dims_.dim, "output");
  if (keep.size() != static_cast<std::size_t>(dims_.s) + 1) throw InputError("component mask must have s+1 entries");
  std::vector<double> a(in.begin(), in.end());
  std::vector<double> b(a.size());
  run_forward(a, b, ops);
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (!keep[static_cast<std::size_t>(layout_shape_[t])]) a[t] = 0.0;
  }
  run_inverse(a, b, ops);
  std::copy(a.begin(), a.end(), out.begin());
}

void FourierEngine::weights(std::span<const double> in, std::span<double> weights, OpCounter& ops) const {
  require_length(in.size(), dims_.dim, "input");
  if (weights.size() != static_cast<std::size_t>(dims_.s) + 1) throw InputError("weights output must have s+1 entries");
  std::vector<double> a(in.begin(), in.end());
  std::vector<double> b(a.size());
  run_forward(a, b, ops);
  kernels_->gather(a.data(), by_shape_.data(), b.data(), a.size());
  for (std::size_t g = 0; g + 1 < shape_offsets_.size(); ++g) {
    weights[g] = kernels_->sum_squares(b.data() + shape_offsets_[g], shape_offsets_[g + 1] - shape_offsets_[g]);
  }
  ops.muladds += a.size();
}

Counted<GTVector> apply_forward(const FourierEngine& engine, const FunctionVector& f) {
  require_dims(f.dims, engine.dims());
  Counted<GTVector> out{GTVector{f.dims, std::vector<double>(f.values.size())}, {}};
  engine.forward(f.values, out.value.values, out.ops);
  return out;
}

Counted<FunctionVector> apply_inverse(const FourierEngine& engine, const GTVector& g) {
  require_dims(g.dims, engine.dims());
  Counted<FunctionVector> out{FunctionVector{g.dims, std::vector<double>(g.values.size())}, {}};
  engine.inverse(g.values, out.value.values, out.ops);
  return out;
}

Counted<FunctionVector> project(const FourierEngine& engine, const FunctionVector& f, std::span<const int> components) {
  require_dims(f.dims, engine.dims());
  std::vector<bool> mask(static_cast<std::size_t>(f.dims.s) + 1, false);
  for (int a : components) {
    if (a < 0 || a > f.dims.s) {
      throw InputError("component " + std::to_string(a) + " outside 0..s=" + std::to_string(f.dims.s));
    }
    mask[static_cast<std::size_t>(a)] = true;
  }
  // std::vector<bool> is not contiguous; copy into a plain bool array for the span.
  std::unique_ptr<bool[]> keep(new bool[mask.size()]);
  std::copy(mask.begin(), mask.end(), keep.get());
  Counted<FunctionVector> out{FunctionVector{f.dims, std::vector<double>(f.values.size())}, {}};
  engine.project(f.values, out.value.values, std::span<const bool>(keep.get(), mask.size()), out.ops);
  return out;
}

Counted<std::vector<double>> weights(const FourierEngine& engine, const FunctionVector& f) {
  require_dims(f.dims, engine.dims());
  Counted<std::vector<double>> out{std::vector<double>(static_cast<std::size_t>(f.dims.s) + 1), {}};
  engine.weights(f.values, out.value, out.ops);
  return out;
}

Counted<GTVector> apply_forward(const FactorPlan& plan, const FunctionVector& f) {
  return apply_forward(FourierEngine(plan), f);
}

Counted<FunctionVector> apply_inverse(const FactorPlan& plan, const GTVector& g) {
  return apply_inverse(FourierEngine(plan), g);
}

Counted<FunctionVector> project(const FactorPlan& plan, const FunctionVector& f, std::span<const int> components) {
  return project(FourierEngine(plan), f, components);
}

Counted<std::vector<double>> weights(const FactorPlan& plan, const FunctionVector& f) {
  return weights(FourierEngine(plan), f);
}

Counted<std::vector<std::complex<double>>> apply_forward(const FourierEngine& engine,
                                                         std::span<const std::complex<double>> f) {
  const std::size_t dim = static_cast<std::size_t>(engine.dims().dim);
  require_length(f.size(), dim, "input");
  std::vector<double> re(dim);
  std::vector<double> im(dim);
  for (std::size_t t = 0; t < dim; ++t) {
    re[t] = f[t].real();
    im[t] = f[t].imag();
  }
  std::vector<double> gre(dim);
  std::vector<double> gim(dim);
  Counted<std::vector<std::complex<double>>> out{std::vector<std::complex<double>>(dim), {}};
  engine.forward(re, gre, out.ops);
  engine.forward(im, gim, out.ops);
  for (std::size_t t = 0; t < dim; ++t) out.value[t] = {gre[t], gim[t]};
  return out;
}

std::vector<double> gt_basis_rows(const FourierEngine& engine, std::uint64_t memory_budget) {
  const std::uint64_t dim = engine.dims().dim;
  require_budget(dense_bytes(dim, dim), memory_budget, "dense GT basis");
  const std::size_t d = static_cast<std::size_t>(dim);
  std::vector<double> rows(d * d);
  std::vector<double> unit(d, 0.0);
  OpCounter ops;
  for (std::size_t t = 0; t < d; ++t) {
    unit[t] = 1.0;
    engine.inverse(unit, std::span<double>(rows.data() + t * d, d), ops);
    unit[t] = 0.0;
  }
  return rows;
}

}  // namespace jfft
