#include "jfft/core.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "jfft/errors.hpp"

namespace jfft {

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int j = 1; j <= k; ++j) {
    // result * (n-k+j) / j stays exact at every step.
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + j);
    if (result > std::numeric_limits<std::uint64_t>::max() / num) {
      throw InputError("binomial coefficient overflows 64 bits");
    }
    result = result * num / static_cast<std::uint64_t>(j);
  }
  return result;
}

ProblemDims ProblemDims::make(int n, int k) {
  if (n < 1 || n > kMaxN) {
    throw InputError("n must lie in 1.." + std::to_string(kMaxN) + ", got " + std::to_string(n));
  }
  if (k < 0 || k > n) {
    throw InputError("k must lie in 0..n, got k=" + std::to_string(k) + " n=" + std::to_string(n));
  }
  ProblemDims d;
  d.n = n;
  d.k = k;
  d.s = std::min(k, n - k);
  d.dim = binomial(n, k);
  return d;
}

Word Word::parse(std::string_view text) {
  for (char c : text) {
    if (c != '1' && c != '2') throw InputError("word letters must be 1 or 2: '" + std::string(text) + "'");
  }
  return Word{std::string(text)};
}

int Word::ones() const { return static_cast<int>(std::count(letters.begin(), letters.end(), '1')); }

Tableau Tableau::parse(std::string_view text) {
  int ones = 0;
  int twos = 0;
  for (char c : text) {
    if (c == '1') {
      ++ones;
    } else if (c == '2') {
      ++twos;
    } else {
      throw InputError("row sequence letters must be 1 or 2: '" + std::string(text) + "'");
    }
    if (twos > ones) throw InputError("row sequence is not a standard tableau: '" + std::string(text) + "'");
  }
  return Tableau{std::string(text)};
}

TwoRowShape Tableau::shape() const {
  const int ones = static_cast<int>(std::count(rowseq.begin(), rowseq.end(), '1'));
  return TwoRowShape{ones, static_cast<int>(rowseq.size()) - ones};
}

std::vector<int> tableau_contents(const Tableau& tab) {
  std::vector<int> out;
  out.reserve(tab.size());
  TwoRowShape shape;
  for (char c : tab.rowseq) {
    const int row = c == '1' ? 1 : 2;
    out.push_back(box_content(shape, row));
    (row == 1 ? shape.p : shape.q) += 1;
  }
  return out;
}

Word word_of_subset(std::span<const int> subset, const ProblemDims& dims) {
  if (static_cast<int>(subset.size()) != dims.k) {
    throw InputError("subset has " + std::to_string(subset.size()) + " elements, expected k=" + std::to_string(dims.k));
  }
  std::string letters(static_cast<std::size_t>(dims.n), '2');
  int previous = 0;
  for (int e : subset) {
    if (e < 1 || e > dims.n) {
      throw InputError("subset element " + std::to_string(e) + " outside 1.." + std::to_string(dims.n));
    }
    if (e == previous) throw InputError("duplicate subset element " + std::to_string(e));
    if (e < previous) throw InputError("subset elements must be strictly increasing");
    letters[static_cast<std::size_t>(e - 1)] = '1';
    previous = e;
  }
  return Word{std::move(letters)};
}

std::vector<int> subset_of_word(const Word& word) {
  std::vector<int> out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] == '1') out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

std::string format_subset(std::span<const int> subset) {
  std::string out;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) out.push_back('-');
    out += std::to_string(subset[i]);
  }
  return out;
}

std::vector<int> parse_subset(std::string_view text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t dash = text.find('-', start);
    const std::string_view part = text.substr(start, dash == std::string_view::npos ? std::string_view::npos : dash - start);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
      throw FormatError("malformed subset '" + std::string(text) + "'");
    }
    out.push_back(value);
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  return out;
}

int johnson_distance(const Word& x, const Word& y) {
  if (x.size() != y.size()) throw InputError("words of different length");
  if (x.ones() != y.ones()) throw InputError("words with different numbers of ones");
  int overlap = 0;
  for (std::size_t i = 0; i < x.size(); ++i) overlap += (x[i] == '1' && y[i] == '1');
  return x.ones() - overlap;
}

std::vector<Word> enumerate_words(int length, int ones) {
  std::vector<Word> out;
  if (length < 0 || ones < 0 || ones > length) return out;
  std::string w(static_cast<std::size_t>(ones), '1');
  w.append(static_cast<std::size_t>(length - ones), '2');
  do {
    out.push_back(Word{w});
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

std::uint64_t word_rank(std::string_view letters) {
  const int length = static_cast<int>(letters.size());
  int remaining = static_cast<int>(std::count(letters.begin(), letters.end(), '1'));
  std::uint64_t rank = 0;
  for (int j = 0; j < length && remaining > 0; ++j) {
    if (letters[static_cast<std::size_t>(j)] == '1') {
      --remaining;
    } else {
      // Every word sharing this prefix but carrying a 1 here precedes `letters`.
      rank += binomial(length - j - 1, remaining - 1);
    }
  }
  return rank;
}

std::vector<Word> enumerate_points(const ProblemDims& dims) { return enumerate_words(dims.n, dims.k); }

namespace {

void extend_tails(std::string& prefix, int length, int min_ones, int max_ones, int ones, std::vector<Word>& out) {
  const int remaining = length - static_cast<int>(prefix.size());
  if (remaining == 0) {
    out.push_back(Word{prefix});
    return;
  }
  for (char c : {'1', '2'}) {
    const int next = ones + (c == '1');
    if (next > max_ones || next + remaining - 1 < min_ones) continue;
    prefix.push_back(c);
    extend_tails(prefix, length, min_ones, max_ones, next, out);
    prefix.pop_back();
  }
}

void extend_tableaux(std::string& prefix, int p, int q, int ones, int twos, std::vector<Tableau>& out) {
  if (ones == p && twos == q) {
    out.push_back(Tableau{prefix});
    return;
  }
  if (ones < p) {
    prefix.push_back('1');
    extend_tableaux(prefix, p, q, ones + 1, twos, out);
    prefix.pop_back();
  }
  if (twos < q && twos < ones) {
    prefix.push_back('2');
    extend_tableaux(prefix, p, q, ones, twos + 1, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Word> enumerate_tails(const ProblemDims& dims, int i) {
  if (i < 0 || i > dims.n) throw InputError("level " + std::to_string(i) + " outside 0..n");
  std::vector<Word> out;
  std::string prefix;
  extend_tails(prefix, dims.n - i, std::max(0, dims.k - i), dims.k, 0, out);
  return out;
}

std::vector<int> admissible_shapes(int i, int r) {
  if (i < 0 || r < 0 || r > i) {
    throw InputError("admissible_shapes needs 0 <= r <= i, got i=" + std::to_string(i) + " r=" + std::to_string(r));
  }
  std::vector<int> out;
  for (int a = 0; a <= std::min(r, i - r); ++a) out.push_back(a);
  return out;
}

std::vector<Tableau> enumerate_tableaux(TwoRowShape shape) {
  if (!shape.valid()) throw InputError("invalid two-row shape");
  std::vector<Tableau> out;
  std::string prefix;
  extend_tableaux(prefix, shape.p, shape.q, 0, 0, out);
  return out;
}

std::uint64_t syt_count(TwoRowShape shape) {
  if (!shape.valid()) throw InputError("invalid two-row shape");
  return binomial(shape.size(), shape.q) - binomial(shape.size(), shape.q - 1);
}

RSStepResult rs_step(RSState state, char letter) {
  if (letter == '2') {
    state.shape.p += 1;
    return {state, 1};
  }
  if (letter != '1') throw InputError("RS letters must be 1 or 2");
  state.m += 1;
  if (state.shape.p - (state.m - 1) > 0) {
    // The new 1 displaces the leftmost 2 of row 1, which drops to the end of row 2.
    state.shape.q += 1;
    return {state, 2};
  }
  state.shape.p += 1;
  return {state, 1};
}

std::vector<BasisLabel> rs_path(const Word& x, const ProblemDims& dims) {
  if (static_cast<int>(x.size()) != dims.n || x.ones() != dims.k) {
    throw InputError("rs_path needs a word of length n with k ones");
  }
  std::vector<BasisLabel> path;
  path.reserve(x.size() + 1);
  RSState state;
  std::string rowseq;
  path.push_back(BasisLabel{Tableau{}, x});
  for (std::size_t i = 0; i < x.size(); ++i) {
    const RSStepResult step = rs_step(state, x[i]);
    state = step.state;
    rowseq.push_back(step.row == 1 ? '1' : '2');
    path.push_back(BasisLabel{Tableau{rowseq}, Word{x.letters.substr(i + 1)}});
  }
  return path;
}

bool is_admissible(const BasisLabel& label, const ProblemDims& dims) {
  const int i = label.level();
  if (i > dims.n || static_cast<int>(label.tail.size()) != dims.n - i) return false;
  int ones = 0;
  int twos = 0;
  for (char c : label.tab.rowseq) {
    if (c == '1') {
      ++ones;
    } else if (c == '2') {
      ++twos;
    } else {
      return false;
    }
    if (twos > ones) return false;
  }
  for (char c : label.tail.letters) {
    if (c != '1' && c != '2') return false;
  }
  const int r = dims.k - label.tail.ones();
  if (r < 0 || r > i) return false;
  return twos <= std::min(r, i - r);
}

LevelBasis::LevelBasis(const ProblemDims& dims, int level) : dims_(dims), level_(level) {
  if (level < 0 || level > dims.n) throw InputError("level " + std::to_string(level) + " outside 0..n");
  labels_.reserve(dims.dim);
  for (Word& tail : enumerate_tails(dims, level)) {
    const int r = dims.k - tail.ones();
    const std::size_t first = labels_.size();
    for (int a : admissible_shapes(level, r)) {
      for (Tableau& tab : enumerate_tableaux(TwoRowShape{level - a, a})) {
        labels_.push_back(BasisLabel{std::move(tab), tail});
      }
    }
    std::sort(labels_.begin() + static_cast<std::ptrdiff_t>(first), labels_.end());
  }
  if (labels_.size() != dims.dim) {
    throw ConsistencyError("B_" + std::to_string(level) + " has " + std::to_string(labels_.size()) +
                           " labels, expected C(n,k)=" + std::to_string(dims.dim));
  }
}

std::size_t LevelBasis::index_of(const BasisLabel& label) const {
  const auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) {
    throw InputError("label (" + label.tab.rowseq + ", " + label.tail.letters + ") is not in B_" + std::to_string(level_));
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

bool LevelBasis::contains(const BasisLabel& label) const {
  return std::binary_search(labels_.begin(), labels_.end(), label);
}

std::size_t label_index(int level, const BasisLabel& label, const ProblemDims& dims) {
  if (label.level() != level || !is_admissible(label, dims)) {
    throw InputError("label is not admissible at level " + std::to_string(level));
  }
  return LevelBasis(dims, level).index_of(label);
}

}  // namespace jfft
