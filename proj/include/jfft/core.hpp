#pragma once

// Combinatorial substrate for the Johnson graph J(n,k): words over {1,2},
// two-row shapes, standard tableaux encoded as row sequences, Robinson-Schensted
// insertion on {1,2}-words and the canonical ordering of intermediate basis labels.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jfft {

/// Binomial coefficient; zero outside 0 <= k <= n.
std::uint64_t binomial(int n, int k);

struct ProblemDims {
  int n = 1;
  int k = 0;
  int s = 0;              // min(k, n-k)
  std::uint64_t dim = 1;  // C(n,k)

  /// Validates 1 <= n <= kMaxN and 0 <= k <= n.
  static ProblemDims make(int n, int k);

  static constexpr int kMaxN = 60;

  friend bool operator==(const ProblemDims&, const ProblemDims&) = default;
};

/// A word over the alphabet {1,2}; letter '1' at position i means i is in the subset.
struct Word {
  std::string letters;

  /// Rejects characters other than '1' and '2'.
  static Word parse(std::string_view text);

  std::size_t size() const { return letters.size(); }
  int ones() const;
  char operator[](std::size_t i) const { return letters[i]; }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

struct TwoRowShape {
  int p = 0;
  int q = 0;

  int size() const { return p + q; }
  bool valid() const { return p >= q && q >= 0; }

  friend bool operator==(const TwoRowShape&, const TwoRowShape&) = default;
};

/// Standard tableau of a two-row shape, stored as the row (1 or 2) receiving each box.
struct Tableau {
  std::string rowseq;

  /// Rejects letters outside {1,2} and prefixes with more 2s than 1s.
  static Tableau parse(std::string_view text);

  std::size_t size() const { return rowseq.size(); }
  TwoRowShape shape() const;
  /// Tableau formed by the first m boxes.
  Tableau restrict(std::size_t m) const { return Tableau{rowseq.substr(0, m)}; }

  friend bool operator==(const Tableau&, const Tableau&) = default;
  friend auto operator<=>(const Tableau&, const Tableau&) = default;
};

/// Content (column minus row) of the box added to `before` in row 1 or row 2.
inline int box_content(TwoRowShape before, int row) { return row == 1 ? before.p : before.q - 1; }

/// Content of every box of the tableau, in filling order.
std::vector<int> tableau_contents(const Tableau& tab);

/// Element of the intermediate basis B_level: a tableau with `level` boxes and a tail
/// word of length n - level.
struct BasisLabel {
  Tableau tab;
  Word tail;

  int level() const { return static_cast<int>(tab.size()); }

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
  /// Canonical order: tail first, then row sequence; '1' < '2' in both.
  friend std::strong_ordering operator<=>(const BasisLabel& a, const BasisLabel& b) {
    if (auto c = a.tail <=> b.tail; c != 0) return c;
    return a.tab <=> b.tab;
  }
};

/// Robinson-Schensted insertion state on {1,2}-words: the shape of P and the number
/// of 1s inserted so far. Row 1 of P holds the m ones followed by 2s; row 2 holds 2s.
struct RSState {
  TwoRowShape shape;
  int m = 0;

  friend bool operator==(const RSState&, const RSState&) = default;
};

struct RSStepResult {
  RSState state;
  int row = 1;  // row where the recording tableau grows
};

// --- words and subsets -------------------------------------------------------

Word word_of_subset(std::span<const int> subset, const ProblemDims& dims);
std::vector<int> subset_of_word(const Word& word);

/// "2-3-6-8" for {2,3,6,8}; the empty subset formats as "".
std::string format_subset(std::span<const int> subset);
/// Inverse of format_subset. Does not check range or order; word_of_subset does.
std::vector<int> parse_subset(std::string_view text);

/// Graph distance in J(n,k): k - |x ∩ y|.
int johnson_distance(const Word& x, const Word& y);

/// All words of length `length` with `ones` ones, lexicographic.
std::vector<Word> enumerate_words(int length, int ones);
/// Position of `word` in enumerate_words(word.size(), word.ones()).
std::uint64_t word_rank(std::string_view letters);

/// The vertices of J(n,k) in canonical (lexicographic) order.
std::vector<Word> enumerate_points(const ProblemDims& dims);
/// The tail set X_i: words of length n-i with ones <= k and k - ones <= i.
std::vector<Word> enumerate_tails(const ProblemDims& dims, int i);

// --- shapes and tableaux -----------------------------------------------------

/// a = 0..min(r, i-r): the row-2 lengths of shapes (i-a, a) occurring in J(i,r).
std::vector<int> admissible_shapes(int i, int r);
std::vector<Tableau> enumerate_tableaux(TwoRowShape shape);
/// Hook count C(p+q, q) - C(p+q, q-1).
std::uint64_t syt_count(TwoRowShape shape);

// --- Robinson-Schensted ------------------------------------------------------

RSStepResult rs_step(RSState state, char letter);
/// Labels (recording tableau after i letters, remaining n-i letters) for i = 0..n.
std::vector<BasisLabel> rs_path(const Word& x, const ProblemDims& dims);

// --- intermediate bases ------------------------------------------------------

bool is_admissible(const BasisLabel& label, const ProblemDims& dims);

/// The labels of B_level in canonical order.
class LevelBasis {
 public:
  LevelBasis(const ProblemDims& dims, int level);

  int level() const { return level_; }
  const ProblemDims& dims() const { return dims_; }
  std::size_t size() const { return labels_.size(); }
  const std::vector<BasisLabel>& labels() const { return labels_; }
  const BasisLabel& operator[](std::size_t i) const { return labels_[i]; }

  /// Throws InputError for labels not in this basis.
  std::size_t index_of(const BasisLabel& label) const;
  bool contains(const BasisLabel& label) const;

 private:
  ProblemDims dims_;
  int level_;
  std::vector<BasisLabel> labels_;
};

std::size_t label_index(int level, const BasisLabel& label, const ProblemDims& dims);

}  // namespace jfft
