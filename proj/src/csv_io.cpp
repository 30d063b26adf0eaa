#include "jfft/csv_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "jfft/errors.hpp"
#include "jfft/format.hpp"

namespace jfft {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

// Calls fn(fields, line_number) for each data line; skips blanks, comments and `header`.
template <typename Fn>
void for_each_record(std::istream& in, std::string_view header, std::size_t columns, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t == header) continue;
    const auto fields = split(t, ',');
    if (fields.size() != columns) {
      throw FormatError("line " + std::to_string(number) + ": expected " + std::to_string(columns) + " fields, got " +
                        std::to_string(fields.size()));
    }
    try {
      fn(fields);
    } catch (const Error& e) {
      throw FormatError("line " + std::to_string(number) + ": " + e.what());
    }
  }
}

}  // namespace

FunctionVector read_function_csv(std::istream& in, const ProblemDims& dims) {
  FunctionVector f = FunctionVector::zeros(dims);
  std::vector<char> seen(f.values.size(), 0);
  for_each_record(in, "subset,value", 2, [&](const std::vector<std::string_view>& fields) {
    const Word w = word_of_subset(parse_subset(trim(fields[0])), dims);
    const std::size_t idx = static_cast<std::size_t>(word_rank(w.letters));
    if (seen[idx]) throw FormatError("duplicate subset '" + std::string(trim(fields[0])) + "'");
    seen[idx] = 1;
    f.values[idx] = parse_double(fields[1]);
  });
  return f;
}

void write_function_csv(std::ostream& out, const FunctionVector& f) {
  const std::vector<Word> points = enumerate_points(f.dims);
  for (std::size_t x = 0; x < points.size(); ++x) {
    out << format_subset(subset_of_word(points[x])) << ',' << format_double(f.values[x]) << '\n';
  }
}

GTVector read_gt_csv(std::istream& in, const ProblemDims& dims) {
  const LevelBasis top(dims, dims.n);
  GTVector g{dims, std::vector<double>(dims.dim, 0.0)};
  std::vector<char> seen(g.values.size(), 0);
  for_each_record(in, "rowseq,a,value", 3, [&](const std::vector<std::string_view>& fields) {
    const Tableau tab = Tableau::parse(trim(fields[0]));
    const BasisLabel label{tab, Word{}};
    if (!top.contains(label)) throw FormatError("tableau '" + tab.rowseq + "' is not a GT label for these dims");
    if (parse_int(fields[1]) != tab.shape().q) throw FormatError("a does not match the shape of '" + tab.rowseq + "'");
    const std::size_t idx = top.index_of(label);
    if (seen[idx]) throw FormatError("duplicate tableau '" + tab.rowseq + "'");
    seen[idx] = 1;
    g.values[idx] = parse_double(fields[2]);
  });
  return g;
}

void write_gt_csv(std::ostream& out, const GTVector& g) {
  const LevelBasis top(g.dims, g.dims.n);
  for (std::size_t t = 0; t < top.size(); ++t) {
    const Tableau& tab = top[t].tab;
    out << tab.rowseq << ',' << tab.shape().q << ',' << format_double(g.values[t]) << '\n';
  }
}

void write_weights_csv(std::ostream& out, std::span<const double> weights) {
  for (std::size_t a = 0; a < weights.size(); ++a) out << a << ',' << format_double(weights[a]) << '\n';
}

std::vector<int> parse_components(std::string_view text, int s) {
  std::vector<char> chosen(static_cast<std::size_t>(s) + 1, 0);
  const std::string_view body = trim(text);
  if (body.empty()) return {};
  for (std::string_view part : split(body, ',')) {
    part = trim(part);
    int lo = 0;
    int hi = 0;
    if (const auto dots = part.find(".."); dots != std::string_view::npos) {
      lo = parse_int(part.substr(0, dots));
      hi = parse_int(part.substr(dots + 2));
    } else if (const auto dash = part.find('-', 1); dash != std::string_view::npos) {
      lo = parse_int(part.substr(0, dash));
      hi = parse_int(part.substr(dash + 1));
    } else {
      lo = hi = parse_int(part);
    }
    if (lo > hi) throw InputError("empty component range '" + std::string(part) + "'");
    if (lo < 0 || hi > s) {
      throw InputError("component range '" + std::string(part) + "' outside 0.." + std::to_string(s));
    }
    for (int a = lo; a <= hi; ++a) chosen[static_cast<std::size_t>(a)] = 1;
  }
  std::vector<int> out;
  for (int a = 0; a <= s; ++a) {
    if (chosen[static_cast<std::size_t>(a)]) out.push_back(a);
  }
  return out;
}

}  // namespace jfft
