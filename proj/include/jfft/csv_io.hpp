#pragma once

// Line formats:
//   function   subset,value      e.g. "2-3,1.0"; unlisted subsets are 0; duplicates rejected
//   GT         rowseq,a,value    canonical B_n order
//   weights    a,weight
// Blank lines and lines starting with '#' are ignored on input. Numbers are written with
// 17 significant digits, independent of the locale.

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "jfft/transform.hpp"

namespace jfft {

FunctionVector read_function_csv(std::istream& in, const ProblemDims& dims);
void write_function_csv(std::ostream& out, const FunctionVector& f);

GTVector read_gt_csv(std::istream& in, const ProblemDims& dims);
void write_gt_csv(std::ostream& out, const GTVector& g);

void write_weights_csv(std::ostream& out, std::span<const double> weights);

/// "0,2", "0-2" or "0..2", or a mix such as "0,2-3"; every entry must lie in 0..s.
std::vector<int> parse_components(std::string_view text, int s);

}  // namespace jfft
