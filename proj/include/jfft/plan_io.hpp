#pragma once

// Plan files are JSON:
//   {"version":1,"n":N,"k":K,"levels":[{"i":I,"blocks":[
//      {"frame":{"tab":"..","tail":".."},"srcs":[..],"dsts":[..],"coeffs":[[r11,r12],[r21,r22]]}, ...]}, ...],
//    "checksum":"fnv1a64:<16 hex digits>"}
// One level per line, numbers with 17 significant digits. The checksum covers the file
// produced without the checksum field, so serialization is byte-deterministic.

#include <filesystem>
#include <string>
#include <string_view>

#include "jfft/planner.hpp"

namespace jfft {

std::string serialize_plan(const FactorPlan& plan, bool with_checksum = true);

/// Parses and re-validates a plan. Throws FormatError for malformed documents or a
/// version mismatch, VerificationError for checksum or invariant failures.
FactorPlan parse_plan(std::string_view text, double orthogonality_tolerance = 1e-12);

void save_plan(const FactorPlan& plan, const std::filesystem::path& destination);
FactorPlan load_plan(const std::filesystem::path& source, double orthogonality_tolerance = 1e-12);

}  // namespace jfft
