#include "jfft/plan_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jfft/errors.hpp"
#include "jfft/format.hpp"

namespace jfft {

namespace {

constexpr std::string_view kChecksumPrefix = "fnv1a64:";

void append_indices(std::string& out, const std::vector<std::uint32_t>& indices) {
  out.push_back('[');
  for (std::size_t t = 0; t < indices.size(); ++t) {
    if (t) out.push_back(',');
    out += std::to_string(indices[t]);
  }
  out.push_back(']');
}

std::string checksum_of(std::string_view body) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(body)));
  return std::string(kChecksumPrefix) + hex;
}

template <typename T>
T require(const nlohmann::json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(std::string("plan is missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(std::string("plan field '") + key + "' has the wrong type");
  }
}

std::vector<std::uint32_t> parse_indices(const nlohmann::json& arr, const char* what) {
  if (!arr.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<std::uint32_t> out;
  for (const auto& v : arr) {
    if (!v.is_number_unsigned()) throw FormatError(std::string(what) + " entries must be nonnegative integers");
    out.push_back(v.get<std::uint32_t>());
  }
  return out;
}

}  // namespace

std::string serialize_plan(const FactorPlan& plan, bool with_checksum) {
  std::string out;
  out += "{\"version\":" + std::to_string(plan.format_version);
  out += ",\"n\":" + std::to_string(plan.dims.n);
  out += ",\"k\":" + std::to_string(plan.dims.k);
  out += ",\"levels\":[";
  for (std::size_t l = 0; l < plan.levels.size(); ++l) {
    const FactorLevel& level = plan.levels[l];
    out += l ? ",\n" : "\n";
    out += "{\"i\":" + std::to_string(level.i) + ",\"blocks\":[";
    for (std::size_t b = 0; b < level.blocks.size(); ++b) {
      const Block& block = level.blocks[b];
      if (b) out.push_back(',');
      // Frame strings are validated {1,2}-words, so no escaping is needed.
      out += "{\"frame\":{\"tab\":\"" + Tableau::parse(block.frame_tab.rowseq).rowseq + "\",\"tail\":\"" +
             Word::parse(block.frame_tail.letters).letters + "\"},\"srcs\":";
      append_indices(out, block.srcs);
      out += ",\"dsts\":";
      append_indices(out, block.dsts);
      if (block.coeffs) {
        const Matrix2& r = block.coeffs->r;
        out += ",\"coeffs\":[[" + format_double(r[0][0]) + "," + format_double(r[0][1]) + "],[" +
               format_double(r[1][0]) + "," + format_double(r[1][1]) + "]]";
      }
      out.push_back('}');
    }
    out += "]}";
  }
  out += plan.levels.empty() ? "]" : "\n]";
  if (!with_checksum) {
    out += "}\n";
    return out;
  }
  const std::string body = out + "}\n";
  out += ",\"checksum\":\"" + checksum_of(body) + "\"}\n";
  return out;
}

FactorPlan parse_plan(std::string_view text, double orthogonality_tolerance) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("plan is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("plan must be a JSON object");
  const int version = require<int>(doc, "version");
  if (version != kPlanFormatVersion) {
    throw FormatError("plan version mismatch: file has " + std::to_string(version) + ", expected " +
                      std::to_string(kPlanFormatVersion));
  }
  FactorPlan plan;
  try {
    plan.dims = ProblemDims::make(require<int>(doc, "n"), require<int>(doc, "k"));
  } catch (const InputError& e) {
    throw FormatError(std::string("plan dimensions: ") + e.what());
  }
  plan.format_version = version;

  const auto levels = doc.find("levels");
  if (levels == doc.end() || !levels->is_array()) throw FormatError("plan 'levels' must be an array");
  for (const auto& lv : *levels) {
    if (!lv.is_object()) throw FormatError("plan level must be an object");
    FactorLevel level;
    level.i = require<int>(lv, "i");
    const auto blocks = lv.find("blocks");
    if (blocks == lv.end() || !blocks->is_array()) throw FormatError("plan level 'blocks' must be an array");
    for (const auto& bj : *blocks) {
      if (!bj.is_object()) throw FormatError("plan block must be an object");
      Block block;
      block.level = level.i;
      const auto frame = bj.find("frame");
      if (frame == bj.end() || !frame->is_object()) throw FormatError("plan block needs a 'frame' object");
      try {
        block.frame_tab = Tableau::parse(require<std::string>(*frame, "tab"));
        block.frame_tail = Word::parse(require<std::string>(*frame, "tail"));
      } catch (const InputError& e) {
        throw FormatError(std::string("plan frame: ") + e.what());
      }
      block.srcs = parse_indices(bj.value("srcs", nlohmann::json()), "srcs");
      block.dsts = parse_indices(bj.value("dsts", nlohmann::json()), "dsts");
      if (const auto coeffs = bj.find("coeffs"); coeffs != bj.end()) {
        if (!coeffs->is_array() || coeffs->size() != 2) throw FormatError("coeffs must be a 2x2 array");
        Rotation rot;
        for (std::size_t row = 0; row < 2; ++row) {
          const auto& rj = (*coeffs)[row];
          if (!rj.is_array() || rj.size() != 2) throw FormatError("coeffs must be a 2x2 array");
          for (std::size_t col = 0; col < 2; ++col) {
            if (!rj[col].is_number()) throw FormatError("coeffs entries must be numbers");
            rot.r[row][col] = rj[col].get<double>();
          }
        }
        block.coeffs = rot;
      }
      level.blocks.push_back(std::move(block));
    }
    plan.levels.push_back(std::move(level));
  }

  if (const auto sum = doc.find("checksum"); sum != doc.end()) {
    if (!sum->is_string()) throw FormatError("checksum must be a string");
    const std::string expected = checksum_of(serialize_plan(plan, false));
    if (sum->get<std::string>() != expected) {
      throw VerificationError("plan checksum mismatch: file has " + sum->get<std::string>() + ", content hashes to " +
                              expected);
    }
  }
  validate_plan(plan, orthogonality_tolerance);
  return plan;
}

void save_plan(const FactorPlan& plan, const std::filesystem::path& destination) {
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open '" + destination.string() + "' for writing");
  out << serialize_plan(plan);
  if (!out) throw InputError("failed writing '" + destination.string() + "'");
}

FactorPlan load_plan(const std::filesystem::path& source, double orthogonality_tolerance) {
  std::ifstream in(source, std::ios::binary);
  if (!in) throw InputError("cannot open plan '" + source.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_plan(buf.str(), orthogonality_tolerance);
}

}  // namespace jfft
