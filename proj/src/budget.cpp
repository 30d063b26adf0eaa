#include "jfft/budget.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>

#include "jfft/errors.hpp"

namespace jfft {

std::uint64_t memory_budget_bytes() {
  const char* env = std::getenv("JFFT_MEM_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultMemoryBudget;
  std::uint64_t value = 0;
  const char* end = env + std::strlen(env);
  const auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InputError(std::string("JFFT_MEM_BUDGET must be a byte count, got '") + env + "'");
  }
  return value;
}

void require_budget(std::uint64_t bytes, std::uint64_t budget, std::string_view what) {
  if (bytes > budget) {
    throw BudgetError(std::string(what) + " needs " + std::to_string(bytes) + " bytes, budget is " +
                      std::to_string(budget));
  }
}

std::uint64_t dense_bytes(std::uint64_t rows, std::uint64_t cols) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (rows != 0 && cols > kMax / rows / sizeof(double)) return kMax;
  return rows * cols * sizeof(double);
}

}  // namespace jfft
