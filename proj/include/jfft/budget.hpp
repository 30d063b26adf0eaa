#pragma once

#include <cstdint>
#include <string_view>

namespace jfft {

inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{2} << 30;  // 2 GiB

/// Byte cap on dense allocations: $JFFT_MEM_BUDGET when set, else kDefaultMemoryBudget.
std::uint64_t memory_budget_bytes();

/// Throws BudgetError when `bytes` exceeds `budget`.
void require_budget(std::uint64_t bytes, std::uint64_t budget, std::string_view what);

/// Bytes of an rows x cols matrix of doubles, saturating instead of overflowing.
std::uint64_t dense_bytes(std::uint64_t rows, std::uint64_t cols);

}  // namespace jfft
