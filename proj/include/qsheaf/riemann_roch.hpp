#pragma once

#include <algorithm>
#include <cstdint>

namespace qsheaf {

/// dim H^0(P^1, O(x)).
constexpr std::int64_t h0(std::int64_t x) { return std::max<std::int64_t>(0, x + 1); }

/// dim H^1(P^1, O(x)); h0(x) - h1(x) = x + 1.
constexpr std::int64_t h1(std::int64_t x) { return std::max<std::int64_t>(0, -x - 1); }

}  // namespace qsheaf
