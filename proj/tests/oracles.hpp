#pragma once

// Brute-force references used by the unit and acceptance suites. Nothing in
// here calls into the library's search or factoring code.

#include <algorithm>
#include <cstdint>
#include <tuple>
#include <vector>

namespace perfnum::testing {

inline unsigned __int128 ipow(std::uint64_t base, unsigned m) {
  unsigned __int128 acc = 1;
  for (unsigned i = 0; i < m; ++i) acc *= base;
  return acc;
}

// Every (x, y), x >= y >= 1, with x^m + y^m == n, descending x.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> brute_representations(std::uint64_t n,
                                                                                   unsigned m) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t y = 1; 2 * ipow(y, m) <= n; ++y) {
    for (std::uint64_t x = y; ipow(x, m) + ipow(y, m) <= n; ++x) {
      if (ipow(x, m) + ipow(y, m) == n) out.emplace_back(x, y);
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// (n, x, y) for every x >= y >= 1 with x^m + y^m <= limit, ordered by
// ascending n then descending x.
inline std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> nested_loop(
    unsigned m, std::uint64_t limit) {
  std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t y = 1; 2 * ipow(y, m) <= limit; ++y) {
    for (std::uint64_t x = y; ipow(x, m) + ipow(y, m) <= limit; ++x) {
      out.emplace_back(static_cast<std::uint64_t>(ipow(x, m) + ipow(y, m)), x, y);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) < std::get<0>(b)
                                            : std::get<1>(a) > std::get<1>(b);
  });
  return out;
}

inline bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint64_t divisor_sum(std::uint64_t n) {
  std::uint64_t total = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) total += d;
  }
  return total;
}

}  // namespace perfnum::testing
