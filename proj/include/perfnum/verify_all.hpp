#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace perfnum::verify {

// Desk-scale parameters for the full verification run.
struct DeskScale {
  unsigned long max_p = 31;         // perfect numbers used by the scans
  unsigned long max_p_large = 127;  // exponents for mod-4, h-window and chain
  unsigned long scan_m_max = 9;
  std::uint64_t case2_s_max = 10'000;
  unsigned long final_q_max = 60;
  std::uint64_t m5_xy_max = 100;
  unsigned long m5_p = 31;
  unsigned long chain_m_max = 200;
  std::size_t random_instances = 500;
  std::uint64_t random_n_max = 1'000'000;
  std::uint64_t enum_limit = 1'000'000;
  std::uint64_t seed = 20240917;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  nlohmann::json detail;
};

// Each check is one claim verified end to end; the list order is fixed.
CheckResult cube_uniqueness(const DeskScale& desk, unsigned workers);
CheckResult two_squares(const DeskScale& desk, unsigned workers);
CheckResult conjecture_scan(const DeskScale& desk, unsigned workers);
CheckResult proof_steps(const DeskScale& desk, unsigned workers);
CheckResult m5_exceptions(const DeskScale& desk, unsigned workers);
CheckResult abc_chain(const DeskScale& desk, unsigned workers);
CheckResult oracle_equivalence(const DeskScale& desk, unsigned workers);
CheckResult theorem_survivor(const DeskScale& desk, unsigned workers);

std::vector<CheckResult> run_all(const DeskScale& desk, unsigned workers);

// Multiset of x^m + y^m <= limit with x >= y >= 1 from a plain nested loop,
// sorted by (n ascending, x descending).
struct PowerSumTuple {
  std::uint64_t n, x, y;
  friend bool operator==(const PowerSumTuple&, const PowerSumTuple&) = default;
};
std::vector<PowerSumTuple> nested_loop_sums(unsigned long m, std::uint64_t limit);

}  // namespace perfnum::verify
