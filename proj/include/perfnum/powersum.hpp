#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "perfnum/bigmath.hpp"
#include "perfnum/mersenne.hpp"

namespace perfnum {

// n = x^m + y^m with x >= y >= 1.
struct Representation {
  unsigned long m = 0;
  Natural x;
  Natural y;
  Natural n;

  friend bool operator==(const Representation&, const Representation&) = default;
};

namespace powersum {

// Recomputes x^m + y^m and checks normalization.
bool verify(const Representation& rep);

// Exhaustive search over x in [iroot(ceil(n/2), m), iroot(n-1, m)], sorted by
// descending x. Independent of any divisor reasoning.
std::vector<Representation> decide_naive(const Natural& n, unsigned long m);

// The unique x in [ceil(s/2), s-1] with x^m + (s-x)^m == n, if any. Uses
// bisection; the sum is strictly increasing in x on that interval.
std::optional<Natural> solve_on_divisor(const Natural& n, unsigned long m, const Natural& s);

// For odd m, x + y divides x^m + y^m, and the divisors of an even perfect
// number are exactly 2^i and 2^i(2^p-1), 0 <= i < p. Throws EvenExponent.
std::vector<Representation> decide_structured(const PerfectNumber& pn, unsigned long m);

// Same divisor argument for arbitrary n, with divisors taken from a complete
// factorization. Throws EvenExponent or IncompleteFactorization.
std::vector<Representation> decide_divisors(const Natural& n, unsigned long m,
                                            const bigmath::FactorBudget& budget = {});

// Lazily yields every x^m + y^m <= limit in nondecreasing order of n, ties
// by descending x. Rows y = const are merged through a min-heap; row y+1 is
// opened when the diagonal entry (y, y) is emitted. Single consumer.
class Enumerator {
 public:
  Enumerator(unsigned long m, Natural limit);

  std::optional<Representation> next();

 private:
  struct Entry {
    Natural n;
    Natural x;
    Natural y;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.n != b.n) return a.n > b.n;
      return a.x < b.x;
    }
  };

  void push(Natural x, Natural y);

  unsigned long m_;
  Natural limit_;
  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
};

std::vector<Representation> enumerate(unsigned long m, const Natural& limit);

struct Finding {
  unsigned long p = 0;
  Representation rep;

  friend bool operator==(const Finding&, const Finding&) = default;
};

struct ScanCell {
  unsigned long p = 0;
  unsigned long m = 0;
  enum class Method { structured, naive, skipped } method = Method::skipped;
  std::vector<Representation> reps;
  // Set only when the naive cross-check ran on a structured cell.
  std::optional<bool> oracle_agrees;
  std::int64_t elapsed_us = 0;
};

struct ScanOptions {
  // Even m has no divisor shortcut; the naive search runs only up to this p.
  unsigned long even_m_max_p = 31;
  // Also run the naive oracle on odd-m cells and record agreement.
  bool cross_check = false;
  unsigned workers = 1;
};

struct ScanReport {
  unsigned long m_min = 2;
  unsigned long m_max = 2;
  std::vector<unsigned long> p_list;
  std::vector<ScanCell> cells;  // (p, m) lexicographic
  std::vector<Finding> findings;
  bool all_verified = true;

  // findings are exactly the 28 = 3^3 + 1^3 cell when it was scanned, and
  // every cross-check agreed.
  bool matches_conjecture() const;
};

ScanReport scan_conjecture(const std::vector<unsigned long>& p_list, unsigned long m_max,
                           const ScanOptions& options = {});

}  // namespace powersum
}  // namespace perfnum
