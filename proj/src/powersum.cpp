#include "perfnum/powersum.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <string>

#include "perfnum/errors.hpp"
#include "perfnum/parallel.hpp"

namespace perfnum::powersum {

namespace {

using u128 = unsigned __int128;

template <std::size_t Mod>
constexpr std::array<bool, Mod> square_residues() {
  std::array<bool, Mod> table{};
  for (std::size_t k = 0; k < Mod; ++k) table[k * k % Mod] = true;
  return table;
}

constexpr auto kSq64 = square_residues<64>();
constexpr auto kSq63 = square_residues<63>();
constexpr auto kSq65 = square_residues<65>();
constexpr auto kSq11 = square_residues<11>();

bool maybe_square(std::uint64_t r) {
  return kSq64[r & 63] && kSq63[r % 63] && kSq65[r % 65] && kSq11[r % 11];
}

u128 pow_u128(std::uint64_t base, unsigned long m) {
  u128 acc = 1;
  for (unsigned long i = 0; i < m; ++i) acc *= base;
  return acc;
}

Representation make_rep(unsigned long m, Natural x, Natural y, const Natural& n) {
  return Representation{m, std::move(x), std::move(y), n};
}

// m == 2, n < 2^64: walk x downward keeping r = n - x^2 incrementally and
// screen r with quadratic-residue tables before taking an exact root.
std::vector<Representation> naive_squares_u64(std::uint64_t n, std::uint64_t x_hi,
                                              std::uint64_t x_lo, const Natural& n_big) {
  std::vector<Representation> out;
  std::uint64_t r = n - x_hi * x_hi;
  for (std::uint64_t x = x_hi;; --x) {
    if (maybe_square(r)) {
      std::uint64_t y = bigmath::iroot_u64(r, 2);
      if (y * y == r && y >= 1 && y <= x) {
        out.push_back(make_rep(2, bigmath::from_u64(x), bigmath::from_u64(y), n_big));
      }
    }
    if (x == x_lo) break;
    r += 2 * x - 1;
  }
  return out;
}

// m >= 3, n < 2^64: x descends while y = iroot(n - x^m, m) only ascends.
std::vector<Representation> naive_powers_u64(std::uint64_t n, unsigned long m,
                                             std::uint64_t x_hi, std::uint64_t x_lo,
                                             const Natural& n_big) {
  std::vector<Representation> out;
  std::uint64_t y = bigmath::iroot_u64(n - static_cast<std::uint64_t>(pow_u128(x_hi, m)), m);
  u128 y_pow = pow_u128(y, m);
  u128 next_pow = pow_u128(y + 1, m);
  for (std::uint64_t x = x_hi;; --x) {
    const u128 r = u128{n} - pow_u128(x, m);
    while (next_pow <= r) {
      ++y;
      y_pow = next_pow;
      next_pow = pow_u128(y + 1, m);
    }
    if (y_pow == r && y >= 1 && y <= x) {
      out.push_back(make_rep(m, bigmath::from_u64(x), bigmath::from_u64(y), n_big));
    }
    if (x == x_lo) break;
  }
  return out;
}

std::vector<Representation> naive_big(const Natural& n, unsigned long m, const Natural& x_hi,
                                      const Natural& x_lo) {
  std::vector<Representation> out;
  Natural y = bigmath::iroot(n - bigmath::pow(x_hi, m), m);
  Natural y_pow = bigmath::pow(y, m);
  Natural next_pow = bigmath::pow(y + 1, m);
  for (Natural x = x_hi; x >= x_lo; --x) {
    const Natural r = n - bigmath::pow(x, m);
    while (next_pow <= r) {
      ++y;
      y_pow = next_pow;
      next_pow = bigmath::pow(y + 1, m);
    }
    if (y_pow == r && y >= 1 && y <= x) out.push_back(make_rep(m, x, y, n));
  }
  return out;
}

std::vector<Representation> decide_over(const Natural& n, unsigned long m,
                                        const std::vector<Natural>& divisors) {
  std::vector<Representation> out;
  for (const auto& s : divisors) {
    if (auto x = solve_on_divisor(n, m, s)) out.push_back(make_rep(m, *x, s - *x, n));
  }
  std::sort(out.begin(), out.end(),
            [](const Representation& a, const Representation& b) { return a.x > b.x; });
  return out;
}

void require_odd(unsigned long m) {
  if (m < 3 || m % 2 == 0) {
    throw EvenExponent("divisor decision needs an odd exponent >= 3, got " + std::to_string(m));
  }
}

}  // namespace

bool verify(const Representation& rep) {
  return rep.m >= 2 && rep.y >= 1 && rep.x >= rep.y &&
         bigmath::pow(rep.x, rep.m) + bigmath::pow(rep.y, rep.m) == rep.n;
}

std::vector<Representation> decide_naive(const Natural& n, unsigned long m) {
  if (m < 2) throw PreconditionError("decide_naive: exponent must be at least 2");
  if (n < 2) throw PreconditionError("decide_naive: n must be at least 2");
  const Natural half_up = bigmath::ceil_div(n, 2);
  if (bigmath::fits_u64(n)) {
    const std::uint64_t nn = bigmath::to_u64(n);
    const std::uint64_t x_hi = bigmath::iroot_u64(nn - 1, m);
    const std::uint64_t x_lo = std::max<std::uint64_t>(1, bigmath::iroot_u64(bigmath::to_u64(half_up), m));
    if (x_hi < x_lo) return {};
    return m == 2 ? naive_squares_u64(nn, x_hi, x_lo, n) : naive_powers_u64(nn, m, x_hi, x_lo, n);
  }
  const Natural x_hi = bigmath::iroot(n - 1, m);
  Natural x_lo = bigmath::iroot(half_up, m);
  if (x_lo < 1) x_lo = 1;
  if (x_hi < x_lo) return {};
  return naive_big(n, m, x_hi, x_lo);
}

std::optional<Natural> solve_on_divisor(const Natural& n, unsigned long m, const Natural& s) {
  if (s < 2) return std::nullopt;
  auto f = [&](const Natural& x) -> Natural { return bigmath::pow(x, m) + bigmath::pow(s - x, m); };
  Natural lo = bigmath::ceil_div(s, 2);
  Natural hi = s - 1;
  if (f(lo) > n || f(hi) < n) return std::nullopt;
  // Smallest x in [lo, hi] with f(x) >= n.
  while (lo < hi) {
    Natural mid = (lo + hi) >> 1;
    if (f(mid) >= n) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (f(lo) == n) return lo;
  return std::nullopt;
}

std::vector<Representation> decide_structured(const PerfectNumber& pn, unsigned long m) {
  require_odd(m);
  std::vector<Natural> divisors;
  divisors.reserve(2 * pn.p);
  for (unsigned long i = 0; i < pn.p; ++i) {
    divisors.push_back(bigmath::pow2(i));
    divisors.push_back(pn.mersenne << i);
  }
  return decide_over(pn.n, m, divisors);
}

std::vector<Representation> decide_divisors(const Natural& n, unsigned long m,
                                            const bigmath::FactorBudget& budget) {
  require_odd(m);
  const auto fac = bigmath::factor(n, budget);
  if (!fac.complete) {
    throw IncompleteFactorization("decide_divisors: could not factor " + bigmath::to_decimal(n));
  }
  std::vector<Natural> divisors{1};
  for (const auto& [prime, exponent] : fac.factors) {
    const std::size_t base = divisors.size();
    Natural power = 1;
    for (unsigned long e = 1; e <= exponent; ++e) {
      power *= prime;
      for (std::size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * power);
    }
  }
  return decide_over(n, m, divisors);
}

Enumerator::Enumerator(unsigned long m, Natural limit) : m_(m), limit_(std::move(limit)) {
  if (m_ < 2) throw PreconditionError("enumerate: exponent must be at least 2");
  if (limit_ < 2) throw PreconditionError("enumerate: limit must be at least 2");
  push(1, 1);
}

void Enumerator::push(Natural x, Natural y) {
  Natural n = bigmath::pow(x, m_) + bigmath::pow(y, m_);
  if (n <= limit_) heap_.push(Entry{std::move(n), std::move(x), std::move(y)});
}

std::optional<Representation> Enumerator::next() {
  if (heap_.empty()) return std::nullopt;
  Entry top = heap_.top();
  heap_.pop();
  push(top.x + 1, top.y);
  if (top.x == top.y) push(top.y + 1, top.y + 1);
  return Representation{m_, std::move(top.x), std::move(top.y), std::move(top.n)};
}

std::vector<Representation> enumerate(unsigned long m, const Natural& limit) {
  Enumerator stream(m, limit);
  std::vector<Representation> out;
  while (auto rep = stream.next()) out.push_back(std::move(*rep));
  return out;
}

bool ScanReport::matches_conjecture() const {
  bool scanned_28 = false;
  for (const auto& cell : cells) {
    if (cell.p == 3 && cell.m == 3 && cell.method != ScanCell::Method::skipped) scanned_28 = true;
    if (cell.oracle_agrees.has_value() && !*cell.oracle_agrees) return false;
  }
  if (!all_verified) return false;
  if (!scanned_28) return findings.empty();
  const Finding expected{3, Representation{3, 3, 1, 28}};
  return findings.size() == 1 && findings.front() == expected;
}

ScanReport scan_conjecture(const std::vector<unsigned long>& p_list, unsigned long m_max,
                           const ScanOptions& options) {
  if (m_max < 2) throw PreconditionError("scan: m_max must be at least 2");
  std::vector<PerfectNumber> numbers;
  numbers.reserve(p_list.size());
  for (unsigned long p : p_list) numbers.push_back(mersenne::even_perfect(p));

  const std::size_t per_p = m_max - 1;
  auto cells = parallel_map(numbers.size() * per_p, options.workers, [&](std::size_t index) {
    const PerfectNumber& pn = numbers[index / per_p];
    ScanCell cell;
    cell.p = pn.p;
    cell.m = 2 + index % per_p;
    const auto start = std::chrono::steady_clock::now();
    if (cell.m % 2 == 1) {
      cell.method = ScanCell::Method::structured;
      cell.reps = decide_structured(pn, cell.m);
      if (options.cross_check) cell.oracle_agrees = (decide_naive(pn.n, cell.m) == cell.reps);
    } else if (pn.p <= options.even_m_max_p) {
      cell.method = ScanCell::Method::naive;
      cell.reps = decide_naive(pn.n, cell.m);
    }
    cell.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    return cell;
  });

  ScanReport report;
  report.m_max = m_max;
  report.p_list = p_list;
  for (auto& cell : cells) {
    for (const auto& rep : cell.reps) {
      report.all_verified = report.all_verified && verify(rep);
      report.findings.push_back(Finding{cell.p, rep});
    }
  }
  report.cells = std::move(cells);
  return report;
}

}  // namespace perfnum::powersum
