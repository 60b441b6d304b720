#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace perfnum {

// Arbitrary-precision non-negative integer. Operations in this library never
// produce negative Naturals; signed intermediates use the same GMP type.
using Natural = mpz_class;

namespace bigmath {

Natural pow(const Natural& base, unsigned long exponent);
Natural pow2(unsigned long exponent);
std::string to_decimal(const Natural& n);
// Throws std::invalid_argument on anything but a plain non-negative decimal.
Natural from_decimal(const std::string& text);
// Number of bits of n; 0 for n == 0.
std::size_t bit_length(const Natural& n);
bool fits_u64(const Natural& n);
std::uint64_t to_u64(const Natural& n);
Natural from_u64(std::uint64_t v);

// Largest r with r^m <= n.
Natural iroot(const Natural& n, unsigned long m);
std::uint64_t iroot_u64(std::uint64_t n, unsigned long m);

// r with r^m == n, if any.
std::optional<Natural> as_perfect_power(const Natural& n, unsigned long m);

// 2-adic valuation. Throws PreconditionError for n == 0.
unsigned long v2(const Natural& n);

bool is_power_of_two(const Natural& n);

// Deterministic primality check: Miller-Rabin on a fixed base set below
// 3.317e24, BPSW above.
bool is_prime(const Natural& n);
bool is_prime_u64(std::uint64_t n);

struct FactorBudget {
  std::uint64_t trial_bound = 1'000'000;
  std::uint64_t rho_iterations = 2'000'000;  // per rho attempt
  unsigned rho_attempts = 16;
  std::uint64_t seed = 0x5eed'0f'ab'c0ffeeULL;
};

struct PrimePower {
  Natural prime;
  unsigned long exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  std::vector<PrimePower> factors;  // ascending primes
  bool complete = true;
  // Composite part left over when complete == false.
  Natural unfactored = 1;

  Natural product() const;
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

Factorization factor(const Natural& n, const FactorBudget& budget = {});

// Product of the distinct primes of n. Throws IncompleteFactorization when
// the budget does not suffice.
Natural radical(const Natural& n, const FactorBudget& budget = {});

// Exact ceil/floor of num/den for den > 0 (num may be negative).
Natural ceil_div(const Natural& num, const Natural& den);
Natural floor_div(const Natural& num, const Natural& den);

}  // namespace bigmath
}  // namespace perfnum
