#include "perfnum/bigmath.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <stdexcept>

#include "perfnum/errors.hpp"

namespace perfnum::bigmath {

namespace {

// Largest value covered by the fixed-base Miller-Rabin set below.
const Natural kMillerRabinLimit("3317044064679887385961981");
constexpr std::array<unsigned long, 13> kWitnesses = {2,  3,  5,  7,  11, 13, 17,
                                                      19, 23, 29, 31, 37, 41};

// Primes below one million, built once and never mutated afterwards.
const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t kLimit = 1'000'000;
    std::vector<bool> composite(kLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool miller_rabin(const Natural& n) {
  Natural d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  Natural x;
  const Natural n_minus_1 = n - 1;
  for (unsigned long a : kWitnesses) {
    if (n == a) return true;
    Natural base = a;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) continue;
    bool witness = true;
    for (unsigned long r = 1; r < s; ++r) {
      x = (x * x) % n;
      if (x == n_minus_1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// r^m <= bound, without overflowing.
bool pow_at_most(std::uint64_t r, unsigned long m, std::uint64_t bound) {
  unsigned __int128 acc = 1;
  for (unsigned long i = 0; i < m; ++i) {
    acc *= r;
    if (acc > bound) return false;
  }
  return true;
}

// Brent's variant of Pollard rho. Returns a nontrivial divisor or 0.
Natural rho_divisor(const Natural& n, const Natural& c, const Natural& start,
                    std::uint64_t max_iterations) {
  Natural y = start, x, q = 1, g = 1, ys;
  std::uint64_t r = 1, spent = 0;
  constexpr std::uint64_t kBatch = 128;
  auto step = [&](Natural& v) { v = (v * v + c) % n; };
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) step(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      std::uint64_t batch = std::min(kBatch, r - k);
      for (std::uint64_t i = 0; i < batch; ++i) {
        step(y);
        Natural diff = x - y;
        q = (q * abs(diff)) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += batch;
      spent += batch;
      if (spent > max_iterations) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    // The batch overshot; walk it again one step at a time.
    do {
      step(ys);
      Natural diff = x - ys;
      diff = abs(diff);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return (g == n) ? Natural(0) : g;
}

void split_composite(const Natural& n, const FactorBudget& budget, std::mt19937_64& rng,
                     std::map<Natural, unsigned long>& out, Natural& unfactored) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  if (auto root = as_perfect_power(n, 2)) {
    split_composite(*root, budget, rng, out, unfactored);
    split_composite(*root, budget, rng, out, unfactored);
    return;
  }
  for (unsigned attempt = 0; attempt < budget.rho_attempts; ++attempt) {
    Natural c = from_u64(rng() % 1'000'000 + 1);
    Natural start = from_u64(rng() % 1'000'000 + 2);
    Natural d = rho_divisor(n, c, start, budget.rho_iterations);
    if (d != 0 && d != 1 && d != n) {
      split_composite(d, budget, rng, out, unfactored);
      split_composite(n / d, budget, rng, out, unfactored);
      return;
    }
  }
  unfactored *= n;
}

}  // namespace

Natural pow(const Natural& base, unsigned long exponent) {
  Natural out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Natural pow2(unsigned long exponent) {
  Natural out;
  mpz_setbit(out.get_mpz_t(), exponent);
  return out;
}

std::string to_decimal(const Natural& n) { return n.get_str(10); }

Natural from_decimal(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(),
                                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("not a non-negative decimal integer: '" + text + "'");
  }
  return Natural(text, 10);
}

std::size_t bit_length(const Natural& n) {
  return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

bool fits_u64(const Natural& n) { return n >= 0 && bit_length(n) <= 64; }

std::uint64_t to_u64(const Natural& n) {
  if (!fits_u64(n)) throw std::out_of_range("value does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

Natural from_u64(std::uint64_t v) {
  Natural out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

Natural iroot(const Natural& n, unsigned long m) {
  if (m == 0) throw PreconditionError("iroot: exponent must be at least 1");
  if (n < 0) throw PreconditionError("iroot: negative input");
  if (n < 2 || m == 1) return n;
  const std::size_t bits = bit_length(n);
  // 2^(bits-1) <= n < 2^bits brackets the root.
  Natural lo = pow2((bits - 1) / m);
  Natural hi = pow2((bits + m - 1) / m);
  while (hi - lo > 1) {
    Natural mid = (lo + hi) >> 1;
    if (pow(mid, m) <= n) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::uint64_t iroot_u64(std::uint64_t n, unsigned long m) {
  if (m == 0) throw PreconditionError("iroot: exponent must be at least 1");
  if (n < 2 || m == 1) return n;
  const unsigned bits = 64 - static_cast<unsigned>(__builtin_clzll(n));
  std::uint64_t lo = std::uint64_t{1} << ((bits - 1) / m);
  std::uint64_t hi = (bits + m - 1) / m >= 64 ? ~std::uint64_t{0}
                                                : std::uint64_t{1} << ((bits + m - 1) / m);
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (pow_at_most(mid, m, n)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // hi == 2^64-1 may itself satisfy the bound only for m == 1, handled above.
  return lo;
}

std::optional<Natural> as_perfect_power(const Natural& n, unsigned long m) {
  Natural r = iroot(n, m);
  if (pow(r, m) == n) return r;
  return std::nullopt;
}

unsigned long v2(const Natural& n) {
  if (n <= 0) throw PreconditionError("v2: valuation of zero is undefined");
  return mpz_scan1(n.get_mpz_t(), 0);
}

bool is_power_of_two(const Natural& n) { return n > 0 && mpz_popcount(n.get_mpz_t()) == 1; }

bool is_prime(const Natural& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  if (mpz_even_p(n.get_mpz_t())) return false;
  for (unsigned long p : kWitnesses) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (n < kMillerRabinLimit) return miller_rabin(n);
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (unsigned long p : kWitnesses) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = __builtin_ctzll(d);
  d >>= s;
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((unsigned __int128)a * b % n);
  };
  // This base set is deterministic for every 64-bit input.
  for (unsigned long a : kWitnesses) {
    std::uint64_t x = 1, base = a % n, e = d;
    while (e) {
      if (e & 1) x = mulmod(x, base);
      base = mulmod(base, base);
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Natural Factorization::product() const {
  Natural out = unfactored;
  for (const auto& pp : factors) out *= pow(pp.prime, pp.exponent);
  return out;
}

Factorization factor(const Natural& n, const FactorBudget& budget) {
  if (n < 1) throw PreconditionError("factor: input must be positive");
  std::map<Natural, unsigned long> found;
  Natural rest = n;
  const auto& primes = small_primes();
  auto trial = [&](std::uint64_t d) {
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), d)) return false;
    unsigned long e = 0;
    do {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
      ++e;
    } while (mpz_divisible_ui_p(rest.get_mpz_t(), d));
    found[from_u64(d)] += e;
    return true;
  };
  bool rest_prime = is_prime(rest);
  for (std::size_t i = 0; i < primes.size() && !rest_prime && rest > 1; ++i) {
    const std::uint64_t d = primes[i];
    if (d > budget.trial_bound) break;
    if (Natural(from_u64(d) * d) > rest) {
      rest_prime = rest > 1;
      break;
    }
    if (trial(d)) rest_prime = is_prime(rest);
  }
  // Bounds past the tabulated primes fall back to odd trial divisors.
  if (!rest_prime && rest > 1 && budget.trial_bound > primes.back()) {
    for (std::uint64_t d = primes.back() + 2; d <= budget.trial_bound && rest > 1; d += 2) {
      if (Natural(from_u64(d) * d) > rest) {
        rest_prime = true;
        break;
      }
      if (trial(d) && is_prime(rest)) {
        rest_prime = true;
        break;
      }
    }
  }

  Factorization out;
  Natural unfactored = 1;
  if (rest > 1) {
    if (rest_prime || is_prime(rest)) {
      ++found[rest];
    } else {
      std::mt19937_64 rng(budget.seed);
      split_composite(rest, budget, rng, found, unfactored);
    }
  }
  for (auto& [prime, exponent] : found) out.factors.push_back({prime, exponent});
  out.complete = (unfactored == 1);
  out.unfactored = unfactored;
  return out;
}

Natural radical(const Natural& n, const FactorBudget& budget) {
  Factorization f = factor(n, budget);
  if (!f.complete) {
    throw IncompleteFactorization("radical: could not completely factor " + to_decimal(n) +
                                  " (unfactored part " + to_decimal(f.unfactored) + ")");
  }
  Natural out = 1;
  for (const auto& pp : f.factors) out *= pp.prime;
  return out;
}

Natural ceil_div(const Natural& num, const Natural& den) {
  Natural out;
  mpz_cdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

Natural floor_div(const Natural& num, const Natural& den) {
  Natural out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

}  // namespace perfnum::bigmath
