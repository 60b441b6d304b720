#include "perfnum/mersenne.hpp"

#include <string>

#include "perfnum/errors.hpp"
#include "perfnum/parallel.hpp"

namespace perfnum::mersenne {

namespace {

void require_prime_exponent(unsigned long p) {
  if (!bigmath::is_prime_u64(p)) {
    throw NonPrimeExponent("exponent " + std::to_string(p) + " is not prime");
  }
}

// s mod (2^p - 1) using 2^p == 1.
void reduce_mersenne(Natural& s, unsigned long p, const Natural& modulus) {
  Natural high;
  while (bigmath::bit_length(s) > p) {
    mpz_tdiv_q_2exp(high.get_mpz_t(), s.get_mpz_t(), p);
    mpz_tdiv_r_2exp(s.get_mpz_t(), s.get_mpz_t(), p);
    s += high;
  }
  if (s >= modulus) s -= modulus;
}

}  // namespace

bool lucas_lehmer(unsigned long p) {
  require_prime_exponent(p);
  if (p == 2) return true;  // 3; the recurrence needs odd p
  const Natural modulus = bigmath::pow2(p) - 1;
  Natural s = 4;
  for (unsigned long i = 0; i < p - 2; ++i) {
    s = s * s + (modulus - 2);
    reduce_mersenne(s, p, modulus);
  }
  return s == 0;
}

PerfectNumber even_perfect(unsigned long p) {
  if (!lucas_lehmer(p)) {
    throw NotMersennePrime("2^" + std::to_string(p) + " - 1 is composite");
  }
  PerfectNumber out;
  out.p = p;
  out.mersenne = bigmath::pow2(p) - 1;
  out.n = out.mersenne << (p - 1);
  return out;
}

std::vector<unsigned long> list_exponents(unsigned long max_p, unsigned workers) {
  std::vector<unsigned long> candidates;
  for (unsigned long p = 2; p <= max_p; ++p) {
    if (bigmath::is_prime_u64(p)) candidates.push_back(p);
  }
  auto verdicts =
      parallel_map(candidates.size(), workers, [&](std::size_t i) { return lucas_lehmer(candidates[i]) ? 1 : 0; });
  std::vector<unsigned long> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (verdicts[i]) out.push_back(candidates[i]);
  }
  return out;
}

std::optional<PerfectNumber> recognize_even_perfect(const Natural& n) {
  if (n <= 1 || mpz_odd_p(n.get_mpz_t())) return std::nullopt;
  const unsigned long e = bigmath::v2(n);
  const unsigned long p = e + 1;
  const Natural odd_part = n >> e;
  if (odd_part != bigmath::pow2(p) - 1) return std::nullopt;
  if (!bigmath::is_prime_u64(p) || !lucas_lehmer(p)) return std::nullopt;
  return even_perfect(p);
}

Natural divisor_sum(const Natural& n) {
  Natural total = 0;
  for (Natural d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      total += d;
      Natural co = n / d;
      if (co != d) total += co;
    }
  }
  return total;
}

}  // namespace perfnum::mersenne
