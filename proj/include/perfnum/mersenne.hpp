#pragma once

#include <optional>
#include <vector>

#include "perfnum/bigmath.hpp"

namespace perfnum {

// An even perfect number 2^(p-1)(2^p-1) whose Mersenne factor has been
// certified prime by Lucas-Lehmer. Only mersenne::even_perfect and
// mersenne::recognize_even_perfect construct these.
struct PerfectNumber {
  unsigned long p = 0;
  Natural mersenne;  // 2^p - 1
  Natural n;         // 2^(p-1) * mersenne
};

namespace mersenne {

// True iff 2^p - 1 is prime. Throws NonPrimeExponent for composite p.
bool lucas_lehmer(unsigned long p);

// Throws NonPrimeExponent / NotMersennePrime.
PerfectNumber even_perfect(unsigned long p);

// Exponents p <= max_p with 2^p - 1 prime, ascending.
std::vector<unsigned long> list_exponents(unsigned long max_p, unsigned workers = 1);

std::optional<PerfectNumber> recognize_even_perfect(const Natural& n);

// Sum of all divisors of n by explicit enumeration up to sqrt(n). Only
// meant for small n.
Natural divisor_sum(const Natural& n);

}  // namespace mersenne
}  // namespace perfnum
