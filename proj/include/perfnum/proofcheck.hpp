#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "perfnum/bigmath.hpp"

namespace perfnum {

enum class StepId {
  case1_ellipse,
  case2_contradiction,
  h_window,
  final_equation,
  squares_mod4,
  m5_bounds,
};

enum class Verdict { pass, fail, pass_with_documented_exceptions };

// Named integer values of one counterexample to a step's claimed relation.
struct Witness {
  std::vector<std::pair<std::string, Natural>> values;

  const Natural& at(const std::string& name) const;
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct ProofStepReport {
  StepId step = StepId::case1_ellipse;
  std::string domain_checked;
  std::vector<Witness> exceptions;
  Verdict verdict = Verdict::fail;
  // Step-specific facts (bounds, intervals, certificates). Keys are sorted on
  // serialization, integers are decimal strings.
  nlohmann::json details = nlohmann::json::object();
};

std::string to_string(StepId step);
std::string to_string(Verdict verdict);
// Accepts the CLI spellings: case1-ellipse, case2-contradiction, h-window,
// final-eq, squares-mod4, m5-bounds.
StepId step_from_string(const std::string& name);

namespace proofcheck {

// Integer points of 4x^2 - 4ax + 4a^2 - x - a - 2 = 0, i.e.
// (x + a + 2)/4 = x^2 - ax + a^2, found by scanning the exact bounding box of
// the ellipse. Exceptions are the solutions with x >= min_x and a >= 1.
ProofStepReport check_case1_ellipse(long min_x = 1);

// For 8 <= s <= s_max, the balanced split x = ceil(s/2), a = floor(s/2)
// minimizes x^3 + a^3; checks 32(x^3 + a^3) > (s + 4)^2, the denominator-free
// form of x^3 + a^3 > (s/4 + 1)(s/8 + 1/2). Beyond s_max the polynomial
// 8s^3 - (s + 4)^2 is certified positive past its Cauchy root bound.
// Throws DomainTooSmall when s_max < 8 or below the root bound.
ProofStepReport check_case2_contradiction(const Natural& s_max);

// For each p, H = {h in [1, p-1] : 2^(2h) > M 2^(p-1-h) and
// 2^(2h) <= 4 M 2^(p-1-h)} with M = 2^p - 1. Exceptions are h in H with
// 3h outside {2p-1, 2p}. Throws NotMersennePrime.
ProofStepReport check_h_window(const std::vector<unsigned long>& p_list);
ProofStepReport check_h_window(unsigned long p);

// For q in [1, q_max] and N = 2^q: no positive x, a with x + a = 2N^2 and
// x^2 - ax + a^2 = 4N^4 - N. Uses (x+a)^2 - (x^2 - ax + a^2) = 3ax, so the
// system reduces to 3ax = N. Small q are also searched exhaustively.
ProofStepReport check_final_equation(unsigned long q_max);

// 2^p - 1 = 3 (mod 4) for each p, plus an exhaustive two-squares search on
// the perfect number for p <= naive_max_p. Throws NotMersennePrime.
ProofStepReport check_squares_mod4(const std::vector<unsigned long>& p_list,
                                   unsigned long naive_max_p = 13);

// (i) pairs 1 <= x, y <= xy_max violating 2(x+y)^3 <= x^5 + y^5, with the
// strict 2A^2 < B variant reported alongside; (ii) the h-range allowed by
// A = 2^h, B = 2^(p-1-h)(2^p - 1) for p, both as stated (3h >= p-1,
// 3h <= 2p-2) and from the exact inequalities 2A^2 < B, A^4 >= B.
ProofStepReport check_m5_bounds(const Natural& xy_max, unsigned long p);

// Re-evaluates every exception against the step's defining relation.
bool reverify_exceptions(const ProofStepReport& report);

// Identity (x+a)^2 - (x^2 - ax + a^2) == 3ax on concrete values.
bool cube_identity_holds(const Natural& x, const Natural& a);

}  // namespace proofcheck
}  // namespace perfnum
