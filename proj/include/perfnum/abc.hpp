#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perfnum/bigmath.hpp"

namespace perfnum {

// A + B = C. rad and the Baker verdict exist only for coprime pairs.
struct AbcTriple {
  Natural a;
  Natural b;
  Natural c;
  Natural gcd;
  bool coprime = false;
  std::optional<Natural> rad_abc;
  // max(A, B, C)^4 < rad(ABC)^7, the 7/4-exponent bound with both sides
  // raised to the 4th power.
  std::optional<bool> baker_holds;
};

enum class ChainStatus { holds, fails, not_applicable };
enum class Conclusion { consistent, contradiction_found };

struct ChainStep {
  std::string id;          // bak1 ... bak15, bak7a
  std::string inequality;  // instance with p, m, h substituted
  ChainStatus status = ChainStatus::not_applicable;
  std::string note;
};

struct ChainReport {
  unsigned long p = 0;
  unsigned long m = 0;
  unsigned long h = 0;
  bool premises_hold = false;
  // The proof assumes p > 3; smaller p are evaluated but flagged.
  bool outside_proof_assumption = false;
  // rad(ax) as used in bak1-bak3: the real value when x, a are known,
  // otherwise the bak6 bound 2^(2h-2).
  Natural rad_ax;
  bool rad_is_bound = true;
  std::vector<ChainStep> steps;
  // ceil((2p+10)/28) <= h <= floor((2p-2)/(m-1)) from bak9 and bak13.
  Natural h_lower;
  Natural h_upper;
  Conclusion conclusion = Conclusion::consistent;
  // Printed bak7a (p-11 < 14h-4) and the form bak7 yields (p-11 < 14h-14)
  // disagree on this instance.
  bool bak7a_discrepancy = false;
  // 14h-14 and p-11 are both even, the parity fact bak8 leans on.
  bool bak8_parity_holds = false;
};

struct TheoremReport {
  unsigned long p = 0;
  unsigned long m = 0;
  Natural x;
  Natural a;
  std::optional<unsigned long> h;  // v2(x + a) when x + a is a power of two
  bool cond_zero = false;
  bool cond_a = false;
  bool cond_b = false;
  bool cond_c = false;
  bool cond_d = false;
  bool cond_e = false;
  Natural gcd_xm_am;
  std::optional<AbcTriple> triple;  // (x^m, a^m) when cond_zero holds
  ChainReport chain;
  Conclusion conclusion = Conclusion::consistent;

  bool all_conditions_hold() const {
    return cond_zero && cond_a && cond_b && cond_c && cond_d && cond_e;
  }
};

struct SearchBudget {
  std::size_t max_cells = 1'000'000;  // (p, m, h) candidates
};

struct SearchHit {
  unsigned long p = 0;
  unsigned long m = 0;
  unsigned long h = 0;
  Natural x;
  Natural a;
};

struct SearchReport {
  std::vector<unsigned long> p_list;
  unsigned long m_min = 30;
  std::size_t cells_examined = 0;
  std::vector<SearchHit> hits;  // expected empty
};

std::string to_string(ChainStatus status);
std::string to_string(Conclusion conclusion);

namespace abc {

// Throws IncompleteFactorization when rad(ABC) cannot be computed exactly.
AbcTriple triple(const Natural& a, const Natural& b, const bigmath::FactorBudget& budget = {});

// Throws NotMersennePrime.
TheoremReport theorem_conditions(unsigned long p, unsigned long m, const Natural& x,
                                 const Natural& a, const bigmath::FactorBudget& budget = {});

// Chain with rad(ax) replaced by its bak6 bound 2^(2h-2). Throws
// NotMersennePrime; m >= 2, h >= 1.
ChainReport verify_chain(unsigned long p, unsigned long m, unsigned long h);

// Smallest h allowed by bak9, the CLI default for verify_chain.
unsigned long default_chain_h(unsigned long p);

// For each p and m_min <= m < bit_length(n), tries x + a = 2^h for every
// h in [1, p-1] by bisection and evaluates (b)-(e) on any solution.
// Throws BudgetExceeded when more than budget.max_cells candidates arise.
SearchReport search_conditional_counterexample(const std::vector<unsigned long>& p_list,
                                               unsigned long m_min, const SearchBudget& budget = {},
                                               unsigned workers = 1);

}  // namespace abc
}  // namespace perfnum
