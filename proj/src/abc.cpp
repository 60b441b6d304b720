#include "perfnum/abc.hpp"

#include <sstream>

#include "perfnum/errors.hpp"
#include "perfnum/mersenne.hpp"
#include "perfnum/parallel.hpp"
#include "perfnum/powersum.hpp"

namespace perfnum {

namespace {

using bigmath::pow;
using bigmath::pow2;

ChainStatus status_of(bool holds) { return holds ? ChainStatus::holds : ChainStatus::fails; }

struct ChainInputs {
  unsigned long p;
  unsigned long m;
  unsigned long h;
  Natural rad;
  bool rad_is_bound;
  const Natural* x = nullptr;
  const Natural* a = nullptr;
  bool premises;
};

std::string fmt(const char* pattern, std::initializer_list<std::pair<const char*, std::string>> subs) {
  std::string out = pattern;
  for (const auto& [key, value] : subs) {
    for (std::size_t pos = out.find(key); pos != std::string::npos; pos = out.find(key, pos + value.size())) {
      out.replace(pos, std::string(key).size(), value);
    }
  }
  return out;
}

ChainReport evaluate_chain(const ChainInputs& in) {
  const unsigned long p = in.p, m = in.m, h = in.h;
  const long sp = static_cast<long>(p);
  const long sm = static_cast<long>(m);
  const long sh = static_cast<long>(h);
  const Natural mersenne = pow2(p) - 1;
  const Natural n = mersenne << (p - 1);
  const Natural& rad = in.rad;

  ChainReport report;
  report.p = p;
  report.m = m;
  report.h = h;
  report.premises_hold = in.premises;
  report.outside_proof_assumption = p <= 3;
  report.rad_ax = rad;
  report.rad_is_bound = in.rad_is_bound;
  report.h_lower = bigmath::ceil_div(Natural(2 * sp + 10), Natural(28));
  report.h_upper = bigmath::floor_div(Natural(2 * sp - 2), Natural(sm - 1));
  report.conclusion =
      report.h_lower > report.h_upper ? Conclusion::contradiction_found : Conclusion::consistent;
  report.bak7a_discrepancy = (sp - 11 < 14 * sh - 4) != (sp - 11 < 14 * sh - 14);
  report.bak8_parity_holds = (14 * sh - 14) % 2 == 0 && (sp - 11) % 2 == 0;

  const std::string ps = std::to_string(p), ms = std::to_string(m), hs = std::to_string(h);
  const std::string rs =
      in.rad_is_bound ? "(2^" + std::to_string(2 * h - 2) + ")" : bigmath::to_decimal(rad);
  auto text = [&](const char* pattern) {
    return fmt(pattern, {{"{p}", ps}, {"{m}", ms}, {"{h}", hs}, {"{R}", rs}});
  };
  auto add = [&](const char* id, const char* pattern, std::optional<bool> holds, std::string note = {}) {
    ChainStep step{id, text(pattern), ChainStatus::not_applicable, std::move(note)};
    if (in.premises && holds.has_value()) step.status = status_of(*holds);
    report.steps.push_back(std::move(step));
  };
  const bool have_xa = in.x != nullptr && in.a != nullptr;

  add("bak1", "(2^{p}-1) 2^({p}-1) < (2 {R} (2^{p}-1))^(7/4), as n^4 < (2 R (2^{p}-1))^7",
      pow(n, 4) < pow(2 * rad * mersenne, 7));
  add("bak2", "(2^{p}-1)^4 2^(4*{p}-4) < 2^7 {R}^7 (2^{p}-1)^7",
      pow(mersenne, 4) * pow2(4 * p - 4) < 128 * pow(rad, 7) * pow(mersenne, 7));
  add("bak3", "2^(4*{p}-11) < {R}^7 (2^{p}-1)^3, as 2^(4*{p}) < 2^11 R^7 (2^{p}-1)^3",
      pow2(4 * p) < 2048 * pow(rad, 7) * pow(mersenne, 3));
  if (have_xa) {
    const Natural& x = *in.x;
    const Natural& a = *in.a;
    add("bak4", "4ax <= (x+a)^2", 4 * a * x <= (x + a) * (x + a));
    add("bak5", "rad(ax) <= ax", rad <= a * x);
    add("bak6", "rad(ax) <= 2^(2*{h}-2)", rad <= pow2(2 * h - 2));
  } else {
    add("bak4", "4ax <= (x+a)^2", std::nullopt, "needs x and a");
    add("bak5", "rad(ax) <= ax", std::nullopt, "needs x and a");
    add("bak6", "rad(ax) <= 2^(2*{h}-2)", rad <= pow2(2 * h - 2), "rad(ax) taken at this bound");
  }
  add("bak7",
      "2^(4*{p}-11) < 2^(14*{h}-14) (2^{p}-1)^3 < 2^(14*{h}-14) 2^(3*{p}), as "
      "2^(4*{p}) < 2^(14*{h}-3) (2^{p}-1)^3",
      pow2(4 * p) < (pow(mersenne, 3) << (14 * h - 3)) && pow(mersenne, 3) < pow2(3 * p));
  add("bak7a", "2^({p}-11) < 2^(14*{h}-4)", sp - 11 < 14 * sh - 4,
      report.bak7a_discrepancy ? "bak7 gives p-11 < 14h-14, which disagrees here"
                               : "bak7 gives p-11 < 14h-14");
  add("bak8", "14*{h}-14 >= {p}-9", 14 * sh - 14 >= sp - 9,
      report.bak8_parity_holds ? "14h-14 and p-11 both even" : "parity premise fails");
  add("bak9", "28*{h} >= 2*{p}+10", 28 * sh >= 2 * sp + 10);
  add("bak10",
      "2^({h}*({m}-2)) < 2^({p}-1-{h}) (2^{p}-1) < 2^({p}-1-{h}) 2^{p}, as "
      "2^({h}*({m}-1)) < 2^({p}-1) (2^{p}-1) < 2^(2*{p}-1)",
      pow2(h * (m - 1)) < n && n < pow2(2 * p - 1));
  add("bak11", "2*{p}-1-{h} >= {h}*({m}-2)+1", 2 * sp - 1 - sh >= sh * (sm - 2) + 1);
  add("bak12", "2*{p}-2 >= {h}*({m}-1)", 2 * sp - 2 >= sh * (sm - 1));
  add("bak13", "{h}*({m}-1) <= 2*{p}-2 <= 2*{p}+10", sh * (sm - 1) <= 2 * sp - 2);
  add("bak14", "(2*{p}+10)*({m}-1) <= 28*(2*{p}+10)", (2 * sp + 10) * (sm - 1) <= 28 * (2 * sp + 10));
  add("bak15", "{m} <= 29", m <= 29);
  return report;
}

void require_certified(unsigned long p) {
  if (!mersenne::lucas_lehmer(p)) {
    throw NotMersennePrime("2^" + std::to_string(p) + " - 1 is composite");
  }
}

}  // namespace

std::string to_string(ChainStatus status) {
  switch (status) {
    case ChainStatus::holds:
      return "holds";
    case ChainStatus::fails:
      return "fails";
    case ChainStatus::not_applicable:
      return "not_applicable";
  }
  return "not_applicable";
}

std::string to_string(Conclusion conclusion) {
  return conclusion == Conclusion::contradiction_found ? "contradiction_found" : "consistent";
}

namespace abc {

AbcTriple triple(const Natural& a, const Natural& b, const bigmath::FactorBudget& budget) {
  if (a < 1 || b < 1) throw PreconditionError("triple: A and B must be positive");
  AbcTriple t;
  t.a = a;
  t.b = b;
  t.c = a + b;
  mpz_gcd(t.gcd.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  t.coprime = (t.gcd == 1);
  if (!t.coprime) return t;
  // A, B, C are pairwise coprime, so the radical multiplies.
  Natural rad = bigmath::radical(a, budget) * bigmath::radical(b, budget) * bigmath::radical(t.c, budget);
  t.baker_holds = pow(t.c, 4) < pow(rad, 7);
  t.rad_abc = std::move(rad);
  return t;
}

ChainReport verify_chain(unsigned long p, unsigned long m, unsigned long h) {
  require_certified(p);
  if (m < 2) throw PreconditionError("chain: m must be at least 2");
  if (h < 1) throw PreconditionError("chain: h must be at least 1");
  return evaluate_chain({p, m, h, pow2(2 * h - 2), true, nullptr, nullptr, m > 29});
}

unsigned long default_chain_h(unsigned long p) { return (2 * p + 10 + 27) / 28; }

TheoremReport theorem_conditions(unsigned long p, unsigned long m, const Natural& x,
                                 const Natural& a, const bigmath::FactorBudget& budget) {
  require_certified(p);
  if (x < 1 || a < 1) throw PreconditionError("theorem: x and a must be positive");
  if (m < 2) throw PreconditionError("theorem: m must be at least 2");
  const Natural mersenne = pow2(p) - 1;
  const Natural n = mersenne << (p - 1);
  const Natural sum = x + a;
  const Natural power_sum = pow(x, m) + pow(a, m);

  TheoremReport r;
  r.p = p;
  r.m = m;
  r.x = x;
  r.a = a;
  r.cond_zero = power_sum == n;
  r.cond_a = m > 29;
  r.cond_b = pow(sum, m - 2) <= power_sum;
  r.cond_c = mpz_odd_p(x.get_mpz_t()) && mpz_odd_p(a.get_mpz_t());
  r.cond_d = bigmath::is_power_of_two(sum);
  if (r.cond_d) r.h = bigmath::v2(sum);
  if (r.h && *r.h <= p - 1 && power_sum % sum == 0) {
    r.cond_e = power_sum / sum == (mersenne << (p - 1 - *r.h));
  }
  const Natural xm = pow(x, m), am = pow(a, m);
  mpz_gcd(r.gcd_xm_am.get_mpz_t(), xm.get_mpz_t(), am.get_mpz_t());
  if (r.cond_zero) r.triple = triple(xm, am, budget);

  const unsigned long h = r.h.value_or(0);
  const bool premises = r.cond_a && r.cond_d && h >= 1;
  if (premises) {
    r.chain = evaluate_chain({p, m, h, bigmath::radical(a * x, budget), false, &x, &a, true});
  } else {
    r.chain = evaluate_chain({p, m, std::max(h, 1ul), pow2(2 * std::max(h, 1ul) - 2), true, &x, &a, false});
  }
  r.conclusion = r.chain.conclusion;
  return r;
}

SearchReport search_conditional_counterexample(const std::vector<unsigned long>& p_list,
                                               unsigned long m_min, const SearchBudget& budget,
                                               unsigned workers) {
  if (m_min <= 29) throw PreconditionError("search: m_min must exceed 29");
  struct Cell {
    const PerfectNumber* pn;
    unsigned long m;
  };
  std::vector<PerfectNumber> numbers;
  numbers.reserve(p_list.size());
  for (unsigned long p : p_list) numbers.push_back(mersenne::even_perfect(p));

  std::vector<Cell> cells;
  std::size_t candidates = 0;
  for (const auto& pn : numbers) {
    // x >= 2 forces 2^m <= n; x = a = 1 gives 2, never perfect.
    const unsigned long m_end = bigmath::bit_length(pn.n);
    for (unsigned long m = m_min; m < m_end; ++m) {
      cells.push_back({&pn, m});
      candidates += pn.p - 1;
    }
  }
  if (candidates > budget.max_cells) {
    throw BudgetExceeded("search: " + std::to_string(candidates) + " candidates exceed budget of " +
                         std::to_string(budget.max_cells));
  }

  auto per_cell = parallel_map(cells.size(), workers, [&](std::size_t i) {
    const auto& [pn, m] = cells[i];
    std::vector<SearchHit> hits;
    for (unsigned long h = 1; h + 1 <= pn->p; ++h) {
      const Natural s = pow2(h);
      auto x = powersum::solve_on_divisor(pn->n, m, s);
      if (!x) continue;
      const Natural a = s - *x;
      const TheoremReport t = theorem_conditions(pn->p, m, *x, a);
      if (t.cond_zero && t.cond_b && t.cond_c && t.cond_d && t.cond_e) {
        hits.push_back({pn->p, m, h, *x, a});
      }
    }
    return hits;
  });

  SearchReport report;
  report.p_list = p_list;
  report.m_min = m_min;
  report.cells_examined = candidates;
  for (auto& hits : per_cell) {
    for (auto& hit : hits) report.hits.push_back(std::move(hit));
  }
  return report;
}

}  // namespace abc
}  // namespace perfnum
