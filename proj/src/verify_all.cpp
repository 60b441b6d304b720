#include "perfnum/verify_all.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "perfnum/abc.hpp"
#include "perfnum/mersenne.hpp"
#include "perfnum/parallel.hpp"
#include "perfnum/powersum.hpp"
#include "perfnum/proofcheck.hpp"
#include "perfnum/report.hpp"

namespace perfnum::verify {

using nlohmann::json;

namespace {

std::uint64_t checked_pow(std::uint64_t base, unsigned long m, std::uint64_t limit) {
  unsigned __int128 acc = 1;
  for (unsigned long i = 0; i < m; ++i) {
    acc *= base;
    if (acc > limit) return limit + 1;
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

std::vector<PowerSumTuple> nested_loop_sums(unsigned long m, std::uint64_t limit) {
  std::vector<PowerSumTuple> out;
  for (std::uint64_t y = 1; checked_pow(y, m, limit) <= limit; ++y) {
    const std::uint64_t ym = checked_pow(y, m, limit);
    for (std::uint64_t x = y;; ++x) {
      const std::uint64_t xm = checked_pow(x, m, limit);
      if (xm > limit || xm + ym > limit) break;
      out.push_back({xm + ym, x, y});
    }
  }
  std::sort(out.begin(), out.end(), [](const PowerSumTuple& a, const PowerSumTuple& b) {
    return a.n != b.n ? a.n < b.n : a.x > b.x;
  });
  return out;
}

CheckResult cube_uniqueness(const DeskScale& desk, unsigned workers) {
  const auto exponents = mersenne::list_exponents(desk.max_p, workers);
  auto per_p = parallel_map(exponents.size(), workers, [&](std::size_t i) {
    const PerfectNumber pn = mersenne::even_perfect(exponents[i]);
    auto structured = powersum::decide_structured(pn, 3);
    const bool agrees = structured == powersum::decide_naive(pn.n, 3);
    return std::make_pair(std::move(structured), agrees);
  });
  json found = json::array();
  bool agree_all = true;
  std::vector<Representation> all;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    agree_all = agree_all && per_p[i].second;
    for (const auto& rep : per_p[i].first) {
      all.push_back(rep);
      found.push_back({{"p", exponents[i]}, {"representation", report::to_json(rep)}});
    }
  }
  const bool only_28 = all.size() == 1 && all[0] == Representation{3, 3, 1, 28};
  return {"cube_uniqueness",
          only_28 && agree_all,
          {{"p_list", exponents}, {"found", found}, {"naive_agrees", agree_all}}};
}

CheckResult two_squares(const DeskScale& desk, unsigned workers) {
  const auto small = mersenne::list_exponents(desk.max_p, workers);
  const auto large = mersenne::list_exponents(desk.max_p_large, workers);
  const auto squares = proofcheck::check_squares_mod4(large, desk.max_p);
  return {"two_squares_emptiness", squares.verdict == Verdict::pass && small.size() == 8,
          report::to_json(squares)};
}

CheckResult conjecture_scan(const DeskScale& desk, unsigned workers) {
  powersum::ScanOptions options;
  options.workers = workers;
  options.even_m_max_p = desk.max_p;
  const auto scan =
      powersum::scan_conjecture(mersenne::list_exponents(desk.max_p, workers), desk.scan_m_max, options);
  json findings = json::array();
  for (const auto& f : scan.findings) {
    findings.push_back({{"p", f.p}, {"representation", report::to_json(f.rep)}});
  }
  bool none_skipped = true;
  for (const auto& cell : scan.cells) {
    none_skipped = none_skipped && cell.method != powersum::ScanCell::Method::skipped;
  }
  return {"conjecture_scan", scan.matches_conjecture() && none_skipped && !scan.findings.empty(),
          {{"findings", findings}, {"cells", scan.cells.size()}, {"none_skipped", none_skipped}}};
}

CheckResult proof_steps(const DeskScale& desk, unsigned workers) {
  const auto large = mersenne::list_exponents(desk.max_p_large, workers);
  std::vector<ProofStepReport> steps = {
      proofcheck::check_case1_ellipse(),
      proofcheck::check_case2_contradiction(bigmath::from_u64(desk.case2_s_max)),
      proofcheck::check_h_window(large),
      proofcheck::check_final_equation(desk.final_q_max),
  };
  bool ok = true;
  json detail = json::array();
  for (const auto& step : steps) {
    ok = ok && step.verdict == Verdict::pass && proofcheck::reverify_exceptions(step);
    detail.push_back({{"step_id", to_string(step.step)},
                      {"verdict", to_string(step.verdict)},
                      {"exceptions", report::to_json(step)["exceptions"]}});
  }
  return {"proof_steps", ok, detail};
}

CheckResult m5_exceptions(const DeskScale& desk, unsigned) {
  const auto step = proofcheck::check_m5_bounds(bigmath::from_u64(desk.m5_xy_max), desk.m5_p);
  std::set<std::pair<Natural, Natural>> got;
  for (const auto& w : step.exceptions) got.emplace(w.at("x"), w.at("y"));
  const std::set<std::pair<Natural, Natural>> expected = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  const auto& stated = step.details["stated_h_interval"];
  bool interval_ok = true;
  if (desk.m5_p == 31) {
    interval_ok = stated["lo"] == 10 && stated["hi"] == 20;
  }
  return {"m5_exceptions",
          got == expected && interval_ok && proofcheck::reverify_exceptions(step),
          report::to_json(step)};
}

CheckResult abc_chain(const DeskScale& desk, unsigned workers) {
  const auto exponents = mersenne::list_exponents(desk.max_p_large, workers);
  auto per_p = parallel_map(exponents.size(), workers, [&](std::size_t i) {
    const unsigned long p = exponents[i];
    const unsigned long h = abc::default_chain_h(p);
    json failures = json::array();
    for (unsigned long m = 30; m <= desk.chain_m_max; ++m) {
      const auto chain = abc::verify_chain(p, m, h);
      if (chain.conclusion != Conclusion::contradiction_found) failures.push_back(m);
    }
    const auto at_29 = abc::verify_chain(p, 29, h);
    const bool interval_empty = at_29.h_lower > at_29.h_upper;
    const bool boundary_ok =
        (at_29.conclusion == Conclusion::contradiction_found) == interval_empty;
    return json{{"p", p},
                {"unexpected_consistent_m", failures},
                {"m29_interval", {bigmath::to_decimal(at_29.h_lower), bigmath::to_decimal(at_29.h_upper)}},
                {"m29_conclusion", to_string(at_29.conclusion)},
                {"m29_boundary_ok", boundary_ok}};
  });
  bool ok = true;
  for (const auto& entry : per_p) {
    ok = ok && entry["unexpected_consistent_m"].empty() && entry["m29_boundary_ok"].get<bool>();
  }
  return {"abc_chain", ok, per_p};
}

CheckResult oracle_equivalence(const DeskScale& desk, unsigned workers) {
  std::mt19937_64 rng(desk.seed);
  struct Instance {
    std::uint64_t n;
    unsigned long m;
  };
  const unsigned long exponents[] = {3, 5, 7};
  std::vector<Instance> instances;
  for (std::size_t i = 0; i < desk.random_instances; ++i) {
    const unsigned long m = exponents[rng() % 3];
    std::uint64_t n = 0;
    if (i % 2 == 0) {
      n = 2 + rng() % (desk.random_n_max - 1);
    } else {
      // Planted sums, so the equivalence covers non-empty answers too.
      const std::uint64_t top = bigmath::iroot_u64(desk.random_n_max - 1, m);
      const std::uint64_t x = 1 + rng() % top;
      const std::uint64_t room = desk.random_n_max - checked_pow(x, m, desk.random_n_max);
      const std::uint64_t y = 1 + rng() % std::max<std::uint64_t>(1, bigmath::iroot_u64(room, m));
      n = checked_pow(x, m, desk.random_n_max) + checked_pow(y, m, desk.random_n_max);
      if (n > desk.random_n_max) n = 2 + rng() % (desk.random_n_max - 1);
    }
    instances.push_back({n, m});
  }
  auto agree = parallel_map(instances.size(), workers, [&](std::size_t i) {
    const Natural n = bigmath::from_u64(instances[i].n);
    const auto by_divisors = powersum::decide_divisors(n, instances[i].m);
    const auto naive = powersum::decide_naive(n, instances[i].m);
    return std::make_pair(by_divisors == naive ? 1 : 0, naive.empty() ? 0 : 1);
  });
  std::size_t agreements = 0, nonempty = 0;
  for (const auto& [same, hit] : agree) {
    agreements += same;
    nonempty += hit;
  }

  json enum_detail = json::object();
  bool enum_ok = true;
  for (unsigned long m : {2ul, 3ul, 5ul}) {
    const auto oracle = nested_loop_sums(m, desk.enum_limit);
    powersum::Enumerator stream(m, bigmath::from_u64(desk.enum_limit));
    std::size_t index = 0;
    bool same = true;
    while (auto rep = stream.next()) {
      if (index >= oracle.size()) {
        same = false;
        break;
      }
      const auto& o = oracle[index++];
      same = same && rep->n == bigmath::from_u64(o.n) && rep->x == bigmath::from_u64(o.x) &&
             rep->y == bigmath::from_u64(o.y);
    }
    same = same && index == oracle.size();
    enum_ok = enum_ok && same;
    enum_detail[std::to_string(m)] = {{"count", oracle.size()}, {"matches", same}};
  }
  return {"oracle_equivalence",
          agreements == instances.size() && enum_ok,
          {{"instances", instances.size()},
           {"agreements", agreements},
           {"nonempty_instances", nonempty},
           {"enumerate", enum_detail}}};
}

CheckResult theorem_survivor(const DeskScale& desk, unsigned workers) {
  const auto t = abc::theorem_conditions(3, 3, 3, 1);
  const bool pattern = t.cond_zero && !t.cond_a && t.cond_b && t.cond_c && t.cond_d && t.cond_e &&
                       t.conclusion == Conclusion::consistent;
  const auto search = abc::search_conditional_counterexample(
      mersenne::list_exponents(std::min(desk.max_p, 61ul), workers), 31, {}, workers);
  return {"theorem_survivor", pattern && search.hits.empty(),
          {{"theorem", report::to_json(t)}, {"search", report::to_json(search)}}};
}

std::vector<CheckResult> run_all(const DeskScale& desk, unsigned workers) {
  return {cube_uniqueness(desk, workers), two_squares(desk, workers),
          conjecture_scan(desk, workers), proof_steps(desk, workers),
          m5_exceptions(desk, workers),   abc_chain(desk, workers),
          oracle_equivalence(desk, workers), theorem_survivor(desk, workers)};
}

}  // namespace perfnum::verify
