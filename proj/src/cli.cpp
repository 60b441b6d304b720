#include "perfnum/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "perfnum/abc.hpp"
#include "perfnum/errors.hpp"
#include "perfnum/mersenne.hpp"
#include "perfnum/powersum.hpp"
#include "perfnum/proofcheck.hpp"
#include "perfnum/report.hpp"
#include "perfnum/verify_all.hpp"

namespace perfnum::cli {

namespace {

using nlohmann::json;

struct Outcome {
  Outcome() = default;
  Outcome(std::string cmd, json res, bool ok = true)
      : command(std::move(cmd)), result(std::move(res)), passed(ok) {}

  std::string command;
  json result;
  bool passed = true;
  // Overrides the pass/fail mapping (used for precondition diagnostics).
  int exit_code = -1;
  std::string diagnostic;
};

struct Globals {
  std::string format = "text";
  unsigned threads = 1;
  std::uint64_t seed = bigmath::FactorBudget{}.seed;
  std::string manifest;
  bool timings = false;
};

std::vector<unsigned long> parse_csv(const std::string& csv) {
  std::vector<unsigned long> out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(bigmath::from_decimal(item).get_ui());
    if (bigmath::from_decimal(item) != out.back()) throw std::invalid_argument("value too large: " + item);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

unsigned default_threads() {
  if (const char* env = std::getenv("PERFNUM_THREADS")) {
    try {
      const Natural v = bigmath::from_decimal(env);
      if (v >= 1 && v <= 1024) return static_cast<unsigned>(v.get_ui());
    } catch (const std::invalid_argument&) {
    }
  }
  return 1;
}

void write_enum_record(std::ostream& out, const Representation& rep, bool as_json) {
  if (as_json) {
    out << report::json_line(rep) << "\n";
  } else {
    out << rep.n << " = " << rep.x << "^" << rep.m << " + " << rep.y << "^" << rep.m << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  Globals g;
  g.threads = default_threads();

  CLI::App app{"Exact checks on even perfect numbers as sums of two like powers", "perfnum"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--threads", g.threads, "Worker threads (default: PERFNUM_THREADS or 1)")
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--seed", g.seed, "Seed for the rho factoring stage");
  app.add_option("--manifest", g.manifest, "Write a run manifest (JSON) to this path");
  app.add_flag("--timings", g.timings, "Include per-cell timings in scan reports");

  std::function<Outcome()> action;
  json params = json::object();

  // mersenne list
  auto* mersenne_cmd = app.add_subcommand("mersenne", "Mersenne exponents")->require_subcommand(1);
  unsigned long max_p = 31;
  auto* mersenne_list = mersenne_cmd->add_subcommand("list", "Exponents p <= P with 2^p-1 prime");
  mersenne_list->add_option("--max-p", max_p)->required()->check(CLI::Range(2ul, 100000ul));
  mersenne_list->callback([&] {
    action = [&] {
      const auto exps = mersenne::list_exponents(max_p, g.threads);
      json numbers = json::array();
      for (unsigned long p : exps) numbers.push_back(report::to_json(mersenne::even_perfect(p)));
      return Outcome{"mersenne list", {{"max_p", max_p}, {"exponents", exps}, {"perfect_numbers", numbers}}};
    };
    params = {{"max_p", max_p}};
  });

  // perfect gen / recognize
  auto* perfect_cmd = app.add_subcommand("perfect", "Even perfect numbers")->require_subcommand(1);
  unsigned long gen_p = 0;
  auto* perfect_gen = perfect_cmd->add_subcommand("gen", "The even perfect number for exponent p");
  perfect_gen->add_option("--p", gen_p)->required();
  perfect_gen->callback([&] {
    action = [&] {
      const PerfectNumber pn = mersenne::even_perfect(gen_p);
      json result = report::to_json(pn);
      bool ok = pn.mersenne % 4 == 3;
      if (pn.p <= 13) {
        const bool sigma_ok = mersenne::divisor_sum(pn.n) == 2 * pn.n;
        result["divisor_sum_is_2n"] = sigma_ok;
        ok = ok && sigma_ok;
      }
      return Outcome{"perfect gen", result, ok};
    };
    params = {{"p", gen_p}};
  });
  std::string recognize_n;
  auto* perfect_rec = perfect_cmd->add_subcommand("recognize", "Is n an even perfect number?");
  perfect_rec->add_option("--n", recognize_n)->required();
  perfect_rec->callback([&] {
    action = [&] {
      const auto pn = mersenne::recognize_even_perfect(bigmath::from_decimal(recognize_n));
      return Outcome{"perfect recognize",
                     {{"n", recognize_n}, {"perfect", pn ? report::to_json(*pn) : json(nullptr)}}};
    };
    params = {{"n", recognize_n}};
  });

  // powersum decide / scan / enum
  auto* powersum_cmd = app.add_subcommand("powersum", "Sums of two m-th powers")->require_subcommand(1);
  std::string decide_n;
  unsigned long decide_perfect = 0;
  unsigned long decide_m = 0;
  std::string decide_method = "both";
  auto* decide = powersum_cmd->add_subcommand("decide", "All n = x^m + y^m with x >= y >= 1");
  auto* opt_n = decide->add_option("--n", decide_n, "Decimal integer");
  auto* opt_perfect = decide->add_option("--perfect", decide_perfect, "Mersenne exponent p");
  opt_n->excludes(opt_perfect);
  decide->add_option("--m", decide_m)->required()->check(CLI::Range(2ul, 100000ul));
  decide->add_option("--method", decide_method)->check(CLI::IsMember({"naive", "structured", "both"}));
  decide->callback([&] {
    if (decide_n.empty() && decide_perfect == 0) throw CLI::ValidationError("one of --n or --perfect is required");
    action = [&] {
      std::optional<PerfectNumber> pn;
      Natural n;
      if (decide_perfect != 0) {
        pn = mersenne::even_perfect(decide_perfect);
        n = pn->n;
      } else {
        n = bigmath::from_decimal(decide_n);
        pn = mersenne::recognize_even_perfect(n);
      }
      auto structured = [&] {
        const bigmath::FactorBudget budget{.seed = g.seed};
        return pn ? powersum::decide_structured(*pn, decide_m)
                  : powersum::decide_divisors(n, decide_m, budget);
      };
      auto list = [](const std::vector<Representation>& reps) {
        json out = json::array();
        for (const auto& r : reps) out.push_back(report::to_json(r));
        return out;
      };
      json result = {{"n", report::to_json(n)}, {"m", decide_m}, {"method", decide_method}};
      bool ok = true;
      if (decide_method == "naive") {
        result["representations"] = list(powersum::decide_naive(n, decide_m));
      } else if (decide_method == "structured") {
        result["representations"] = list(structured());
      } else {
        const auto naive = powersum::decide_naive(n, decide_m);
        const auto fast = structured();
        ok = naive == fast;
        result["representations"] = list(fast);
        result["naive_agrees"] = ok;
      }
      return Outcome{"powersum decide", result, ok};
    };
    params = {{"n", decide_n}, {"perfect", decide_perfect}, {"m", decide_m}, {"method", decide_method}};
  });

  std::string scan_p_list = "2,3,5,7,13,17,19,31";
  unsigned long scan_m_max = 9;
  unsigned long scan_even_max_p = powersum::ScanOptions{}.even_m_max_p;
  bool scan_cross = false;
  auto* scan = powersum_cmd->add_subcommand("scan", "Search every (p, m) cell for representations");
  scan->add_option("--p-list", scan_p_list, "Comma-separated Mersenne exponents");
  scan->add_option("--m-max", scan_m_max)->check(CLI::Range(2ul, 100000ul));
  scan->add_option("--even-max-p", scan_even_max_p, "Largest p searched naively for even m");
  scan->add_flag("--cross-check", scan_cross, "Also run the naive oracle on odd-m cells");
  scan->callback([&] {
    action = [&] {
      powersum::ScanOptions options;
      options.workers = g.threads;
      options.even_m_max_p = scan_even_max_p;
      options.cross_check = scan_cross;
      const auto report = powersum::scan_conjecture(parse_csv(scan_p_list), scan_m_max, options);
      return Outcome{"powersum scan", report::to_json(report, g.timings), report.matches_conjecture()};
    };
    params = {{"p_list", scan_p_list}, {"m_max", scan_m_max}, {"even_max_p", scan_even_max_p},
              {"cross_check", scan_cross}};
  });

  unsigned long enum_m = 3;
  std::string enum_limit;
  auto* enumerate = powersum_cmd->add_subcommand("enum", "Stream x^m + y^m <= limit in order (JSON lines)");
  enumerate->add_option("--m", enum_m)->required()->check(CLI::Range(2ul, 100000ul));
  enumerate->add_option("--limit", enum_limit)->required();
  bool streamed = false;
  enumerate->callback([&] {
    action = [&] {
      powersum::Enumerator stream(enum_m, bigmath::from_decimal(enum_limit));
      std::size_t count = 0;
      while (auto rep = stream.next()) {
        write_enum_record(out, *rep, g.format == "json");
        ++count;
      }
      streamed = true;
      return Outcome{"powersum enum", {{"m", enum_m}, {"limit", enum_limit}, {"count", count}}};
    };
    params = {{"m", enum_m}, {"limit", enum_limit}};
  });

  // proof verify
  auto* proof_cmd = app.add_subcommand("proof", "Arithmetic content of the proof steps")->require_subcommand(1);
  std::string step_name = "all";
  std::string proof_bound;
  unsigned long q_max = 60;
  unsigned long proof_p = 0;
  std::string proof_p_list;
  unsigned long naive_max_p = 13;
  auto* verify_cmd = proof_cmd->add_subcommand("verify", "Verify one step (or all)");
  verify_cmd->add_option("--step", step_name)
      ->check(CLI::IsMember({"all", "case1-ellipse", "case2-contradiction", "h-window", "final-eq",
                             "squares-mod4", "m5-bounds"}));
  verify_cmd->add_option("--bound", proof_bound, "s_max for case2, xy_max for m5-bounds");
  verify_cmd->add_option("--q-max", q_max)->check(CLI::Range(1ul, 100000ul));
  verify_cmd->add_option("--p", proof_p, "Exponent for h-window and m5-bounds");
  verify_cmd->add_option("--p-list", proof_p_list, "Exponents for h-window and squares-mod4");
  verify_cmd->add_option("--naive-max-p", naive_max_p, "Largest p for the two-squares search");
  verify_cmd->callback([&] {
    action = [&] {
      auto exponents = [&] {
        if (!proof_p_list.empty()) return parse_csv(proof_p_list);
        if (proof_p != 0) return std::vector<unsigned long>{proof_p};
        return mersenne::list_exponents(127, g.threads);
      };
      auto run_step = [&](StepId id) -> ProofStepReport {
        switch (id) {
          case StepId::case1_ellipse:
            return proofcheck::check_case1_ellipse();
          case StepId::case2_contradiction:
            return proofcheck::check_case2_contradiction(
                proof_bound.empty() ? Natural(10000) : bigmath::from_decimal(proof_bound));
          case StepId::h_window:
            return proofcheck::check_h_window(exponents());
          case StepId::final_equation:
            return proofcheck::check_final_equation(q_max);
          case StepId::squares_mod4:
            return proofcheck::check_squares_mod4(exponents(), naive_max_p);
          case StepId::m5_bounds:
            return proofcheck::check_m5_bounds(
                proof_bound.empty() ? Natural(100) : bigmath::from_decimal(proof_bound),
                proof_p == 0 ? 31 : proof_p);
        }
        throw PreconditionError("unknown step");
      };
      std::vector<StepId> ids;
      if (step_name == "all") {
        ids = {StepId::case1_ellipse, StepId::case2_contradiction, StepId::h_window,
               StepId::final_equation, StepId::squares_mod4, StepId::m5_bounds};
      } else {
        ids = {step_from_string(step_name)};
      }
      json steps = json::array();
      bool ok = true;
      for (StepId id : ids) {
        const auto step = run_step(id);
        const bool reverified = proofcheck::reverify_exceptions(step);
        ok = ok && step.verdict != Verdict::fail && reverified;
        json entry = report::to_json(step);
        entry["exceptions_reverified"] = reverified;
        steps.push_back(std::move(entry));
      }
      return Outcome{"proof verify", {{"steps", steps}}, ok};
    };
    params = {{"step", step_name}, {"bound", proof_bound}, {"q_max", q_max}, {"p", proof_p},
              {"p_list", proof_p_list}, {"naive_max_p", naive_max_p}};
  });

  // abc quality / theorem / chain / search
  auto* abc_cmd = app.add_subcommand("abc", "Explicit ABC bound and the conditional theorem")->require_subcommand(1);
  std::string quality_a, quality_b;
  auto* quality = abc_cmd->add_subcommand("quality", "rad(ABC) and max^4 < rad^7 for A + B = C");
  quality->add_option("--a", quality_a)->required();
  quality->add_option("--b", quality_b)->required();
  quality->callback([&] {
    action = [&] {
      const bigmath::FactorBudget budget{.seed = g.seed};
      const auto t = abc::triple(bigmath::from_decimal(quality_a), bigmath::from_decimal(quality_b), budget);
      Outcome o{"abc quality", report::to_json(t), t.baker_holds.value_or(false)};
      if (!t.coprime) {
        o.exit_code = kUsage;
        o.diagnostic = "gcd(A, B) = " + bigmath::to_decimal(t.gcd) + ", not coprime; no bound verdict";
      }
      return o;
    };
    params = {{"a", quality_a}, {"b", quality_b}};
  });

  unsigned long thm_p = 0, thm_m = 0;
  std::string thm_x, thm_a;
  auto* theorem = abc_cmd->add_subcommand("theorem", "Conditions (a)-(e) and the bak chain");
  theorem->add_option("--p", thm_p)->required();
  theorem->add_option("--m", thm_m)->required()->check(CLI::Range(2ul, 100000ul));
  auto* opt_x = theorem->add_option("--x", thm_x);
  auto* opt_a = theorem->add_option("--a", thm_a);
  opt_x->needs(opt_a);
  opt_a->needs(opt_x);
  theorem->callback([&] {
    action = [&] {
      const bigmath::FactorBudget budget{.seed = g.seed};
      if (!thm_x.empty()) {
        const auto t = abc::theorem_conditions(thm_p, thm_m, bigmath::from_decimal(thm_x),
                                               bigmath::from_decimal(thm_a), budget);
        return Outcome{"abc theorem", report::to_json(t), !t.all_conditions_hold()};
      }
      // No (x, a): try x + a = 2^h for every h.
      const PerfectNumber pn = mersenne::even_perfect(thm_p);
      json candidates = json::array();
      bool counterexample = false;
      for (unsigned long h = 1; h + 1 <= thm_p; ++h) {
        const Natural s = bigmath::pow2(h);
        if (auto x = powersum::solve_on_divisor(pn.n, thm_m, s)) {
          const auto t = abc::theorem_conditions(thm_p, thm_m, *x, s - *x, budget);
          counterexample = counterexample || t.all_conditions_hold();
          candidates.push_back(report::to_json(t));
        }
      }
      const auto chain = abc::verify_chain(thm_p, thm_m, abc::default_chain_h(thm_p));
      return Outcome{"abc theorem",
                     {{"p", thm_p}, {"m", thm_m}, {"candidates", candidates}, {"chain", report::to_json(chain)}},
                     !counterexample};
    };
    params = {{"p", thm_p}, {"m", thm_m}, {"x", thm_x}, {"a", thm_a}};
  });

  unsigned long chain_p = 0, chain_m = 0, chain_h = 0;
  auto* chain = abc_cmd->add_subcommand("chain", "Evaluate bak1-bak15 for (p, m, h)");
  chain->add_option("--p", chain_p)->required();
  chain->add_option("--m", chain_m)->required()->check(CLI::Range(2ul, 100000ul));
  chain->add_option("--h", chain_h, "Default: smallest h allowed by bak9");
  chain->callback([&] {
    action = [&] {
      const unsigned long h = chain_h == 0 ? abc::default_chain_h(chain_p) : chain_h;
      const auto c = abc::verify_chain(chain_p, chain_m, h);
      // Past m = 29 the chain must close.
      const bool ok = chain_m <= 29 || c.conclusion == Conclusion::contradiction_found;
      return Outcome{"abc chain", report::to_json(c), ok};
    };
    params = {{"p", chain_p}, {"m", chain_m}, {"h", chain_h}};
  });

  std::string search_p_list = "31";
  unsigned long search_m_min = 31;
  std::size_t max_cells = SearchBudget{}.max_cells;
  auto* search = abc_cmd->add_subcommand("search", "Look for (x, a) meeting (b)-(e) with m > 29");
  search->add_option("--p-list", search_p_list);
  search->add_option("--m-min", search_m_min)->check(CLI::Range(30ul, 100000ul));
  search->add_option("--max-cells", max_cells);
  search->callback([&] {
    action = [&] {
      const auto s = abc::search_conditional_counterexample(parse_csv(search_p_list), search_m_min,
                                                            {max_cells}, g.threads);
      return Outcome{"abc search", report::to_json(s), s.hits.empty()};
    };
    params = {{"p_list", search_p_list}, {"m_min", search_m_min}, {"max_cells", max_cells}};
  });

  bool desk_scale = false;
  auto* verify_all = app.add_subcommand("verify-all", "Run the complete desk-scale verification");
  verify_all->add_flag("--desk-scale", desk_scale, "Desk-scale parameters")->required();
  verify_all->callback([&] {
    action = [&] {
      const auto checks = verify::run_all(verify::DeskScale{}, g.threads);
      json list = json::array();
      bool ok = true;
      for (const auto& c : checks) {
        ok = ok && c.passed;
        list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      }
      return Outcome{"verify-all", {{"checks", list}}, ok};
    };
    params = {{"desk_scale", desk_scale}};
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (!action) {
    err << "error: no command given\n";
    return kUsage;
  }

  Outcome outcome;
  int code = kOk;
  try {
    outcome = action();
    code = outcome.exit_code >= 0 ? outcome.exit_code : (outcome.passed ? kOk : kUnexpected);
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    code = kResource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    code = kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    code = kUsage;
  }
  if (!outcome.diagnostic.empty()) err << "diagnostic: " << outcome.diagnostic << "\n";

  const bool produced = !outcome.command.empty();
  if (produced && !streamed) {
    const json doc = report::envelope(outcome.command, outcome.passed, outcome.result);
    out << (g.format == "json" ? report::dump(doc) : report::render_text(doc));
  }

  if (!g.manifest.empty()) {
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    json globals = {{"format", g.format}, {"threads", g.threads}, {"seed", g.seed}, {"timings", g.timings}};
    json manifest = {{"schema", report::kSchema},
                     {"command_line", args},
                     {"command", outcome.command},
                     {"parameters", {{"global", globals}, {"command", params}}},
                     {"tool_version", kToolVersion},
                     {"elapsed_ms", elapsed},
                     {"verdict", produced ? (outcome.passed ? "pass" : "fail") : "error"},
                     {"exit_code", code}};
    std::ofstream file(g.manifest);
    if (!file) {
      err << "error: cannot write manifest to " << g.manifest << "\n";
      return code == kOk ? kResource : code;
    }
    file << report::dump(manifest);
  }
  return code;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace perfnum::cli
