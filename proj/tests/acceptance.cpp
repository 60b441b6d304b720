// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails or exceeds its time limit.
#include <algorithm>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "perfnum/abc.hpp"
#include "perfnum/cli.hpp"
#include "perfnum/mersenne.hpp"
#include "perfnum/powersum.hpp"
#include "perfnum/proofcheck.hpp"

namespace {

using namespace perfnum;

struct Outcome {
  bool passed = true;
  std::string note;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      passed = false;
      if (!note.empty()) note += "; ";
      note += what;
    }
  }
};

const std::vector<unsigned long> kSmallP{2, 3, 5, 7, 13, 17, 19, 31};

Outcome cube_uniqueness() {
  Outcome o;
  std::vector<std::pair<unsigned long, Representation>> found;
  for (unsigned long p : kSmallP) {
    const PerfectNumber pn = mersenne::even_perfect(p);
    const auto structured = powersum::decide_structured(pn, 3);
    for (const auto& r : structured) found.emplace_back(p, r);
    o.require(structured == powersum::decide_naive(pn.n, 3), "naive disagrees at p=" + std::to_string(p));
  }
  o.require(found.size() == 1 && found[0].first == 3 && found[0].second == Representation{3, 3, 1, 28},
            "representation set is not {28 = 3^3 + 1^3}");
  return o;
}

Outcome two_squares() {
  Outcome o;
  for (unsigned long p : kSmallP) {
    o.require(powersum::decide_naive(mersenne::even_perfect(p).n, 2).empty(),
              "two squares found at p=" + std::to_string(p));
  }
  const auto exponents = mersenne::list_exponents(127);
  o.require(exponents == std::vector<unsigned long>{2, 3, 5, 7, 13, 17, 19, 31, 61, 89, 107, 127},
            "wrong exponent list up to 127");
  for (unsigned long p : exponents) {
    o.require((bigmath::pow2(p) - 1) % 4 == 3, "2^p-1 not 3 mod 4 at p=" + std::to_string(p));
  }
  return o;
}

Outcome conjecture_scan() {
  Outcome o;
  const auto scan = powersum::scan_conjecture(kSmallP, 9);
  o.require(scan.findings == std::vector<powersum::Finding>{{3, Representation{3, 3, 1, 28}}},
            "findings differ from {(3, 3, (3,1))}");
  o.require(scan.all_verified, "a representation failed to reverify");
  std::size_t skipped = 0;
  for (const auto& cell : scan.cells) skipped += cell.method == powersum::ScanCell::Method::skipped;
  o.require(skipped == 0, "cells skipped");
  o.require(scan.cells.size() == kSmallP.size() * 8, "cell count");
  return o;
}

Outcome proof_steps() {
  Outcome o;
  const auto case1 = proofcheck::check_case1_ellipse();
  o.require(case1.exceptions.size() == 1 && case1.exceptions[0].at("x") == 1 && case1.exceptions[0].at("a") == 1,
            "case1 exceptions != {(1,1)}");
  const auto case2 = proofcheck::check_case2_contradiction(10'000);
  o.require(case2.verdict == Verdict::pass && case2.details["tail_certified"] == true, "case2 not certified");

  const auto exponents = mersenne::list_exponents(127);
  const auto window = proofcheck::check_h_window(exponents);
  o.require(window.verdict == Verdict::pass && window.exceptions.empty(), "h-window exceptions");
  for (unsigned long p : exponents) {
    for (const auto& h : window.details["per_p"][std::to_string(p)]["H"]) {
      const unsigned long hv = h.get<unsigned long>();
      o.require(3 * hv == 2 * p - 1 || 3 * hv == 2 * p, "h outside {3h=2p-1, 3h=2p} at p=" + std::to_string(p));
    }
  }
  o.require(proofcheck::check_final_equation(60).verdict == Verdict::pass, "final equation");
  return o;
}

Outcome m5_exceptions() {
  Outcome o;
  const auto report = proofcheck::check_m5_bounds(100, 31);
  std::set<std::pair<long, long>> got;
  for (const auto& w : report.exceptions) got.emplace(w.at("x").get_si(), w.at("y").get_si());
  o.require(got == std::set<std::pair<long, long>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}, "exception set");
  o.require(report.exceptions.size() == 4, "duplicate exceptions");
  o.require(report.details["stated_h_interval"]["lo"] == 10 && report.details["stated_h_interval"]["hi"] == 20,
            "stated h-interval != [10, 20]");
  return o;
}

Outcome abc_chain() {
  Outcome o;
  for (unsigned long p : mersenne::list_exponents(127)) {
    const unsigned long h = abc::default_chain_h(p);
    for (unsigned long m = 30; m <= 200; ++m) {
      o.require(abc::verify_chain(p, m, h).conclusion == Conclusion::contradiction_found,
                "no contradiction at p=" + std::to_string(p) + " m=" + std::to_string(m));
    }
    // Interval ceil((2p+10)/28) <= h <= floor((2p-2)/28) at m = 29.
    const bool nonempty = (2 * p + 10 + 27) / 28 <= (2 * p - 2) / 28;
    const bool forced = abc::verify_chain(p, 29, h).conclusion == Conclusion::contradiction_found;
    o.require(forced != nonempty, "m=29 verdict disagrees with interval at p=" + std::to_string(p));
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(20240917);
  const std::uint64_t n_max = 1'000'000;
  const unsigned ms[] = {3, 5, 7};
  for (int i = 0; i < 500; ++i) {
    const unsigned m = ms[rng() % 3];
    std::uint64_t n;
    if (i % 2 == 0) {
      n = 2 + rng() % (n_max - 1);
    } else {
      std::uint64_t x_max = 1;
      while (testing::ipow(x_max + 1, m) + 1 <= n_max) ++x_max;
      const std::uint64_t x = 1 + rng() % x_max;
      std::uint64_t y_max = 1;
      while (y_max < x && testing::ipow(x, m) + testing::ipow(y_max + 1, m) <= n_max) ++y_max;
      n = static_cast<std::uint64_t>(testing::ipow(x, m) + testing::ipow(1 + rng() % y_max, m));
    }
    const Natural big = bigmath::from_u64(n);
    o.require(powersum::decide_divisors(big, m) == powersum::decide_naive(big, m),
              "divisor decision differs at n=" + std::to_string(n) + " m=" + std::to_string(m));
  }
  for (unsigned m : {2u, 3u, 5u}) {
    const auto oracle = testing::nested_loop(m, n_max);
    const auto reps = powersum::enumerate(m, bigmath::from_u64(n_max));
    bool same = reps.size() == oracle.size();
    for (std::size_t i = 0; same && i < reps.size(); ++i) {
      const auto& [n, x, y] = oracle[i];
      same = reps[i].n == bigmath::from_u64(n) && reps[i].x == bigmath::from_u64(x) &&
             reps[i].y == bigmath::from_u64(y);
    }
    o.require(same, "enumeration differs from nested loop for m=" + std::to_string(m));
  }
  return o;
}

// Removes comments, string literals and character literals so the scan
// only sees code.
std::string strip_code(const std::string& text) {
  std::string out;
  enum { code, line_comment, block_comment, string_lit, char_lit } state = code;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    const char next = i + 1 < text.size() ? text[i + 1] : '\0';
    switch (state) {
      case code:
        if (c == '/' && next == '/') {
          state = line_comment;
        } else if (c == '/' && next == '*') {
          state = block_comment;
          ++i;
        } else if (c == '"') {
          state = string_lit;
          out += "\"\"";
        } else if (c == '\'' && !(i > 0 && std::isalnum(static_cast<unsigned char>(text[i - 1])))) {
          state = char_lit;
        } else {
          out += c;
        }
        break;
      case line_comment:
        if (c == '\n') {
          state = code;
          out += c;
        }
        break;
      case block_comment:
        if (c == '*' && next == '/') {
          state = code;
          ++i;
        } else if (c == '\n') {
          out += c;
        }
        break;
      case string_lit:
        if (c == '\\') {
          ++i;
        } else if (c == '"') {
          state = code;
        }
        break;
      case char_lit:
        if (c == '\\') {
          ++i;
        } else if (c == '\'') {
          state = code;
        }
        break;
    }
  }
  return out;
}

Outcome exactness(Outcome& determinism) {
  Outcome o;
  const std::regex banned(
      R"(\b(float|double|long\s+double)\b|<(cmath|math\.h|cfloat|float\.h)>|)"
      R"(\bstd::(sqrt|cbrt|pow|exp|exp2|log|log2|log10|floor|ceil|round|fabs|hypot)\s*\(|)"
      R"((^|[^:\w])(sqrt|cbrt|exp|exp2|log|log2|log10|fabs|sqrtl|logl)\s*\(|\bmpf|\bmpfr|)"
      R"(\b\d+\.\d*([eE][+-]?\d+)?|\b\d+[eE][+-]?\d+\b)");
  std::size_t files = 0;
  const std::filesystem::path root = PERFNUM_SOURCE_DIR;
  for (const char* dir : {"src", "include", "tools"}) {
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root / dir)) {
      const auto ext = entry.path().extension();
      if (ext != ".cpp" && ext != ".hpp") continue;
      ++files;
      std::ifstream in(entry.path());
      std::stringstream buffer;
      buffer << in.rdbuf();
      std::istringstream lines(strip_code(buffer.str()));
      std::string line;
      for (int number = 1; std::getline(lines, line); ++number) {
        if (std::regex_search(line, banned)) {
          o.require(false, entry.path().lexically_relative(root).string() + ":" + std::to_string(number));
        }
      }
    }
  }
  o.require(files >= 10, "source tree not found");

  auto verify_all = [](const char* threads, int& code) {
    std::ostringstream out, err;
    code = cli::run({"--format", "json", "--threads", threads, "verify-all", "--desk-scale"}, out, err);
    return out.str();
  };
  int code_one = -1, code_eight = -1;
  const std::string one = verify_all("1", code_one);
  const std::string eight = verify_all("8", code_eight);
  determinism.require(code_one == cli::kOk && code_eight == cli::kOk, "verify-all exit status");
  determinism.require(!one.empty() && one == eight, "JSON differs between --threads 1 and 8");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    long limit_ms;
    std::function<Outcome()> run;
  };
  Outcome determinism;
  const std::vector<Criterion> criteria{
      {1, "cube uniqueness", 10'000, cube_uniqueness},
      {2, "two-squares emptiness", 5'000, two_squares},
      {3, "conjecture desk scan", 60'000, conjecture_scan},
      {4, "proof-step suite", 30'000, proof_steps},
      {5, "m=5 exception set", 5'000, m5_exceptions},
      {6, "abc chain boundary", 10'000, abc_chain},
      {7, "oracle equivalence", 60'000, oracle_equivalence},
      {8, "exactness and determinism", 0, [&] { return exactness(determinism); }},
  };

  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    if (c.id == 8) {
      outcome.require(determinism.passed, determinism.note);
    }
    const long ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                        .count();
    if (c.limit_ms > 0) outcome.require(ms < c.limit_ms, "over time limit");
    all = all && outcome.passed;
    std::cout << (outcome.passed ? "PASS" : "FAIL") << "  criterion " << c.id << "  " << c.name << "  " << ms
              << " ms";
    if (c.limit_ms > 0) std::cout << " (limit " << c.limit_ms << " ms)";
    if (!outcome.note.empty()) std::cout << "  " << outcome.note;
    std::cout << "\n";
  }
  std::cout << (all ? "all criteria passed" : "some criteria failed") << "\n";
  return all ? 0 : 1;
}
