#include "perfnum/report.hpp"

#include <sstream>

namespace perfnum::report {

using nlohmann::json;

json to_json(const Natural& n) { return bigmath::to_decimal(n); }

json to_json(const PerfectNumber& pn) {
  return {{"p", pn.p}, {"mersenne", to_json(pn.mersenne)}, {"n", to_json(pn.n)}};
}

json to_json(const Representation& rep) {
  return {{"m", rep.m}, {"x", to_json(rep.x)}, {"y", to_json(rep.y)}, {"n", to_json(rep.n)}};
}

static const char* method_name(powersum::ScanCell::Method method) {
  switch (method) {
    case powersum::ScanCell::Method::structured:
      return "structured";
    case powersum::ScanCell::Method::naive:
      return "naive";
    case powersum::ScanCell::Method::skipped:
      return "skipped";
  }
  return "skipped";
}

json to_json(const powersum::ScanReport& scan, bool include_timings) {
  json cells = json::array();
  for (const auto& cell : scan.cells) {
    json c = {{"p", cell.p}, {"m", cell.m}, {"method", method_name(cell.method)},
              {"count", cell.reps.size()}};
    if (cell.oracle_agrees) c["oracle_agrees"] = *cell.oracle_agrees;
    if (include_timings) c["elapsed_us"] = cell.elapsed_us;
    cells.push_back(std::move(c));
  }
  json findings = json::array();
  for (const auto& f : scan.findings) {
    findings.push_back({{"p", f.p}, {"representation", to_json(f.rep)}});
  }
  return {{"m_range", {scan.m_min, scan.m_max}},
          {"p_list", scan.p_list},
          {"cells", cells},
          {"findings", findings},
          {"all_verified", scan.all_verified},
          {"matches_conjecture", scan.matches_conjecture()}};
}

json to_json(const ProofStepReport& step) {
  json exceptions = json::array();
  for (const auto& w : step.exceptions) {
    json entry = json::object();
    for (const auto& [key, value] : w.values) entry[key] = to_json(value);
    exceptions.push_back(std::move(entry));
  }
  return {{"step_id", to_string(step.step)},
          {"domain_checked", step.domain_checked},
          {"exceptions", exceptions},
          {"verdict", to_string(step.verdict)},
          {"details", step.details}};
}

json to_json(const AbcTriple& t) {
  json out = {{"A", to_json(t.a)},
              {"B", to_json(t.b)},
              {"C", to_json(t.c)},
              {"gcd", to_json(t.gcd)},
              {"coprime", t.coprime}};
  if (t.rad_abc) {
    out["rad_abc"] = to_json(*t.rad_abc);
    out["max_pow4"] = to_json(bigmath::pow(t.c, 4));
    out["rad_pow7"] = to_json(bigmath::pow(*t.rad_abc, 7));
  }
  if (t.baker_holds) out["baker_holds"] = *t.baker_holds;
  return out;
}

json to_json(const ChainReport& chain) {
  json steps = json::array();
  for (const auto& s : chain.steps) {
    json entry = {{"id", s.id}, {"inequality", s.inequality}, {"status", to_string(s.status)}};
    if (!s.note.empty()) entry["note"] = s.note;
    steps.push_back(std::move(entry));
  }
  return {{"p", chain.p},
          {"m", chain.m},
          {"h", chain.h},
          {"premises_hold", chain.premises_hold},
          {"outside_proof_assumption", chain.outside_proof_assumption},
          {"rad_ax", to_json(chain.rad_ax)},
          {"rad_is_bound", chain.rad_is_bound},
          {"h_lower_bak9", to_json(chain.h_lower)},
          {"h_upper_bak13", to_json(chain.h_upper)},
          {"conclusion", to_string(chain.conclusion)},
          {"bak7a_discrepancy", chain.bak7a_discrepancy},
          {"bak8_parity_holds", chain.bak8_parity_holds},
          {"steps", steps}};
}

json to_json(const TheoremReport& t) {
  json out = {{"p", t.p},
              {"m", t.m},
              {"x", to_json(t.x)},
              {"a", to_json(t.a)},
              {"h", t.h ? json(*t.h) : json(nullptr)},
              {"cond_zero", t.cond_zero},
              {"cond_a", t.cond_a},
              {"cond_b", t.cond_b},
              {"cond_c", t.cond_c},
              {"cond_d", t.cond_d},
              {"cond_e", t.cond_e},
              {"all_conditions_hold", t.all_conditions_hold()},
              {"gcd_xm_am", to_json(t.gcd_xm_am)},
              {"chain", to_json(t.chain)},
              {"conclusion", to_string(t.conclusion)}};
  out["triple"] = t.triple ? to_json(*t.triple) : json(nullptr);
  return out;
}

json to_json(const SearchReport& s) {
  json hits = json::array();
  for (const auto& h : s.hits) {
    hits.push_back({{"p", h.p}, {"m", h.m}, {"h", h.h}, {"x", to_json(h.x)}, {"a", to_json(h.a)}});
  }
  return {{"p_list", s.p_list}, {"m_min", s.m_min}, {"cells_examined", s.cells_examined}, {"hits", hits}};
}

std::string json_line(const Representation& rep) { return to_json(rep).dump(); }

json envelope(const std::string& command, bool passed, json result) {
  return {{"schema", kSchema},
          {"command", command},
          {"verdict", passed ? "pass" : "fail"},
          {"result", std::move(result)}};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

static void render(std::ostringstream& out, const json& node, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      if (value.is_structured() && !value.empty()) {
        out << pad << key << ":\n";
        render(out, value, depth + 1);
      } else {
        out << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
            << "\n";
      }
    }
  } else if (node.is_array()) {
    for (const auto& value : node) {
      if (value.is_structured() && !value.empty()) {
        out << pad << "-\n";
        render(out, value, depth + 1);
      } else {
        out << pad << "- " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
      }
    }
  } else {
    out << pad << (node.is_string() ? node.get<std::string>() : node.dump()) << "\n";
  }
}

std::string render_text(const json& doc) {
  std::ostringstream out;
  render(out, doc, 0);
  return out.str();
}

}  // namespace perfnum::report
