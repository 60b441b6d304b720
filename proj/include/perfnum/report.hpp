#pragma once

#include <string>

#include "json.hpp"
#include "perfnum/abc.hpp"
#include "perfnum/mersenne.hpp"
#include "perfnum/powersum.hpp"
#include "perfnum/proofcheck.hpp"

// JSON views of the library's result types. Big integers are always decimal
// strings; small machine integers (p, m, h) are JSON numbers. Object keys are
// sorted, so serialization is deterministic.
namespace perfnum::report {

inline constexpr const char* kSchema = "perfnum/1";

nlohmann::json to_json(const Natural& n);
nlohmann::json to_json(const PerfectNumber& pn);
nlohmann::json to_json(const Representation& rep);
nlohmann::json to_json(const powersum::ScanReport& scan, bool include_timings);
nlohmann::json to_json(const ProofStepReport& step);
nlohmann::json to_json(const AbcTriple& triple);
nlohmann::json to_json(const ChainReport& chain);
nlohmann::json to_json(const TheoremReport& theorem);
nlohmann::json to_json(const SearchReport& search);

// One JSON-lines record {n, x, y, m}.
std::string json_line(const Representation& rep);

// {"schema": ..., "command": ..., "verdict": ..., "result": ...}
nlohmann::json envelope(const std::string& command, bool passed, nlohmann::json result);

std::string dump(const nlohmann::json& doc);
// Indented key: value listing of the same document.
std::string render_text(const nlohmann::json& doc);

}  // namespace perfnum::report
