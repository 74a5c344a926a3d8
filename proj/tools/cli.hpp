#pragma once

// Command-line front end: configuration, report documents and the three
// subcommands analyze, verify and pairing.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "metawhit/verify.hpp"

namespace metawhit::cli {

enum ExitStatus : int { pass = 0, usage_error = 1, identity_violation = 2, internal_error = 3 };

/// "v:unit" where unit is either the integer encoding sum c_i p^i or a comma
/// separated coefficient list c_0,c_1,...
struct ElemSpec {
  long long valuation = 0;
  std::vector<std::uint32_t> unit{1};
};

struct AnalysisConfig {
  unsigned p = 7;
  unsigned f = 1;
  unsigned n = 3;
  std::optional<std::vector<std::int64_t>> modulus_poly;
  std::optional<std::string> theta;  // unramified | ramified_plus | ramified_minus
  std::optional<long long> psi_conductor;
  std::optional<ElemSpec> psi_twist;  // valuation ignored
  std::vector<ElemSpec> c_list;
  std::optional<std::string> pairs;  // standard | all | index
  std::string fault = "none";
};

ElemSpec parse_elem_spec(const std::string& text, unsigned p);
std::string to_string(const ElemSpec& e);

nlohmann::ordered_json config_to_json(const AnalysisConfig& cfg);
/// Throws std::invalid_argument on malformed documents.
AnalysisConfig config_from_json(const nlohmann::json& doc);

/// Exact value plus a complex approximation.
nlohmann::ordered_json exact_json(const CycloNum& z);

nlohmann::ordered_json cmd_analyze(const AnalysisConfig& cfg, int& status);
nlohmann::ordered_json cmd_verify(const AnalysisConfig& cfg, int& status);
nlohmann::ordered_json cmd_pairing(const AnalysisConfig& cfg, int& status);

/// Human-readable rendering of a report document.
std::string render_text(const nlohmann::ordered_json& report);

/// Entry point; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace metawhit::cli
