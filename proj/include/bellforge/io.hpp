#pragma once

// JSON documents for inequalities, states and settings.
//
//   inequality: {n, bound_num, bound_den, terms: [{pattern, weight_num, weight_den, sign?}], label}
//   state:      {n, amplitudes: [[re, im], ...], ordering}
//   settings:   {parties: [{phi1, phi2} | {vec1: [x,y,z], vec2: [x,y,z]}]}
//
// Every parse failure is a ParseError naming the offending field.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "bellforge/quantum_engine.hpp"
#include "bellforge/term_algebra.hpp"

namespace bellforge {

using Json = nlohmann::ordered_json;

inline constexpr const char* kBasisOrdering = "party1-most-significant";

// Inequality rows exactly as written, duplicates and all. Lint works on this.
struct InequalityDocument {
  int n = 0;
  Rational bound{1};
  std::string label;
  std::vector<BellTerm> rows;

  // Validated inequality; throws InvalidInequality on repeated patterns.
  BellInequality inequality() const;
};

Json to_json(const BellInequality& ineq);
Json to_json(const InequalityDocument& doc);
InequalityDocument document_from_json(const Json& j);
BellInequality inequality_from_json(const Json& j);

Json to_json(const PureState& psi);
// Amplitudes are normalized when `normalize` is set, otherwise the norm is checked.
PureState state_from_json(const Json& j, bool normalize = false);

Json to_json(const SettingSet& settings);
SettingSet settings_from_json(const Json& j);

// Parses text; syntax errors become ParseError("line L, column C", ...).
Json parse_json_text(const std::string& text);
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace bellforge
