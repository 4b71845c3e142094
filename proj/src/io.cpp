#include "bellforge/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace bellforge {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(where.empty() ? key : where + "." + key, "missing field");
  return *it;
}

std::string path(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }

std::int64_t integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where, "expected an integer");
  return j.get<std::int64_t>();
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where, "expected a number");
  return j.get<double>();
}

Rational rational(const Json& obj, const char* num_key, const char* den_key, const std::string& where) {
  const auto num = integer(field(obj, num_key, where), path(where, num_key));
  const auto den = integer(field(obj, den_key, where), path(where, den_key));
  if (den == 0) throw ParseError(path(where, den_key), "denominator is zero");
  return Rational(num, den);
}

Direction direction(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ParseError(where, "expected [x, y, z]");
  Direction d{};
  for (int k = 0; k < 3; ++k) d[k] = number(j[k], where + "[" + std::to_string(k) + "]");
  return d;
}

Json rows_to_json(std::span<const BellTerm> rows) {
  Json terms = Json::array();
  for (const auto& t : rows) {
    Json row;
    row["pattern"] = t.pattern.str();
    row["weight_num"] = t.weight.numerator();
    row["weight_den"] = t.weight.denominator();
    if (t.sign != 1) row["sign"] = t.sign;
    terms.push_back(std::move(row));
  }
  return terms;
}

}  // namespace

BellInequality InequalityDocument::inequality() const { return BellInequality(n, rows, bound, label); }

Json to_json(const BellInequality& ineq) {
  Json j;
  j["n"] = ineq.parties();
  j["bound_num"] = ineq.bound().numerator();
  j["bound_den"] = ineq.bound().denominator();
  j["terms"] = rows_to_json(ineq.terms());
  j["label"] = ineq.label();
  return j;
}

Json to_json(const InequalityDocument& doc) {
  Json j;
  j["n"] = doc.n;
  j["bound_num"] = doc.bound.numerator();
  j["bound_den"] = doc.bound.denominator();
  j["terms"] = rows_to_json(doc.rows);
  j["label"] = doc.label;
  return j;
}

InequalityDocument document_from_json(const Json& j) {
  InequalityDocument doc;
  const auto n = integer(field(j, "n", ""), "n");
  if (n < 2 || n > kMaxParties) throw ParseError("n", "party count out of range");
  doc.n = static_cast<int>(n);
  doc.bound = rational(j, "bound_num", "bound_den", "");
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ParseError("label", "expected a string");
    doc.label = j["label"].get<std::string>();
  }
  const Json& terms = field(j, "terms", "");
  if (!terms.is_array()) throw ParseError("terms", "expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "terms[" + std::to_string(i) + "]";
    const Json& row = terms[i];
    const Json& pattern = field(row, "pattern", where);
    if (!pattern.is_string()) throw ParseError(where + ".pattern", "expected a string");
    BellTerm t;
    try {
      t.pattern = SignPattern::parse(pattern.get<std::string>());
    } catch (const InvalidPattern& e) {
      throw ParseError(where + ".pattern", e.what());
    }
    if (t.pattern.size() != doc.n) throw ParseError(where + ".pattern", "length differs from n");
    t.weight = rational(row, "weight_num", "weight_den", where);
    if (row.contains("sign")) {
      const auto s = integer(row["sign"], where + ".sign");
      if (s != 1 && s != -1) throw ParseError(where + ".sign", "sign must be 1 or -1");
      t.sign = static_cast<int>(s);
    }
    doc.rows.push_back(t);
  }
  return doc;
}

BellInequality inequality_from_json(const Json& j) { return document_from_json(j).inequality(); }

Json to_json(const PureState& psi) {
  Json j;
  j["n"] = psi.qubits();
  j["ordering"] = kBasisOrdering;
  Json amps = Json::array();
  for (const auto& a : psi.amplitudes()) amps.push_back({a.real(), a.imag()});
  j["amplitudes"] = std::move(amps);
  return j;
}

PureState state_from_json(const Json& j, bool normalize) {
  const auto n = integer(field(j, "n", ""), "n");
  if (n < 1 || n > kMaxQubits) throw ParseError("n", "qubit count out of range");
  if (j.contains("ordering") && j["ordering"] != kBasisOrdering) {
    throw ParseError("ordering", std::string("only \"") + kBasisOrdering + "\" is supported");
  }
  const Json& amps = field(j, "amplitudes", "");
  if (!amps.is_array()) throw ParseError("amplitudes", "expected an array");
  Amplitudes a;
  a.reserve(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const std::string where = "amplitudes[" + std::to_string(i) + "]";
    const Json& c = amps[i];
    if (c.is_number()) {
      a.emplace_back(c.get<double>(), 0.0);
    } else if (c.is_array() && c.size() == 2) {
      a.emplace_back(number(c[0], where + "[0]"), number(c[1], where + "[1]"));
    } else {
      throw ParseError(where, "expected [re, im]");
    }
  }
  try {
    return PureState(static_cast<int>(n), std::move(a), normalize);
  } catch (const InvalidState& e) {
    throw ParseError("amplitudes", e.what());
  }
}

Json to_json(const SettingSet& settings) {
  Json parties = Json::array();
  for (const auto& p : settings.all()) {
    parties.push_back({{"vec1", p.first}, {"vec2", p.second}});
  }
  return Json{{"parties", std::move(parties)}};
}

SettingSet settings_from_json(const Json& j) {
  const Json& parties = field(j, "parties", "");
  if (!parties.is_array()) throw ParseError("parties", "expected an array");
  std::vector<PartySetting> out;
  for (std::size_t i = 0; i < parties.size(); ++i) {
    const std::string where = "parties[" + std::to_string(i) + "]";
    const Json& p = parties[i];
    if (p.is_object() && p.contains("phi1")) {
      const double a1 = number(field(p, "phi1", where), where + ".phi1");
      const double a2 = number(field(p, "phi2", where), where + ".phi2");
      out.push_back({{std::sin(a1), 0.0, std::cos(a1)}, {std::sin(a2), 0.0, std::cos(a2)}});
    } else {
      out.push_back({direction(field(p, "vec1", where), where + ".vec1"),
                     direction(field(p, "vec2", where), where + ".vec2")});
    }
  }
  try {
    return SettingSet(std::move(out));
  } catch (const InvalidConfig& e) {
    throw ParseError("parties", e.what());
  }
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column), e.what());
  }
}

Json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError(file.string(), "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_json_text(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(file.string(), e.what());
  }
}

void write_json_file(const std::filesystem::path& file, const Json& j) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << j.dump(2) << '\n';
}

}  // namespace bellforge
