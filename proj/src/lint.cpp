#include "bellforge/lint.hpp"

#include <map>
#include <set>
#include <sstream>

#include "bellforge/builder.hpp"

namespace bellforge {

bool LintReport::ok() const noexcept {
  return coverage.disjoint && coverage.completeness == Completeness::Complete;
}

LintReport lint(const InequalityDocument& doc, int mirror_max_parties) {
  LintReport r;
  r.label = doc.label;
  r.n = doc.n;
  r.rows = doc.rows.size();

  std::map<SignPattern, int> counts;
  std::vector<BellTerm> unique;
  for (const auto& row : doc.rows) {
    if (counts[row.pattern]++ == 0) unique.push_back(row);
    if (row.weight != builder_weight(row.pattern)) r.off_weight.push_back(row.pattern);
  }
  r.distinct = counts.size();
  for (const auto& [p, c] : counts) {
    if (c > 1) r.duplicates.push_back({p, c});
  }

  r.coverage = audit_coverage(doc.n, doc.rows);

  std::set<SignPattern> missing;
  for (const auto& [p, c] : counts) {
    for (const auto& q : cyclic_orbit(p)) {
      if (!counts.count(q)) missing.insert(q);
    }
  }
  r.missing_rotations.assign(missing.begin(), missing.end());
  r.orbit_closed = missing.empty();

  if (doc.n <= mirror_max_parties) {
    r.mirror = mirror_check(BellInequality(doc.n, unique, doc.bound, doc.label));
  }
  return r;
}

namespace {

std::string join_codes(int n, const std::vector<std::uint32_t>& codes) {
  std::string s;
  for (auto c : codes) s += (s.empty() ? "" : " ") + SignPattern::from_code(n, c).str();
  return s;
}

}  // namespace

std::string render(const LintReport& r) {
  std::ostringstream os;
  os << "label         " << (r.label.empty() ? "-" : r.label) << '\n';
  os << "parties       " << r.n << '\n';
  os << "rows          " << r.rows << " (" << r.distinct << " distinct)\n";
  os << "mass          " << r.coverage.mass << " of " << (std::int64_t{1} << r.n) << '\n';
  os << "disjoint      " << (r.coverage.disjoint ? "yes" : "no") << '\n';
  os << "completeness  " << to_string(r.coverage.completeness) << '\n';
  for (const auto& d : r.duplicates) os << "duplicate     " << d.pattern.str() << " x" << d.count << '\n';
  if (!r.coverage.overlapping.empty()) {
    os << "overlapping   " << r.coverage.overlapping.size() << ": " << join_codes(r.n, r.coverage.overlapping) << '\n';
  }
  if (!r.coverage.uncovered.empty()) {
    os << "uncovered     " << r.coverage.uncovered.size() << ": " << join_codes(r.n, r.coverage.uncovered) << '\n';
  }
  os << "orbit-closed  " << (r.orbit_closed ? "yes" : "no");
  if (!r.orbit_closed) os << " (" << r.missing_rotations.size() << " rotations missing)";
  os << '\n';
  if (!r.off_weight.empty()) os << "off-weight    " << r.off_weight.size() << " rows\n";
  if (r.mirror) {
    os << "mirror        " << (r.mirror->mirror ? "yes" : "no") << " (+bound " << r.mirror->plus_count
       << ", -bound " << r.mirror->minus_count << " of " << r.mirror->assignments << ")\n";
  } else {
    os << "mirror        skipped\n";
  }
  os << "verdict       " << (r.ok() ? "ok" : "defective") << '\n';
  return os.str();
}

Json to_json(const LintReport& r) {
  Json j;
  j["label"] = r.label;
  j["n"] = r.n;
  j["rows"] = r.rows;
  j["distinct"] = r.distinct;
  j["mass"] = r.coverage.mass;
  j["full_mass"] = std::int64_t{1} << r.n;
  j["disjoint"] = r.coverage.disjoint;
  j["completeness"] = to_string(r.coverage.completeness);
  Json dups = Json::array();
  for (const auto& d : r.duplicates) dups.push_back({{"pattern", d.pattern.str()}, {"count", d.count}});
  j["duplicates"] = std::move(dups);
  Json uncovered = Json::array();
  for (auto c : r.coverage.uncovered) uncovered.push_back(SignPattern::from_code(r.n, c).str());
  j["uncovered"] = std::move(uncovered);
  Json overlapping = Json::array();
  for (auto c : r.coverage.overlapping) overlapping.push_back(SignPattern::from_code(r.n, c).str());
  j["overlapping"] = std::move(overlapping);
  j["orbit_closed"] = r.orbit_closed;
  Json missing = Json::array();
  for (const auto& p : r.missing_rotations) missing.push_back(p.str());
  j["missing_rotations"] = std::move(missing);
  j["off_weight_rows"] = r.off_weight.size();
  if (r.mirror) {
    j["mirror"] = {{"mirror", r.mirror->mirror},
                   {"plus_count", r.mirror->plus_count},
                   {"minus_count", r.mirror->minus_count},
                   {"assignments", r.mirror->assignments}};
  } else {
    j["mirror"] = nullptr;
  }
  j["ok"] = r.ok();
  return j;
}

}  // namespace bellforge
