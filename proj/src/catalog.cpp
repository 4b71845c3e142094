#include "bellforge/catalog.hpp"

#include <set>

#include "bellforge/builder.hpp"

namespace bellforge {

namespace {

struct Draft {
  CatalogEntry entry;

  Draft(std::string name, std::string description, int n, Rational bound = Rational(1)) {
    entry.name = std::move(name);
    entry.description = std::move(description);
    entry.n = n;
    entry.bound = bound;
  }

  Draft& row(const std::string& pattern, Rational weight, int sign = 1) {
    entry.rows.push_back({SignPattern::parse(pattern), weight, sign});
    return *this;
  }

  // Row weighted by the builder convention 2^zeros / 2^N.
  Draft& row(const std::string& pattern) {
    const auto p = SignPattern::parse(pattern);
    entry.rows.push_back({p, builder_weight(p)});
    return *this;
  }

  Draft& orbit(const std::string& generator) {
    entry.generators.push_back(generator);
    for (const auto& p : cyclic_orbit(SignPattern::parse(generator))) {
      entry.rows.push_back({p, builder_weight(p)});
    }
    return *this;
  }
};

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;

  out.push_back(Draft("chsh", "two-party body A1B1 + A1B2 + A2B1 - A2B2", 2, Rational(2))
                    .row("++", Rational(1, 2))
                    .row("+-", Rational(1, 2))
                    .row("-+", Rational(1, 2))
                    .row("--", Rational(1, 2), -1)
                    .entry);

  Draft n3("n3-complete", "three parties, extremes plus two-party terms", 3);
  n3.row("+++").row("+-0").row("0+-").row("-0+").row("---");
  out.push_back(n3.entry);

  Draft n3p("n3-pairwise", "three parties, two-party correlations only", 3);
  n3p.row("+-0").row("0+-").row("-0+");
  out.push_back(n3p.entry);

  Draft n5a("n5-a", "five parties, extremes plus three one-ZERO orbits", 5);
  n5a.row("+++++").orbit("+++-0").orbit("+-+-0").orbit("---+0").row("-----");
  out.push_back(n5a.entry);

  Draft n5b("n5-b", "five parties, extremes plus three one-ZERO orbits (violated variant)", 5);
  n5b.row("+++++").orbit("+++-0").orbit("-++-0").orbit("-+--0").row("-----");
  out.push_back(n5b.entry);

  Draft n5bs("n5-b-no-extremes", "n5-b without the two five-party terms", 5);
  n5bs.orbit("+++-0").orbit("-++-0").orbit("-+--0");
  out.push_back(n5bs.entry);

  Draft n7("n7", "seven parties, extremes plus eight one-ZERO orbits as printed", 7);
  n7.row("+++++++");
  for (const char* g : {"+++++-0", "++-++-0", "+-+-++0", "-+--+-0", "--+-++0", "+++---0", "+-+---0", "-----+0"}) {
    n7.orbit(g);
  }
  n7.row("-------");
  out.push_back(n7.entry);

  // Explicit full rows printed after the orbit sums in both nine-party
  // inequalities; the last two repeat the first verbatim.
  const std::vector<std::string> nine_rows{"++-++-++-", "+-++-++-+", "-++-++-++",
                                           "--+--+--+", "++-++-++-", "++-++-++-"};

  Draft n9a("n9-a", "nine parties, 28 one-ZERO orbits plus explicit rows as printed", 9);
  n9a.row("+++++++++");
  for (const char* g : {"+++++++-0", "-++++++-0", "-+++++-+0", "-++++-++0", "-+++++--0", "-++++-+-0",
                        "-++++--+0", "-++++---0", "-+++-++-0", "-+++-+-+0", "-+++--+-0", "-+++-+--0",
                        "-+++--++0", "-+++----0", "-+++---+0", "-++-++--0", "-++-+-+-0", "-++-+---0",
                        "-++--++-0", "-++-----0", "-++---+-0", "-++-+--+0", "--++--+-0", "-+-+--+-0",
                        "-+-+----0", "--+--+-+0", "----+--+0", "---+----0"}) {
    n9a.orbit(g);
  }
  for (const auto& r : nine_rows) n9a.row(r);
  n9a.row("---------");
  out.push_back(n9a.entry);

  Draft n9b("n9-b", "nine parties, seven three-ZERO orbits plus explicit rows as printed", 9);
  n9b.row("+++++++++");
  for (const char* g : {"+++++-000", "-++++-000", "-+++--000", "-++---000", "-++0-+-00", "-++-+-000", "--+-0-0-0"}) {
    n9b.orbit(g);
  }
  for (const auto& r : nine_rows) n9b.row(r);
  // Printed closing term is the all-PLUS product a second time.
  n9b.row("+++++++++");
  out.push_back(n9b.entry);

  return out;
}

}  // namespace

InequalityDocument CatalogEntry::document() const {
  InequalityDocument doc;
  doc.n = n;
  doc.bound = bound;
  doc.label = name;
  doc.rows = rows;
  return doc;
}

BellInequality CatalogEntry::inequality() const {
  std::set<SignPattern> seen;
  std::vector<BellTerm> unique;
  for (const auto& r : rows) {
    if (seen.insert(r.pattern).second) unique.push_back(r);
  }
  return BellInequality(n, std::move(unique), bound, name);
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return e;
  }
  throw InvalidConfig("unknown catalog entry \"" + name + "\"");
}

}  // namespace bellforge
