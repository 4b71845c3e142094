#include <random>
#include <set>

#include "doctest.h"

#include "bellforge/builder.hpp"
#include "bellforge/catalog.hpp"
#include "bellforge/oracle.hpp"
#include "bellforge/term_algebra.hpp"

using namespace bellforge;

namespace {

std::set<std::string> strs(const std::vector<SignPattern>& v) {
  std::set<std::string> out;
  for (const auto& p : v) out.insert(p.str());
  return out;
}

}  // namespace

TEST_CASE("pattern parsing round-trips and rejects junk") {
  CHECK(SignPattern::parse("+-0+").str() == "+-0+");
  CHECK(SignPattern::parse("+-0+").order() == 3);
  CHECK(SignPattern::parse("+-0+").zero_count() == 1);
  CHECK_THROWS_AS(SignPattern::parse("+x-"), InvalidPattern);
  CHECK_THROWS_AS(SignPattern::parse(""), InvalidPattern);
}

TEST_CASE("canonical order is PLUS < MINUS < ZERO") {
  CHECK(SignPattern::parse("+") < SignPattern::parse("-"));
  CHECK(SignPattern::parse("+-") < SignPattern::parse("+0"));
  CHECK(SignPattern::parse("+0") < SignPattern::parse("-+"));
}

TEST_CASE("covered strings") {
  CHECK(strs(covered_strings(SignPattern::parse("+++-0"))) == std::set<std::string>{"+++-+", "+++--"});
  CHECK(strs(covered_strings(SignPattern::parse("+-+"))) == std::set<std::string>{"+-+"});
  CHECK(covered_strings(SignPattern::parse("-++0-+00-")).size() == 8);
}

TEST_CASE("mass of complete and defective sets") {
  CHECK(mass(catalog_entry("n3-complete").inequality()).mass == 8);
  CHECK(mass(catalog_entry("n3-complete").inequality()).completeness == Completeness::Complete);
  CHECK(mass(catalog_entry("n5-a").inequality()).mass == 32);
  CHECK(mass(catalog_entry("n5-b").inequality()).completeness == Completeness::Complete);
  CHECK(mass(catalog_entry("n3-pairwise").inequality()).completeness == Completeness::ExtremesDropped);
  const auto n7 = mass(catalog_entry("n7").inequality());
  CHECK(n7.mass == 114);
  CHECK(n7.completeness == Completeness::Defective);
  CHECK(n7.uncovered.size() == 14);
}

TEST_CASE("overlapping terms are refused by mass but reported by the audit") {
  const BellInequality ineq(3, {{SignPattern::parse("+-0"), Rational(1, 4)}, {SignPattern::parse("+--"), Rational(1, 8)}});
  CHECK_THROWS_AS(mass(ineq), OverlapError);
  const auto audit = audit_coverage(3, ineq.terms());
  CHECK_FALSE(audit.disjoint);
  CHECK(audit.overlapping.size() == 1);
}

TEST_CASE("cyclic orbits") {
  CHECK(cyclic_orbit(SignPattern::parse("+++-0")).size() == 5);
  CHECK(cyclic_orbit(SignPattern::parse("+++++")).size() == 1);
  CHECK(cyclic_orbit(SignPattern::parse("++-++-++-")).size() == 3);
  for (const auto& p : cyclic_orbit(SignPattern::parse("+-0+-0"))) {
    CHECK(cyclic_orbit(p).size() == 3);
  }
}

TEST_CASE("term evaluation") {
  const auto ones = Assignment(3, 0);
  CHECK(evaluate_term(SignPattern::parse("+++"), ones) == 8);
  CHECK(evaluate_term(SignPattern::parse("-0+"), ones) == 0);
  const std::array<std::array<int, 2>, 5> v{{{1, 1}, {1, -1}, {1, 1}, {1, 1}, {1, -1}}};
  CHECK(evaluate_term(SignPattern::parse("+-00-"), Assignment::from_values(v)) == 8);
}

TEST_CASE("term evaluation matches direct substitution for N <= 4") {
  for (int n = 1; n <= 4; ++n) {
    int total = 1;
    for (int j = 0; j < n; ++j) total *= 3;
    for (int code = 0; code + 1 < total; ++code) {
      std::vector<Symbol> s(n);
      int rest = code;
      for (int j = 0; j < n; ++j, rest /= 3) s[j] = static_cast<Symbol>(rest % 3);
      const SignPattern p(s);
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (2 * n)); ++bits) {
        const Assignment a(n, bits);
        REQUIRE(evaluate_term(p, a) == oracle::term_value(p, a));
      }
    }
  }
}

TEST_CASE("inequality validation") {
  const auto p = SignPattern::parse("++");
  CHECK_THROWS_AS(BellInequality(2, {{p, Rational(1)}, {p, Rational(1)}}), InvalidInequality);
  CHECK_THROWS_AS(BellInequality(2, {{p, Rational(0)}}), InvalidInequality);
  CHECK_THROWS_AS(BellInequality(2, {{p, Rational(1), 2}}), InvalidInequality);
  CHECK_THROWS_AS(BellInequality(3, {{p, Rational(1)}}), InvalidInequality);
  CHECK_THROWS_AS(BellInequality(2, {{p, Rational(1)}}, Rational(0)), InvalidInequality);
}

TEST_CASE("catalog entries") {
  const auto& b = catalog_entry("n5-b");
  CHECK(b.generators == std::vector<std::string>{"+++-0", "-++-0", "-+--0"});
  const auto pairwise = catalog_entry("n3-pairwise").inequality();
  CHECK(pairwise.size() == 3);
  for (const auto& t : pairwise.terms()) CHECK(t.weight == Rational(1, 4));
  CHECK_THROWS_AS(catalog_entry("nope"), InvalidConfig);
  // Deduplicated view keeps one copy of the repeated rows.
  CHECK(catalog_entry("n9-a").inequality().size() < catalog_entry("n9-a").rows.size());
}
