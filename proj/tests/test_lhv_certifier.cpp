#include <random>

#include "doctest.h"

#include "bellforge/builder.hpp"
#include "bellforge/catalog.hpp"
#include "bellforge/lhv_certifier.hpp"
#include "bellforge/oracle.hpp"

using namespace bellforge;

TEST_CASE("two-party bound") {
  const auto r = certify_bound(catalog_entry("chsh").inequality(), false);
  CHECK(r.signed_max == Rational(2));
  CHECK(r.signed_min == Rational(-2));
  CHECK(r.max_abs == Rational(2));
  CHECK(r.assignments == 16);
  CHECK(r.is_mirror);
  CHECK(r.plus_count == 8);
  CHECK(r.minus_count == 8);
}

TEST_CASE("wrapped bounds of reduced inequalities") {
  for (const char* name : {"n3-pairwise", "n3-complete", "n5-a", "n5-b", "n5-b-no-extremes"}) {
    CAPTURE(name);
    CHECK(certify_bound(catalog_entry(name).inequality(), true).max_abs == Rational(1));
  }
}

TEST_CASE("mirror property") {
  const auto n3 = mirror_check(catalog_entry("n3-complete").inequality());
  CHECK(n3.mirror);
  CHECK(n3.assignments == 64);
  CHECK(mirror_check(catalog_entry("n5-a").inequality()).mirror);
  CHECK_FALSE(mirror_check(catalog_entry("n3-pairwise").inequality()).mirror);
  // Every MINUS bracket vanishes when all outcomes are +1.
  const auto pairwise = catalog_entry("n3-pairwise").inequality();
  for (const auto& t : pairwise.terms()) {
    CHECK(evaluate_term(t.pattern, Assignment(3, 0)) == 0);
  }
}

TEST_CASE("parallel and serial enumeration agree") {
  for (const char* name : {"n5-b", "n7"}) {
    for (bool wrapped : {true, false}) {
      const auto ineq = catalog_entry(name).inequality();
      const auto a = certify_bound(ineq, wrapped);
      const auto b = certify_bound_serial(ineq, wrapped);
      CHECK(a.max_abs == b.max_abs);
      CHECK(a.signed_min == b.signed_min);
      CHECK(a.signed_max == b.signed_max);
      CHECK(a.plus_count == b.plus_count);
      CHECK(a.witness_max_abs.bits() == b.witness_max_abs.bits());
      CHECK(a.witness_min.bits() == b.witness_min.bits());
    }
  }
}

TEST_CASE("certified bound matches the seed expansion oracle") {
  for (const char* name : {"n3-complete", "n5-a", "n5-b", "n7"}) {
    const auto ineq = catalog_entry(name).inequality();
    CHECK(certify_bound(ineq, true).max_abs == oracle::seed_wrapped_bound(ineq));
  }
}

TEST_CASE("enumeration ceiling") { CHECK_THROWS_AS(certify_bound(full_seed(12).with_label("x"), true, 10), NTooLarge); }

TEST_CASE("vertex tensors") {
  const auto ones = vertex_tensor(Assignment(3, 0));
  for (int e : ones.entries()) CHECK(e == 1);
  const std::array<std::array<int, 2>, 1> v{{{1, -1}}};
  CHECK(vertex_tensor(Assignment::from_values(v)).entries() == std::vector<int>{1, -1, 1});

  std::mt19937_64 rng(3);
  for (int n = 1; n <= 4; ++n) {
    int total = 1;
    for (int j = 0; j < n; ++j) total *= 3;
    for (int trial = 0; trial < 8; ++trial) {
      const Assignment a(n, rng() & ((std::uint64_t{1} << (2 * n)) - 1));
      const auto t = vertex_tensor(a);
      for (int code = 0; code + 1 < total; ++code) {
        std::vector<Symbol> s(n);
        int rest = code;
        for (int j = 0; j < n; ++j, rest /= 3) s[j] = static_cast<Symbol>(rest % 3);
        const SignPattern p(s);
        REQUIRE(contract(t, p) == evaluate_term(p, a));
      }
    }
  }
}
