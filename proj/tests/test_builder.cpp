#include <random>

#include "doctest.h"

#include "bellforge/builder.hpp"
#include "bellforge/catalog.hpp"
#include "bellforge/io.hpp"
#include "bellforge/lhv_certifier.hpp"

using namespace bellforge;

namespace {

Rational wrapped_value(const BellInequality& ineq, const Assignment& a) {
  Rational v(0);
  for (const auto& t : ineq.terms()) v += t.weight * std::abs(evaluate_term(t.pattern, a));
  return v;
}

}  // namespace

TEST_CASE("seed enumerates every full string") {
  const auto s2 = full_seed(2);
  CHECK(s2.size() == 4);
  for (const auto& t : s2.terms()) CHECK(t.weight == Rational(1, 4));
  CHECK(full_seed(3).size() == 8);
  CHECK(mass(full_seed(5)).mass == 32);
  CHECK_THROWS_AS(full_seed(13), NTooLarge);
}

TEST_CASE("exactly one seed term is nonzero at every assignment") {
  const auto seed = full_seed(4);
  for (std::uint64_t bits = 0; bits < 256; ++bits) {
    int nonzero = 0;
    for (const auto& t : seed.terms()) nonzero += evaluate_term(t.pattern, Assignment(4, bits)) != 0;
    REQUIRE(nonzero == 1);
  }
}

TEST_CASE("pairing merges a sibling block") {
  const std::vector<int> third{2};
  const auto block3 = sibling_block(SignPattern::parse("+-+"), third);
  const auto r3 = pair_reduce(full_seed(3), block3, third);
  const auto t = r3.find(SignPattern::parse("+-0"));
  REQUIRE(t);
  CHECK(t->weight == Rational(2, 8));
  CHECK(r3.size() == 7);

  const std::vector<int> fifth{4};
  const auto r5 = pair_reduce(full_seed(5), sibling_block(SignPattern::parse("+++-+"), fifth), fifth);
  CHECK(r5.find(SignPattern::parse("+++-0"))->weight == Rational(2, 32));

  const std::vector<int> last3{6, 7, 8};
  const auto block9 = sibling_block(SignPattern::parse("+++++-+++"), last3);
  CHECK(block9.size() == 8);
  const auto seed9 = full_seed(9);
  const auto r9 = pair_reduce(seed9, block9, last3);
  CHECK(r9.find(SignPattern::parse("+++++-000"))->weight == Rational(8, 512));
  CHECK(mass(r9).mass == 512);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Assignment a(9, rng() & ((std::uint64_t{1} << 18) - 1));
    REQUIRE(wrapped_value(r9, a) == wrapped_value(seed9, a));
  }
}

TEST_CASE("pairing refuses incomplete blocks and mismatched weights") {
  const std::vector<int> third{2};
  const std::vector<SignPattern> partial{SignPattern::parse("+-+")};
  CHECK_THROWS_AS(pair_reduce(full_seed(3), partial, third), BlockIncomplete);
  const BellInequality uneven(2, {{SignPattern::parse("++"), Rational(1, 4)}, {SignPattern::parse("+-"), Rational(1, 2)}});
  const std::vector<int> second{1};
  CHECK_THROWS_AS(pair_reduce(uneven, sibling_block(SignPattern::parse("++"), second), second), WeightMismatch);
}

TEST_CASE("generator output for N=5 k=1") {
  int seventeen = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorConfig cfg;
    cfg.n = 5;
    cfg.k = 1;
    cfg.seed = seed;
    const auto r = generate_cp_set(cfg);
    REQUIRE(r.complete);
    CHECK(certify_bound(r.inequality, true).max_abs == Rational(1));
    if (r.orbits == 3) {
      CHECK(r.inequality.size() == 17);
      ++seventeen;
    }
  }
  CHECK(seventeen > 0);
}

TEST_CASE("generator output for N=3 k=1 is the extremes plus one orbit") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorConfig cfg;
    cfg.n = 3;
    cfg.k = 1;
    cfg.seed = seed;
    const auto r = generate_cp_set(cfg);
    REQUIRE(r.complete);
    CHECK(r.orbits == 1);
    CHECK(r.residual_orbits == 0);
    CHECK(r.inequality.size() == 5);
    CHECK(r.inequality.contains(SignPattern::parse("+++")));
    CHECK(r.inequality.contains(SignPattern::parse("---")));
  }
}

TEST_CASE("generator output for N=9 k=3 has weight-8 terms and full mass") {
  GeneratorConfig cfg;
  cfg.n = 9;
  cfg.k = 3;
  cfg.seed = 1;
  const auto r = generate_cp_set(cfg);
  CHECK(r.complete);
  CHECK(mass(r.inequality).mass == 512);
  bool weight8 = false;
  for (const auto& t : r.inequality.terms()) weight8 = weight8 || t.weight == Rational(8, 512);
  CHECK(weight8);
}

TEST_CASE("generator is deterministic per seed") {
  GeneratorConfig cfg;
  cfg.n = 7;
  cfg.k = 1;
  cfg.seed = 5;
  CHECK(to_json(generate_cp_set(cfg).inequality).dump() == to_json(generate_cp_set(cfg).inequality).dump());
}

TEST_CASE("generator reports an exhausted budget") {
  GeneratorConfig cfg;
  cfg.n = 9;
  cfg.k = 1;
  cfg.max_draws = 3;
  const auto r = generate_cp_set(cfg);
  CHECK_FALSE(r.complete);
  CHECK(r.diagnostic.find("budget") != std::string::npos);
  CHECK_THROWS_AS(generate_cp_set({.n = 5, .k = 5}), InvalidConfig);
}

TEST_CASE("dropping extremes") {
  const auto n3 = drop_extremes(catalog_entry("n3-complete").inequality());
  CHECK(n3 == catalog_entry("n3-pairwise").inequality());
  const auto n5 = drop_extremes(catalog_entry("n5-b").inequality());
  CHECK(n5 == catalog_entry("n5-b-no-extremes").inequality());
  CHECK_THROWS_AS(drop_extremes(n5), ExtremesAbsent);
}
