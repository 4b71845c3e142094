#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"

#include "bellforge/builder.hpp"
#include "bellforge/catalog.hpp"
#include "bellforge/optimizer.hpp"
#include "bellforge/sufficient_condition.hpp"

using namespace bellforge;

namespace {

std::multiset<std::string> keys(const ConditionIndexSet& s) {
  std::multiset<std::string> out;
  for (const auto& t : s) {
    std::string k;
    for (int i : t) k += static_cast<char>('0' + i);
    out.insert(k);
  }
  return out;
}

PureState ghz(int n) {
  Amplitudes a(std::size_t{1} << n);
  a.front() = a.back() = 1.0 / std::sqrt(2.0);
  return PureState(n, a);
}

}  // namespace

TEST_CASE("index sets") {
  CHECK(keys(condition_indices(catalog_entry("n3-complete").inequality())) ==
        std::multiset<std::string>{"111", "130", "013", "301", "333"});
  const auto n5 = keys(condition_indices(catalog_entry("n5-b").inequality()));
  CHECK(n5.size() == 17);
  CHECK(n5.count("11111") == 1);
  CHECK(n5.count("33333") == 1);
  const auto dropped = keys(condition_indices(drop_extremes(catalog_entry("n5-b").inequality())));
  CHECK(dropped.size() == 15);
  CHECK(dropped.count("11111") == 0);
  for (const auto& k : dropped) CHECK(k.find('2') == std::string::npos);
}

TEST_CASE("condition values") {
  const auto idx = condition_indices(catalog_entry("n5-b").inequality());
  CHECK(condition_value(PureState::basis(5, 0), idx) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(condition_value(ghz(5), idx) == doctest::Approx(1.0).epsilon(1e-12));
  // A violating state must fail the screen in the frame of the violating settings.
  const std::vector<double> phis(5, std::numbers::pi / 4);
  const auto best = max_eigenvalue(catalog_entry("n5-b").inequality(), settings_from_angles(phis));
  REQUIRE(best.value > 1.9);
  CHECK(condition_value(hadamard_all(best.state), idx) > 1.0);
}

TEST_CASE("frame sweep") {
  const auto idx = condition_indices(catalog_entry("n5-b").inequality());
  const auto s = condition_frame_sweep(ghz(5), idx, 16, 3);
  CHECK(s.identity_frame == doctest::Approx(1.0));
  CHECK(s.max_value >= s.identity_frame);
  CHECK(s.frames == 16);
  const auto again = condition_frame_sweep(ghz(5), idx, 16, 3);
  CHECK(again.max_value == s.max_value);
}

TEST_CASE("weight-vector norm never exceeds one") {
  for (const char* name : {"n3-complete", "n5-a", "n5-b"}) {
    CHECK(trig_vector_norm_max(catalog_entry(name).inequality(), 12) <= 1.0 + 1e-10);
  }
}

TEST_CASE("Hadamard frame swaps x and z") {
  std::mt19937_64 rng(8);
  const auto psi = PureState::random(3, rng);
  const auto h = hadamard_all(psi);
  CHECK(correlation_tensor(h, std::vector<int>{1, 3, 0}) == doctest::Approx(correlation_tensor(psi, std::vector<int>{3, 1, 0})));
  CHECK(correlation_tensor(h, std::vector<int>{2, 2, 2}) == doctest::Approx(-correlation_tensor(psi, std::vector<int>{2, 2, 2})));
}
