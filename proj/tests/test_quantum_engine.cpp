#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "bellforge/catalog.hpp"
#include "bellforge/optimizer.hpp"
#include "bellforge/oracle.hpp"

using namespace bellforge;

namespace {

PureState ghz(int n) {
  Amplitudes a(std::size_t{1} << n);
  a.front() = a.back() = 1.0 / std::sqrt(2.0);
  return PureState(n, a);
}

PureState singlet() { return PureState(2, {0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0}); }

}  // namespace

TEST_CASE("state validation") {
  CHECK_THROWS_AS(PureState(2, {1.0, 1.0, 0.0, 0.0}), InvalidState);
  CHECK_THROWS_AS(PureState(2, {1.0, 0.0}), InvalidState);
  CHECK(PureState(1, {3.0, 4.0}, true).amplitude(1).real() == doctest::Approx(0.8));
}

TEST_CASE("printed five-qubit state") {
  const auto amp = printed_state_amplitudes();
  CHECK(amp[0].real() == doctest::Approx(0.462854).epsilon(1e-12));
  CHECK(amp[0b01101].real() == doctest::Approx(-0.220891).epsilon(1e-12));
  const auto psi = printed_state();
  double norm = 0.0;
  for (const auto& a : psi.amplitudes()) norm += std::norm(a);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("correlation tensor entries") {
  const std::vector<int> z3{3, 3, 3, 3};
  CHECK(correlation_tensor(PureState::basis(4, 0), z3) == doctest::Approx(1.0));
  std::mt19937_64 rng(1);
  const auto psi = PureState::random(3, rng);
  CHECK(correlation_tensor(psi, std::vector<int>{0, 0, 0}) == doctest::Approx(1.0));
  CHECK(correlation_tensor(ghz(3), std::vector<int>{1, 1, 1}) == doctest::Approx(1.0));
  CHECK(std::abs(correlation_tensor(ghz(3), std::vector<int>{3, 3, 3})) < 1e-12);
  for (int code = 0; code < 64; ++code) {
    const std::vector<int> idx{code >> 4, (code >> 2) & 3, code & 3};
    REQUIRE(correlation_tensor(psi, idx) == doctest::Approx(oracle::dense_expectation(psi, idx)).epsilon(1e-10));
  }
}

TEST_CASE("correlation table matches direct entries and its serial build") {
  std::mt19937_64 rng(2);
  const auto psi = PureState::random(4, rng);
  const CorrelationTable t(psi, {0, 1, 2, 3});
  const auto s = CorrelationTable::build_serial(psi, {0, 1, 2, 3});
  CHECK(t.values() == s.values());
  const std::vector<int> idx{1, 0, 2, 3};
  CHECK(t.at(idx) == doctest::Approx(correlation_tensor(psi, idx)));
}

TEST_CASE("operator application") {
  const BellInequality one(2, {{SignPattern::parse("++"), Rational(1, 4)}});
  const SettingSet zz({{{0, 0, 1}, {0, 0, 1}}, {{0, 0, 1}, {0, 0, 1}}});
  const std::vector<int> plus{1};
  const auto out = bell_operator_apply(one, zz, plus, PureState::basis(2, 0).amplitudes());
  CHECK(std::abs(out[0] - Complex(1.0)) < 1e-12);
  for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(out[i]) < 1e-12);

  std::mt19937_64 rng(4);
  const auto ineq = catalog_entry("n3-complete").inequality();
  const SettingSet settings({{{0.6, 0, 0.8}, {0, 1, 0}}, {{1, 0, 0}, {0, 0.6, 0.8}}, {{0, 0, 1}, {0.8, 0.6, 0}}});
  const std::vector<int> signs{1, -1, 1, 1, -1};
  const auto u = PureState::random(3, rng);
  const auto v = PureState::random(3, rng);
  Amplitudes sum(8);
  for (std::size_t i = 0; i < 8; ++i) sum[i] = u.amplitudes()[i] + v.amplitudes()[i];
  const auto au = bell_operator_apply(ineq, settings, signs, u.amplitudes());
  const auto av = bell_operator_apply(ineq, settings, signs, v.amplitudes());
  const auto as = bell_operator_apply(ineq, settings, signs, sum);
  const Eigen::MatrixXcd dense = oracle::dense_bell_operator(ineq, settings, signs);
  const Eigen::Map<const Eigen::VectorXcd> x(u.amplitudes().data(), 8);
  const Eigen::VectorXcd dx = dense * x;
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(std::abs(as[i] - au[i] - av[i]) < 1e-12);
    CHECK(std::abs(au[i] - dx[static_cast<Eigen::Index>(i)]) < 1e-10);
  }
}

TEST_CASE("bell values") {
  const auto chsh = catalog_entry("chsh").inequality();
  // Optimal singlet settings: A at z/x, B at the diagonals.
  const double r = 1.0 / std::sqrt(2.0);
  const SettingSet opt({{{0, 0, 1}, {1, 0, 0}}, {{-r, 0, -r}, {r, 0, -r}}});
  CHECK(bell_value(chsh, singlet(), opt) == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-12));
  CHECK(algebraic_ceiling(chsh) == doctest::Approx(8.0));
  const CorrelationTable table(singlet(), {0, 1, 3});
  CHECK(bell_value(chsh, table, opt) == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-12));
}

TEST_CASE("largest eigenvalue") {
  const auto chsh = catalog_entry("chsh").inequality();
  const double r = 1.0 / std::sqrt(2.0);
  const SettingSet opt({{{0, 0, 1}, {1, 0, 0}}, {{r, 0, r}, {-r, 0, r}}});
  const auto e = max_eigenvalue(chsh, opt);
  CHECK(e.value == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-9));
  CHECK(e.value == doctest::Approx(oracle::dense_max_eigenvalue(chsh, opt)).epsilon(1e-9));
  CHECK(bell_value(chsh, e.state, opt) == doctest::Approx(e.value).epsilon(1e-9));

  const auto n5 = catalog_entry("n5-b").inequality();
  const std::vector<double> phis(5, std::numbers::pi / 4);
  const auto e5 = max_eigenvalue(n5, settings_from_angles(phis));
  CHECK(e5.value == doctest::Approx(1.97435).epsilon(1e-3 / 1.97435));

  // A product state never beats the eigen-search.
  std::mt19937_64 rng(9);
  const auto settings = settings_from_angles(std::vector<double>{0.3, 1.1, 0.7});
  const auto n3 = catalog_entry("n3-complete").inequality();
  const auto best = max_eigenvalue(n3, settings);
  for (int i = 0; i < 20; ++i) CHECK(bell_value(n3, PureState::random(3, rng), settings) <= best.value + 1e-9);
  CHECK(best.value == doctest::Approx(oracle::dense_max_eigenvalue(n3, settings)).epsilon(1e-9));
}

TEST_CASE("NOT map") {
  const auto flipped = not_map(PureState::basis(1, 0));
  CHECK(std::abs(flipped.amplitude(1)) == doctest::Approx(1.0));
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 4; ++n) {
    const auto psi = PureState::random(n, rng);
    const auto f = not_map(psi);
    std::vector<int> idx(n);
    for (int code = 0; code < (1 << (2 * n)); ++code) {
      int w = 0;
      for (int j = 0; j < n; ++j) {
        idx[j] = (code >> (2 * j)) & 3;
        w += idx[j] != 0;
      }
      REQUIRE(std::abs(correlation_tensor(f, idx) - (w % 2 ? -1 : 1) * correlation_tensor(psi, idx)) < 1e-10);
    }
  }
}

TEST_CASE("NOT mixture of the printed state is globally uncorrelated") {
  const auto rho = not_mixture(printed_state());
  std::vector<int> idx(5);
  for (int code = 0; code < 243; ++code) {
    int rest = code;
    for (int j = 0; j < 5; ++j, rest /= 3) idx[j] = rest % 3 + 1;
    REQUIRE(std::abs(correlation_tensor(rho, idx)) < 1e-10);
  }
}
