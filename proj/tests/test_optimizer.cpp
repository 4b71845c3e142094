#include <cmath>
#include <numbers>

#include "doctest.h"

#include "bellforge/builder.hpp"
#include "bellforge/catalog.hpp"
#include "bellforge/optimizer.hpp"

using namespace bellforge;

namespace {

const double kTsirelson = 2.0 * std::numbers::sqrt2;

PureState singlet() { return PureState(2, {0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0}); }

}  // namespace

TEST_CASE("mirror settings") {
  const auto at = [](double phi) { return settings_from_angles(std::vector<double>{phi}).party(0); };
  CHECK(at(0).first == Direction{0, 0, 1});
  CHECK(at(0).second == Direction{0, 0, 1});
  CHECK(at(std::numbers::pi / 2).first[0] == doctest::Approx(1.0));
  CHECK(at(std::numbers::pi / 2).second[0] == doctest::Approx(-1.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(at(std::numbers::pi / 4).first[0] == doctest::Approx(r));
  CHECK(at(std::numbers::pi / 4).first[2] == doctest::Approx(r));
  CHECK(at(std::numbers::pi / 4).second[0] == doctest::Approx(-r));
}

TEST_CASE("symmetric scan") {
  const auto r = scan_symmetric(catalog_entry("n5-b").inequality());
  CHECK(r.phi == doctest::Approx(std::numbers::pi / 4).epsilon(1e-3));
  CHECK(std::abs(r.value - 1.97435) < 1e-3);
  const auto c = scan_symmetric(catalog_entry("chsh").inequality());
  CHECK(std::abs(c.value - kTsirelson) < 1e-6);
  CHECK_THROWS_AS(scan_symmetric(catalog_entry("chsh").inequality(), {.grid_points = 2}), InvalidConfig);
}

TEST_CASE("see-saw") {
  const auto r = see_saw(catalog_entry("chsh").inequality(), {.restarts = 16});
  CHECK(std::abs(r.value - kTsirelson) < 1e-6);
  for (std::size_t i = 1; i < r.trajectory.size(); ++i) CHECK(r.trajectory[i] >= r.trajectory[i - 1] - 1e-12);

  const auto again = see_saw(catalog_entry("chsh").inequality(), {.restarts = 16});
  CHECK(again.value == r.value);
  CHECK(again.trajectory == r.trajectory);

  const auto pairwise = see_saw(catalog_entry("n3-pairwise").inequality(), {.restarts = 8});
  CHECK(pairwise.value <= 1.0 + 1e-6);
}

TEST_CASE("fixed-state optimization") {
  const auto chsh = catalog_entry("chsh").inequality();
  const std::vector<double> init(4, 0.3);
  const auto r = fixed_state_optimize(chsh, singlet(), init);
  CHECK(std::abs(r.value - kTsirelson) < 1e-5);

  GeneratorConfig cfg;
  cfg.n = 5;
  const auto built = generate_cp_set(cfg).inequality;
  const auto product = fixed_state_optimize_restarts(built, PureState::basis(5, 0), 4, 0);
  CHECK(product.value <= 1.0 + 1e-6);

  CHECK_THROWS_AS(fixed_state_optimize(chsh, singlet(), std::vector<double>{0.1}), InvalidConfig);
  CHECK_THROWS_AS(fixed_state_optimize(chsh, PureState::basis(3, 0), init), DimensionMismatch);
}

TEST_CASE("ceiling guard") {
  const auto chsh = catalog_entry("chsh").inequality();
  CHECK_NOTHROW(assert_below_ceiling(chsh, 8.0));
  CHECK_THROWS_AS(assert_below_ceiling(chsh, 8.1), std::logic_error);
}
