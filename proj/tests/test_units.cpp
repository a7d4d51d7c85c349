#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dbclock/units.hpp"

using namespace dbclock::units;

TEST_CASE("constants carry the fixed reference values") {
  const auto k = constants();
  CHECK(k.hbar_c == 197.3269804);
  CHECK(k.c == 2.99792458e23);
  CHECK(k.electron_rest_energy_paper == 0.511);
  CHECK(std::abs(k.hbar / 6.582119569e-22 - 1.0) < 1e-9);
}

TEST_CASE("hbar is exactly hbar_c / c") {
  const auto k = constants();
  CHECK(std::abs(k.hbar * k.c / k.hbar_c - 1.0) < 1e-15);
}

TEST_CASE("unit scales are internally consistent") {
  const auto k = constants();
  for (double e0 : {0.511, 1.0, 938.272, 1e-3, 2.5e4}) {
    const UnitScale s = scale_from_energy(e0);
    CHECK(std::abs(s.time_unit / (s.length_unit / k.c) - 1.0) < 1e-12);
    CHECK(std::abs(s.energy_unit * s.time_unit / k.hbar - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(scale_from_energy(0.0), std::invalid_argument);
  CHECK_THROWS_AS(scale_from_energy(-1.0), std::invalid_argument);
}

TEST_CASE("convert divides into natural units and multiplies back") {
  const UnitScale s = scale_from_energy(0.511);
  CHECK(convert(1.0, Quantity::Energy, Direction::ToNatural, s) == Catch::Approx(1.0 / 0.511).epsilon(1e-15));
  CHECK(convert(1.0, Quantity::Energy, Direction::ToNatural, s) == Catch::Approx(1.9569).epsilon(1e-4));
  CHECK(convert(0.0, Quantity::Length, Direction::ToNatural, s) == 0.0);
  CHECK_THROWS_AS(convert(std::nan(""), Quantity::Time, Direction::ToHep, s), std::invalid_argument);
  CHECK_THROWS_AS(convert(INFINITY, Quantity::Energy, Direction::ToNatural, s), std::invalid_argument);
}

TEST_CASE("round-trip conversion is the identity over twelve decades") {
  std::mt19937 rng(20260810);
  std::uniform_real_distribution<double> log_value(-6.0, 6.0);
  std::uniform_real_distribution<double> log_anchor(-2.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const UnitScale s = scale_from_energy(std::pow(10.0, log_anchor(rng)));
    const double v = std::pow(10.0, log_value(rng));
    for (Quantity q : {Quantity::Energy, Quantity::Length, Quantity::Time}) {
      const double back = convert(convert(v, q, Direction::ToNatural, s), q, Direction::ToHep, s);
      REQUIRE(std::abs(back / v - 1.0) < 1e-14);
    }
  }
}
