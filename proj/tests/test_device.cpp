#include <catch_amalgamated.hpp>

#include <numbers>

#include "afc/device.hpp"

using namespace afc;
using Catch::Matchers::WithinRel;

TEST_CASE("Rabi anchor and square-root power law") {
  const auto d = DeviceModel::reference();
  CHECK(rabi_from_power(d, 1e-6) == 4.49e7);
  CHECK(rabi_from_power(d, 4e-6) == 2.0 * 4.49e7);
  CHECK(rabi_from_power(d, 0.0) == 0.0);
  CHECK_THAT(power_for_rabi(d, 4.49e7), WithinRel(1e-6, 1e-15));
  CHECK_THAT(rabi_from_power(d, power_for_rabi(d, 1.23e7)), WithinRel(1.23e7, 1e-14));
}

TEST_CASE("larger mode area needs proportionally more power") {
  const auto d = DeviceModel::reference();
  const auto big = d.with_mode_area(1000.0 * d.mode_area());
  CHECK_THAT(power_for_rabi(big, 4.49e7) / power_for_rabi(d, 4.49e7), WithinRel(1000.0, 1e-12));
  CHECK(equal_rabi_power_ratio(70e-12, 0.07e-12) == 70e-12 / 0.07e-12);
  CHECK_THAT(equal_rabi_power_ratio(70e-12, 0.07e-12), WithinRel(1000.0, 1e-12));
}

TEST_CASE("coupling chain") {
  const auto d = DeviceModel::reference();
  CHECK_THAT(in_waveguide_power(d, 1e-3), WithinRel(1e-6, 1e-12));
  CHECK_THAT(end_to_end_transmission(d), WithinRel(1e-6, 1e-12));
  CHECK_THROWS_AS(in_waveguide_power(d, -1.0), std::invalid_argument);
}

TEST_CASE("pulse area bookkeeping") {
  CHECK_THAT(pulse_area(4.49e7, 70e-9), WithinRel(3.143, 1e-3));
  CHECK_THAT(duration_for_area(4.49e7, std::numbers::pi), WithinRel(69.97e-9, 1e-3));
  CHECK_THROWS_AS(duration_for_area(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("device validation") {
  CHECK_THROWS_AS(DeviceModel(0.0, 1e-3, 1e-3, 1e-3, 1e-6, 4.49e7, 7e-14), std::invalid_argument);
  CHECK_THROWS_AS(DeviceModel(7e-14, 1e-3, 0.0, 1e-3, 1e-6, 4.49e7, 7e-14), std::invalid_argument);
  CHECK_THROWS_AS(DeviceModel(7e-14, 1e-3, 1e-3, 2.0, 1e-6, 4.49e7, 7e-14), std::invalid_argument);
}
