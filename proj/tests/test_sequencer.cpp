#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "afc/analysis.hpp"
#include "afc/device.hpp"
#include "afc/diagnostics.hpp"
#include "afc/sequencer.hpp"
#include "oracles.hpp"

using namespace afc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Pulse square(double t0, double d, double rabi, double carrier = 0.0, double phase = 0.0) {
  Pulse p;
  p.t_start = t0;
  p.duration = d;
  p.peak_rabi = rabi;
  p.carrier_offset = carrier;
  p.phase = phase;
  return p;
}

Sequence pair(double T, double d = 10e-9) { return Sequence({square(0.0, d, 1.0), square(T, d, 1.0)}, T + d); }

}  // namespace

TEST_CASE("sequence validation") {
  CHECK_THROWS_AS(Sequence({square(0.0, 10e-9, 1.0), square(5e-9, 10e-9, 1.0)}, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(Sequence({square(50e-9, 10e-9, 1.0), square(0.0, 10e-9, 1.0)}, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(Sequence({square(0.0, 10e-9, 1.0)}, 5e-9), std::invalid_argument);
  CHECK_THROWS_AS(Sequence({square(0.0, 0.0, 1.0)}, 1e-6), std::invalid_argument);
}

TEST_CASE("echo sequence layout") {
  const auto s = echo_sequence(35e-9, 70e-9, 300e-9, 4.49e7);
  REQUIRE(s.pulses().size() == 2);
  CHECK(s.pulses()[1].t_start == 300e-9);
  CHECK(s.t_end() == 370e-9);
  CHECK(echo_sequence(35e-9, 0.0, 300e-9, 4.49e7).pulses().size() == 1);
  CHECK_THROWS_AS(echo_sequence(35e-9, 70e-9, 100e-9, 4.49e7), std::invalid_argument);
}

TEST_CASE("rise-shaped pulse edges") {
  Pulse p = square(0.0, 20e-9, 2.0);
  p.shape = PulseShape::square_with_rise;
  p.rise_time = 4e-9;
  CHECK(p.magnitude(0.0) == 0.0);
  CHECK_THAT(p.magnitude(2e-9), WithinAbs(1.0, 1e-12));
  CHECK(p.magnitude(10e-9) == 2.0);
  CHECK(p.magnitude(20e-9) == 0.0);
}

TEST_CASE("burn train structure") {
  BurnConfig cfg;
  const auto device = DeviceModel::reference();
  const auto seq = afc_burn_sequence(cfg, device);
  REQUIRE(seq.pulses().size() == 300);
  CHECK(seq.pulses()[1].t_start == 130e-9);
  CHECK(seq.pulses()[2].t_start == 3e-6);
  CHECK(seq.t_end() == 150 * 3e-6);
  CHECK(seq.pulses()[0].peak_rabi == rabi_from_power(device, 0.5e-6));
  for (const auto& p : seq.pulses()) REQUIRE(p.phase == 0.0);

  cfg.pair_phase = PairPhase::randomized;
  cfg.seed = 7;
  const auto a = afc_burn_sequence(cfg, device);
  const auto b = afc_burn_sequence(cfg, device);
  cfg.seed = 8;
  const auto c = afc_burn_sequence(cfg, device);
  CHECK(a.pulses()[4].phase == b.pulses()[4].phase);
  CHECK(a.pulses()[4].phase == a.pulses()[5].phase);  // both pulses of a pair share a phase
  CHECK(a.pulses()[4].phase != c.pulses()[4].phase);
}

TEST_CASE("short pair wait warns") {
  BurnConfig cfg;
  cfg.pair_wait = 500e-9;
  int warnings = 0;
  ScopedWarningSink sink([&](std::string_view) { ++warnings; });
  cfg.validate();
  CHECK(warnings == 1);
}

TEST_CASE("envelope sampling") {
  const Sequence s({square(10e-9, 10e-9, 3.0)}, 40e-9);
  const auto e = envelope(s, 1e-9);
  CHECK(e.size() == 40);
  CHECK_THAT(e.energy(), WithinRel(9.0 * 10e-9, 1e-12));
  CHECK_THROWS_AS(envelope(s, 2e-9), std::invalid_argument);
}

TEST_CASE("power spectrum matches a brute-force DFT") {
  const auto grid = make_grid(1e9, 512);
  const Sequence s({square(20e-9, 10e-9, 2.0, 3e6, 0.4), square(150e-9, 10e-9, 1.5, 3e6, 1.1)}, 200e-9);
  const auto spec = power_spectrum(s, grid);
  for (std::size_t k = 0; k < grid.size(); k += 7) {
    const auto ref = oracle::square_train_dft(s, 1e-9, grid.frequency(k));
    REQUIRE_THAT(std::abs(spec.amplitude[k] - ref), WithinAbs(0.0, 1e-12 * 40e-9));
  }
}

TEST_CASE("Parseval holds when the train fits in 1/df") {
  const auto grid = make_grid(1e9, 1024);
  const auto s = pair(130e-9);
  const auto spec = power_spectrum(s, grid);
  CHECK_THAT(spec.total_power(), WithinRel(envelope(s, 1e-9).energy(), 1e-12));
}

TEST_CASE("spectrum is covariant under a time shift") {
  const auto grid = make_grid(400e6, 4096);
  const auto a = power_spectrum(pair(130e-9), grid).power();
  const auto b = power_spectrum(pair(130e-9).shifted(1e-6), grid).power();
  for (std::size_t k = 0; k < a.size(); ++k) REQUIRE_THAT(b[k], WithinAbs(a[k], 1e-9 * a[grid.size() / 2]));
}

TEST_CASE("pulse-pair fringes are spaced by 1/T") {
  const auto grid = make_grid(400e6, 16384);
  for (double T : {90e-9, 130e-9, 158.7e-9, 250e-9}) {
    const auto spec = power_spectrum(pair(T), grid);
    const double spacing = fringe_spacing(grid.frequencies(), spec.power(), -25e6, 25e6);
    INFO("T = " << T);
    CHECK(std::abs(spacing - 1.0 / T) <= grid.df());
  }
}

TEST_CASE("fringe law holds for separations off the sample grid") {
  const auto grid = make_grid(400e6, 16384);
  for (double T : {90.4e-9, 101.3e-9, 137e-9, 158.7e-9, 211.1e-9}) {
    const auto spec = power_spectrum(pair(T), grid);
    INFO("T = " << T);
    CHECK(std::abs(fringe_spacing(grid.frequencies(), spec.power(), -25e6, 25e6) - 1.0 / T) < 0.1 * grid.df());
  }
}

TEST_CASE("sub-sample shift is a pure phase ramp") {
  const auto grid = make_grid(400e6, 4096);
  const auto a = power_spectrum(pair(130e-9), grid);
  const double shift = 0.37e-9;
  const auto b = power_spectrum(pair(130e-9).shifted(shift), grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto expected = a.amplitude[k] * std::polar(1.0, -2.0 * std::numbers::pi * grid.frequency(k) * shift);
    REQUIRE(std::abs(b.amplitude[k] - expected) < 1e-9 * std::abs(a.amplitude[grid.size() / 2]));
  }
}

TEST_CASE("narrow grid is rejected, marginal grid warns") {
  const auto s = pair(130e-9);
  CHECK_THROWS_AS(power_spectrum(s, make_grid(50e6, 64)), std::invalid_argument);
  int warnings = 0;
  ScopedWarningSink sink([&](std::string_view) { ++warnings; });
  power_spectrum(s, make_grid(150e6, 1024));
  CHECK(warnings == 1);
}

TEST_CASE("AOM response") {
  CHECK(aom_power_transmission(5e6, 50e6, 5e6) == 1.0);
  CHECK_THAT(aom_power_transmission(30e6, 50e6, 5e6), WithinRel(0.5, 1e-12));
  const auto grid = make_grid(400e6, 4096);
  const auto spec = power_spectrum(pair(130e-9), grid);
  const auto filtered = aom_filter(spec, 50e6, 0.0);
  const auto k = static_cast<std::size_t>(grid.position(25e6) + 0.5);
  CHECK_THAT(filtered.power()[k], WithinRel(0.5 * spec.power()[k], 1e-9));
  CHECK_THROWS_AS(aom_filter(spec, 0.0, 0.0), std::invalid_argument);
}
