#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "afc/analysis.hpp"
#include "afc/comb_synthesis.hpp"
#include "afc/device.hpp"
#include "afc/diagnostics.hpp"
#include "afc/memory.hpp"
#include "afc/storage_scan.hpp"
#include "oracles.hpp"

using namespace afc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const IonParameters kIons(707.4e-9, 100e-6);

FieldTrace probe(double duration = 10e-9, double dt = 0.5e-9, double rabi = 1e6) {
  return envelope(probe_pulse(duration, 0.0, rabi), dt);
}

}  // namespace

TEST_CASE("Beer-Lambert on a flat profile") {
  const auto grid = make_grid(400e6, 16384);
  const auto out = transmit(flat_profile(grid, 1.0, 0.8e-3), kIons, probe());
  CHECK_THAT(out.energy() / probe().energy(), WithinAbs(std::exp(-1.0), 1e-6));
}

TEST_CASE("zero OD is the identity") {
  const auto grid = make_grid(400e6, 4096);
  const auto in = probe();
  const auto out = transmit(flat_profile(grid, 0.0, 0.8e-3), kIons, in);
  for (std::size_t n = 0; n < out.size(); ++n) {
    const auto expected = n < in.size() ? in.samples[n] : std::complex<double>{};
    REQUIRE(std::abs(out.samples[n] - expected) < 1e-12 * 1e6);
  }
}

TEST_CASE("transmit agrees with a direct circular convolution") {
  // dt = 1/span puts every FFT bin on a grid point, so no interpolation enters.
  const auto grid = make_grid(128e6, 128);
  const auto comb = square_tooth_comb(grid, 8e6, 2.5, 1.5, 0.1);
  const IonParameters ions(0.5e-6, 1e-4);
  const auto depth = complex_depth(comb, ions);

  std::vector<std::complex<double>> x(128);
  for (std::size_t n = 2; n < 6; ++n) x[n] = 1.0;
  const FieldTrace in(1.0 / grid.span(), 0.0, x);
  const auto out = transmit(depth, in);

  std::vector<std::complex<double>> h(128);
  for (std::size_t j = 0; j < 128; ++j) {
    const std::size_t k = j < 64 ? j + 64 : j - 64;  // bin j sits at grid point k
    h[j] = std::exp(-0.5 * depth.depth[k]);
  }
  const auto ref = oracle::filter_direct(x, h);
  for (std::size_t n = 0; n < 128; ++n) REQUIRE(std::abs(out.samples[n] - ref[n]) < 1e-10);
}

TEST_CASE("comb echo is causal and delayed by 1/spacing") {
  // The grid has to hold the whole probe spectrum; outside it the depth is clamped and the
  // kink at the window edge rings on both sides of t = 0.
  const auto grid = make_grid(1600e6, 65536);
  const auto comb = square_tooth_comb(grid, 10e6, 3.0, 3.0, 0.0);
  const auto in = envelope(probe_pulse(10e-9, 0.0, 1e6, PulseShape::square_with_rise), 0.5e-9);
  const auto out = transmit(comb, kIons, in);
  const double before = out.energy_between(out.t0 + out.duration() - 150e-9, out.t0 + out.duration());
  const double after = out.energy_between(80e-9, 130e-9);
  CHECK(after > 1e3 * before);
}

TEST_CASE("passivity across random combs") {
  const auto grid = make_grid(400e6, 8192);
  for (double F : {1.5, 2.0, 4.0}) {
    for (double d : {0.2, 1.0, 5.0}) {
      const auto out = transmit(square_tooth_comb(grid, 7e6, F, d, 0.3), kIons, probe());
      REQUIRE(out.energy() <= probe().energy() * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("input longer than 1/df is rejected") {
  const auto grid = make_grid(400e6, 256);  // 1/df = 640 ns
  CHECK_THROWS_AS(transmit(flat_profile(grid, 1.0, 0.0), kIons, probe(1e-6, 1e-9)), std::invalid_argument);
}

TEST_CASE("echo delay follows the comb spacing") {
  const auto grid = make_grid(400e6, 16384);
  for (double spacing : {4e6, 5e6, 6.3e6, 7.7e6, 11e6}) {
    const auto r = store_recall(shaped_comb(grid, spacing, 1.7, 0.8, 0.3), kIons, probe());
    INFO("spacing " << spacing);
    REQUIRE(r.echo_detected);
    CHECK(std::abs(r.echo_time - 1.0 / spacing) < 10e-9);
    CHECK(r.efficiency > 0.0);
    CHECK(r.efficiency < r.transmitted_fraction);
  }
}

TEST_CASE("no comb, no echo") {
  const auto grid = make_grid(400e6, 8192);
  const auto r = store_recall(flat_profile(grid, 1.0, 0.0), kIons, probe());
  CHECK_FALSE(r.echo_detected);
  CHECK(r.efficiency == 0.0);
}

TEST_CASE("strong input is flagged") {
  const auto grid = make_grid(400e6, 8192);
  int warnings = 0;
  ScopedWarningSink sink([&](std::string_view) { ++warnings; });
  store_recall(square_tooth_comb(grid, 10e6, 3.0, 1.0, 0.0), kIons, probe(10e-9, 0.5e-9, 1e8));
  CHECK(warnings == 1);
}

TEST_CASE("efficiency agrees with the square-tooth formula") {
  const auto grid = make_grid(819.2e6, 65536);
  const IonParameters narrow(12e-6, 1e-3);
  const auto in = envelope(probe_pulse(10e-9, 0.0, 1e6, PulseShape::square_with_rise), 0.5e-9);
  for (double F : {2.0, 3.0, 5.0}) {
    for (double d : {0.5, 1.0, 2.0}) {
      const auto r = store_recall(square_tooth_comb(grid, 10e6, F, d, 0.0), narrow, in, 100e-9);
      INFO("F=" << F << " d=" << d);
      CHECK_THAT(r.efficiency, WithinRel(afc_efficiency_analytic(d, F, 0.0), 0.15));
    }
  }
}

TEST_CASE("burn leaves unexposed classes alone and saturates at the cap") {
  const auto grid = make_grid(400e6, 4096);
  const auto flat = flat_profile(grid, 1.0, 0.8e-3);
  std::vector<double> density(grid.size(), 0.0);
  density[100] = 1.0;
  BurnModel m;
  m.kappa = 50.0;
  m.hole_depth_cap = 0.8;
  const auto burned = burn(flat, density, m);
  CHECK(burned.od()[99] == 1.0);
  CHECK_THAT(burned.od()[100], WithinAbs(0.2, 1e-12));
  m.kappa = 0.0;
  CHECK(burn(flat, density, m).od()[100] == 1.0);
}

TEST_CASE("time-domain burn density equals the smoothed spectrum for short trains") {
  // Inside 1/df the folded spectrum is exact, so both routes must agree.
  const auto grid = make_grid(400e6, 16384);
  BurnConfig cfg;
  cfg.n_pairs = 3;
  cfg.pair_wait = 2e-6;
  const auto seq = afc_burn_sequence(cfg);
  const auto direct = burn_density(seq, grid, kIons.gamma_h());
  const auto folded = burn_density(power_spectrum(seq, grid), kIons.gamma_h());
  std::vector<double> a(direct.begin(), direct.end()), b(folded.begin(), folded.end());
  CHECK(oracle::relative_l2(a, b) < 5e-3);
}

TEST_CASE("long trains do not alias") {
  // 150 pairs span 450 us >> 1/df; the ions forget each pair, so the density is the
  // single-pair fringe pattern with spacing 1/T.
  const auto grid = make_grid(400e6, 16384);
  BurnConfig cfg;
  const auto density = burn_density(afc_burn_sequence(cfg), grid, kIons.gamma_h());
  cfg.n_pairs = 1;
  const auto single = burn_density(afc_burn_sequence(cfg), grid, kIons.gamma_h());
  CHECK(oracle::relative_l2(density, single) < 0.05);
}

TEST_CASE("calibrated burn hits the target contrast") {
  const auto grid = make_grid(400e6, 16384);
  const auto flat = flat_profile(grid, 1.0, 0.8e-3);
  const auto density = burn_density(afc_burn_sequence(BurnConfig{}), grid, kIons.gamma_h());
  CalibrationOptions opt;
  opt.ions = kIons;
  const auto model = calibrate_burn(flat, density, 0.23, opt);
  const auto absorption = observed_absorption(burn(flat, density, model), kIons);
  const auto comb = analyze_comb(grid.frequencies(), absorption, -25e6, 25e6);
  CHECK_THAT(comb.od_contrast, WithinAbs(0.23, 2e-4));
  CHECK_THAT(comb.spacing, WithinRel(1.0 / 130e-9, 0.02));
  CHECK(calibrate_burn(flat, density, 0.0, opt).kappa == 0.0);
}

TEST_CASE("unreachable contrast reports the best achievable") {
  const auto grid = make_grid(400e6, 16384);
  const auto flat = flat_profile(grid, 1.0, 0.8e-3);
  const auto density = burn_density(afc_burn_sequence(BurnConfig{}), grid, kIons.gamma_h());
  CalibrationOptions opt;
  opt.ions = kIons;
  opt.hole_depth_cap = 0.1;
  try {
    calibrate_burn(flat, density, 0.5, opt);
    FAIL("expected UnreachableTargetError");
  } catch (const UnreachableTargetError& e) {
    CHECK(e.max_achievable() > 0.0);
    CHECK(e.max_achievable() < 0.5);
  }
}

TEST_CASE("probe scan reads the broadened absorption") {
  const auto grid = make_grid(400e6, 4096);
  const std::vector<double> f = {0.0, 1e6};
  const auto od = probe_scan(flat_profile(grid, 0.7, 0.0), kIons, f, 0.0);
  CHECK_THAT(od[0], WithinAbs(0.7, 1e-12));
  const auto wide = probe_scan(flat_profile(grid, 0.7, 0.0), kIons, f, 1e6);
  CHECK_THAT(wide[1], WithinAbs(0.7, 1e-12));
  const std::vector<double> outside = {1e9};
  CHECK_THROWS_AS(probe_scan(flat_profile(grid, 0.7, 0.0), kIons, outside), std::invalid_argument);
}

TEST_CASE("storage scan recalls at every programmed time") {
  const auto grid = make_grid(400e6, 16384);
  StorageScanConfig cfg;
  cfg.storage_times = {90e-9, 130e-9, 250e-9};
  cfg.probe = probe_pulse(10e-9, 0.0, 1e6);
  const auto rows = efficiency_vs_storage(flat_profile(grid, 1.0, 0.8e-3), kIons, cfg);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.echo.echo_detected);
    CHECK(std::abs(r.echo.echo_time - r.storage_time) < 10e-9);
    CHECK_THAT(r.comb.spacing, WithinRel(1.0 / r.storage_time, 0.02));
  }
}
