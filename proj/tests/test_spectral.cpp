#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <string>

#include "afc/diagnostics.hpp"
#include "afc/spectral.hpp"
#include "oracles.hpp"

using namespace afc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> gaussian_bump(const SpectralGrid& grid, double height, double sigma) {
  std::vector<double> od(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = grid.frequency(k) / sigma;
    od[k] = height * std::exp(-0.5 * x * x);
  }
  return od;
}

}  // namespace

TEST_CASE("grid geometry") {
  const auto g = make_grid(400e6, 16384);
  CHECK(g.df() == 400e6 / 16384);
  CHECK(g.frequency(8192) == 0.0);
  CHECK_THAT(g.position(g.frequency(1234)), WithinAbs(1234.0, 1e-9));
  CHECK(g.frequencies().size() == 16384);
  CHECK_THROWS_AS(make_grid(0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1e6, 1), std::invalid_argument);
  CHECK(default_grid() == g);
}

TEST_CASE("ion parameters") {
  CHECK_THAT(IonParameters(707.4e-9, 1e-4).gamma_h(), WithinRel(450e3, 1e-3));
  CHECK_THROWS_AS(IonParameters(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(IonParameters(1e-6, 0.4e-6), std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(IonParameters(inf, inf).gamma_h() == 0.0);
}

TEST_CASE("profile validation") {
  const auto g = make_grid(1e6, 8);
  CHECK_THROWS_AS(InhomogeneousProfile(g, std::vector<double>(8, -0.1), 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(InhomogeneousProfile(g, std::vector<double>(8, std::nan("")), 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(InhomogeneousProfile(g, std::vector<double>(7, 1.0), 1e-3), std::invalid_argument);
  const auto a = flat_profile(g, 1.0, 1e-3);
  const auto b = flat_profile(g, 0.5, 1e-3);
  CHECK(a.combined(1.0, b, -1.0).od()[3] == 0.5);
  CHECK_THROWS_AS(b.combined(1.0, a, -1.0), std::invalid_argument);
}

TEST_CASE("flat profile stays flat under homogeneous broadening") {
  const auto g = make_grid(400e6, 4096);
  const auto depth = complex_depth(flat_profile(g, 1.0, 0.8e-3), IonParameters(707e-9, 1e-4));
  for (const auto& d : depth.depth) {
    REQUIRE_THAT(d.real(), WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(d.imag(), WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("complex depth matches a direct Lorentzian sum") {
  const auto g = make_grid(200e6, 2048);
  const auto od = gaussian_bump(g, 2.0, 5e6);
  const IonParameters ions(1.0 / (std::numbers::pi * 1e6), 1e-3);
  const auto depth = complex_depth(InhomogeneousProfile(g, od, 1e-3), ions);
  const auto ref = oracle::lorentzian_direct(od, g, ions.gamma_h());
  double peak = 0.0;
  for (const auto& r : ref) peak = std::max(peak, std::abs(r));
  for (std::size_t k = 0; k < ref.size(); ++k) {
    REQUIRE_THAT(depth.depth[k].real(), WithinAbs(ref[k].real(), 2e-3 * peak));
    REQUIRE_THAT(depth.depth[k].imag(), WithinAbs(ref[k].imag(), 2e-3 * peak));
  }
}

TEST_CASE("dispersion is minus the Hilbert transform of absorption") {
  const auto g = make_grid(200e6, 2048);
  auto od = gaussian_bump(g, 1.0, 4e6);
  // two bumps, asymmetric
  const auto second = gaussian_bump(g, 0.5, 2e6);
  for (std::size_t k = 0; k + 300 < g.size(); ++k) od[k + 300] += second[k];
  const auto depth = complex_depth(InhomogeneousProfile(g, od, 1e-3), IonParameters(700e-9, 1e-4));
  const auto re = depth.absorption();
  auto h = oracle::hilbert_pv(re, g);
  for (auto& x : h) x = -x;
  CHECK(oracle::relative_l2(depth.dispersion(), h) < 0.01);
}

TEST_CASE("narrow homogeneous line on a coarse grid warns") {
  const auto g = make_grid(400e6, 1024);
  std::vector<std::string> seen;
  ScopedWarningSink sink([&](std::string_view m) { seen.emplace_back(m); });
  complex_depth(flat_profile(g, 1.0, 1e-3), IonParameters(700e-9, 1e-4));
  CHECK(seen.size() == 1);
}

TEST_CASE("interpolation is linear and clamps at the edges") {
  const auto g = make_grid(4.0, 4);  // -2, -1, 0, 1
  const std::vector<double> v = {0.0, 10.0, 20.0, 30.0};
  const std::span<const double> s(v);
  CHECK(interpolate(s, g, -0.5) == 15.0);
  CHECK(interpolate(s, g, -5.0) == 0.0);
  CHECK(interpolate(s, g, 7.0) == 30.0);
}
