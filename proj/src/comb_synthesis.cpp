#include "afc/comb_synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "afc/analysis.hpp"
#include "afc/diagnostics.hpp"

namespace afc {
namespace {

void check_comb_args(double spacing, double finesse, double height, double background) {
  if (!(spacing > 0.0)) throw std::invalid_argument("comb spacing must be positive");
  if (!(finesse > 1.0)) throw std::invalid_argument("comb finesse must exceed 1");
  if (!(height >= 0.0) || !(background >= 0.0)) throw std::invalid_argument("comb optical depths must be non-negative");
}

}  // namespace

InhomogeneousProfile square_tooth_comb(const SpectralGrid& grid, double spacing, double finesse, double tooth_od,
                                       double background_od, double offset, double length_m) {
  check_comb_args(spacing, finesse, tooth_od, background_od);
  const double width = spacing / finesse;
  const double df = grid.df();
  std::vector<double> od(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double lo = grid.frequency(k) - 0.5 * df;
    const double hi = lo + df;
    double covered = 0.0;
    const auto n_lo = static_cast<long long>(std::floor((lo - offset - 0.5 * width) / spacing));
    const auto n_hi = static_cast<long long>(std::ceil((hi - offset + 0.5 * width) / spacing));
    for (long long n = n_lo; n <= n_hi; ++n) {
      const double c = offset + static_cast<double>(n) * spacing;
      covered += std::max(0.0, std::min(hi, c + 0.5 * width) - std::max(lo, c - 0.5 * width));
    }
    od[k] = background_od + tooth_od * std::min(1.0, covered / df);
  }
  return InhomogeneousProfile(grid, std::move(od), length_m);
}

double shaped_comb_exponent(double finesse) {
  const double c = std::cos(std::numbers::pi / (2.0 * finesse));
  return 2.0 * std::log(0.5) / std::log(c * c);
}

InhomogeneousProfile shaped_comb(const SpectralGrid& grid, double spacing, double finesse, double contrast,
                                 double background_od, double offset, double length_m) {
  check_comb_args(spacing, finesse, contrast, background_od);
  const double power = shaped_comb_exponent(finesse);
  std::vector<double> od(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = grid.frequency(k) - offset;
    const double c = std::abs(std::cos(std::numbers::pi * x / spacing));
    od[k] = background_od + contrast * std::pow(c, power);
  }
  return InhomogeneousProfile(grid, std::move(od), length_m);
}

ShapedCombParameters calibrate_shaped_comb(const SpectralGrid& grid, double spacing, const IonParameters& ions,
                                           double observed_finesse, double observed_contrast,
                                           double observed_background, double window_lo, double window_hi) {
  if (!(observed_finesse > 1.0)) throw std::invalid_argument("observed finesse must exceed 1");
  if (!(observed_contrast > 0.0) || !(observed_background >= 0.0))
    throw std::invalid_argument("observed contrast must be positive and background non-negative");
  const auto freqs = grid.frequencies();
  // Observed absorption is linear in contrast and background, so only the raw finesse
  // needs a search; unit contrast on zero background fixes the other two afterwards.
  auto observe = [&](double raw_finesse) {
    const auto depth = complex_depth(shaped_comb(grid, spacing, raw_finesse, 1.0, 0.0), ions);
    return analyze_comb(freqs, depth.absorption(), window_lo, window_hi);
  };
  double lo = 1.02;
  double hi = 60.0;
  const double f_lo = observe(lo).finesse;
  const double f_hi = observe(hi).finesse;
  if (observed_finesse < f_lo || observed_finesse > f_hi)
    throw UnreachableTargetError("observed finesse " + std::to_string(observed_finesse) +
                                     " is outside what homogeneous broadening allows at this spacing",
                                 f_hi);
  for (int iter = 0; iter < 80 && hi - lo > 1e-9 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (observe(mid).finesse < observed_finesse ? lo : hi) = mid;
  }
  ShapedCombParameters p;
  p.finesse = 0.5 * (lo + hi);
  const auto unit = observe(p.finesse);
  p.contrast = observed_contrast / unit.od_contrast;
  p.background_od = observed_background - p.contrast * unit.background_od;
  if (p.background_od < 0.0)
    throw UnreachableTargetError("observed background OD " + std::to_string(observed_background) +
                                     " is below the broadened tooth floor",
                                 p.contrast * unit.background_od);
  return p;
}

}  // namespace afc
