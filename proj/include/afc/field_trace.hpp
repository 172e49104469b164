#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace afc {

/// Complex field envelope sampled at t0 + n*dt. With samples in sqrt(W),
/// sum |s|^2 dt is the pulse energy.
struct FieldTrace {
  double dt = 0.0;
  double t0 = 0.0;
  std::vector<std::complex<double>> samples;

  FieldTrace() = default;
  FieldTrace(double dt_s, double t0_s, std::vector<std::complex<double>> values);

  std::size_t size() const noexcept { return samples.size(); }
  double time(std::size_t n) const noexcept { return t0 + static_cast<double>(n) * dt; }
  double duration() const noexcept { return static_cast<double>(samples.size()) * dt; }

  double energy() const;
  // Energy of samples with time in [t_lo, t_hi].
  double energy_between(double t_lo, double t_hi) const;
  // Energy-weighted mean time over [t_lo, t_hi].
  double centroid_between(double t_lo, double t_hi) const;
  double peak_power() const;
  // Width of the region where |s|^2 >= half the peak (first to last crossing sample).
  double fwhm() const;

  FieldTrace scaled(std::complex<double> factor) const;
};

}  // namespace afc
