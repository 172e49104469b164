#include "afc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "afc/diagnostics.hpp"
#include "afc/fft.hpp"

namespace afc {

SpectralGrid::SpectralGrid(double span_hz, std::size_t n_points) : span_(span_hz), n_(n_points) {
  if (!(span_hz > 0.0) || !std::isfinite(span_hz))
    throw std::invalid_argument("grid span must be positive and finite");
  if (n_points < 2) throw std::invalid_argument("grid needs at least 2 points");
}

std::vector<double> SpectralGrid::frequencies() const {
  std::vector<double> f(n_);
  for (std::size_t k = 0; k < n_; ++k) f[k] = frequency(k);
  return f;
}

SpectralGrid make_grid(double span_hz, std::size_t n_points) { return SpectralGrid(span_hz, n_points); }

SpectralGrid default_grid() { return SpectralGrid(400e6, std::size_t{1} << 14); }

IonParameters::IonParameters(double t2_s, double t1_s) : t2_(t2_s), t1_(t1_s) {
  if (!(t2_s > 0.0)) throw std::invalid_argument("ion t2 must be positive");
  if (!(t1_s >= t2_s / 2.0)) throw std::invalid_argument("ion t1 must be at least t2/2");
}

double IonParameters::gamma_h() const noexcept { return 1.0 / (std::numbers::pi * t2_); }

InhomogeneousProfile::InhomogeneousProfile(SpectralGrid grid, std::vector<double> od_density,
                                           double length_m)
    : grid_(grid), od_(std::move(od_density)), length_(length_m) {
  if (od_.size() != grid_.size()) throw std::invalid_argument("profile size does not match grid");
  for (double v : od_) {
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("profile optical depth must be finite and non-negative");
  }
  if (!(length_m >= 0.0)) throw std::invalid_argument("profile length must be non-negative");
}

InhomogeneousProfile InhomogeneousProfile::combined(double a, const InhomogeneousProfile& other,
                                                    double b) const {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("profile grids differ");
  std::vector<double> out(od_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a * od_[k] + b * other.od_[k];
  return InhomogeneousProfile(grid_, std::move(out), length_);
}

InhomogeneousProfile flat_profile(const SpectralGrid& grid, double od, double length_m) {
  if (!(od >= 0.0)) throw std::invalid_argument("flat profile optical depth must be non-negative");
  return InhomogeneousProfile(grid, std::vector<double>(grid.size(), od), length_m);
}

std::vector<double> ComplexDepthSpectrum::absorption() const {
  std::vector<double> out(depth.size());
  std::transform(depth.begin(), depth.end(), out.begin(), [](auto z) { return z.real(); });
  return out;
}

std::vector<double> ComplexDepthSpectrum::dispersion() const {
  std::vector<double> out(depth.size());
  std::transform(depth.begin(), depth.end(), out.begin(), [](auto z) { return z.imag(); });
  return out;
}

std::vector<std::complex<double>> lorentzian_convolve(std::span<const double> values,
                                                      const SpectralGrid& grid, double fwhm_hz) {
  if (!(fwhm_hz > 0.0)) throw std::invalid_argument("Lorentzian linewidth must be positive");
  const std::size_t n = grid.size();
  if (values.size() != n) throw std::invalid_argument("values do not match grid");
  const std::size_t m = 2 * n;
  const double df = grid.df();
  const double hwhm = 0.5 * fwhm_hz;

  // Kernel on lags -n..n-1 stored circularly. The lone lag -n has no mirror partner,
  // so its odd (dispersive) part is dropped to keep the kernel antisymmetric.
  fft::cvec kernel(m);
  double area = 0.0;
  for (std::size_t idx = 0; idx < m; ++idx) {
    const double lag = idx < n ? static_cast<double>(idx) : static_cast<double>(idx) - static_cast<double>(m);
    const double x = lag * df;
    const double denom = x * x + hwhm * hwhm;
    double im = -x / (std::numbers::pi * denom) * df;
    if (idx == n) im = 0.0;
    const double re = hwhm / (std::numbers::pi * denom) * df;
    kernel[idx] = {re, im};
    area += re;
  }
  for (auto& z : kernel) z /= area;

  // Edge-replicating padding: the right half of the pad continues the last sample,
  // the left half (wrapping to negative indices) continues the first.
  fft::cvec buffer(m);
  for (std::size_t k = 0; k < n; ++k) buffer[k] = values[k];
  for (std::size_t k = n; k < n + n / 2; ++k) buffer[k] = values[n - 1];
  for (std::size_t k = n + n / 2; k < m; ++k) buffer[k] = values[0];

  fft::forward_inplace(kernel);
  fft::forward_inplace(buffer);
  for (std::size_t k = 0; k < m; ++k) buffer[k] *= kernel[k];
  fft::inverse_inplace(buffer);
  buffer.resize(n);
  return buffer;
}

ComplexDepthSpectrum complex_depth(const InhomogeneousProfile& profile, const IonParameters& ions) {
  const auto& grid = profile.grid();
  const double gamma = ions.gamma_h();
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("complex_depth needs a finite positive homogeneous linewidth");
  if (gamma < 2.0 * grid.df()) {
    std::ostringstream msg;
    msg << "homogeneous linewidth " << gamma << " Hz is below twice the grid step " << grid.df()
        << " Hz; the Lorentzian is under-resolved";
    warn(msg.str());
  }
  auto depth = lorentzian_convolve(profile.od(), grid, gamma);
  // Convolution of a non-negative profile with a positive kernel; clip FFT round-off.
  for (auto& z : depth) z.real(std::max(0.0, z.real()));
  return ComplexDepthSpectrum{grid, std::move(depth)};
}

}  // namespace afc
