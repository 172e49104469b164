// Frequency grids, ensemble absorption profiles and their complex optical depth.
//
// Conventions used throughout the library:
//   * detunings are cyclic frequencies in Hz relative to the ensemble line center;
//   * time-domain envelopes carry exp(+i 2 pi f t) for a component at detuning f, so
//     spectra are A(f) = integral e(t) exp(-i 2 pi f t) dt;
//   * optical depth is the power attenuation exponent: T = exp(-OD).

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace afc {

/// Uniform detuning axis. Sample k sits at (k - n/2) * df with df = span / n.
class SpectralGrid {
 public:
  SpectralGrid(double span_hz, std::size_t n_points);

  double span() const noexcept { return span_; }
  std::size_t size() const noexcept { return n_; }
  double df() const noexcept { return span_ / static_cast<double>(n_); }
  double center_frequency() const noexcept { return 0.0; }

  double frequency(std::size_t k) const noexcept {
    return (static_cast<double>(k) - static_cast<double>(n_ / 2)) * df();
  }
  double min_frequency() const noexcept { return frequency(0); }
  double max_frequency() const noexcept { return frequency(n_ - 1); }

  // Fractional sample position of a detuning (not clamped).
  double position(double frequency_hz) const noexcept {
    return frequency_hz / df() + static_cast<double>(n_ / 2);
  }

  std::vector<double> frequencies() const;

  bool operator==(const SpectralGrid& other) const noexcept {
    return span_ == other.span_ && n_ == other.n_;
  }

 private:
  double span_;
  std::size_t n_;
};

SpectralGrid make_grid(double span_hz, std::size_t n_points);

// Default simulation window: 400 MHz, 2^14 points (~24 kHz resolution).
SpectralGrid default_grid();

/// Optical coherence parameters of the ion ensemble.
class IonParameters {
 public:
  // t2 > 0, t1 >= t2/2. Infinite values describe a decay-free transition.
  IonParameters(double t2_s, double t1_s);

  double t2() const noexcept { return t2_; }
  double t1() const noexcept { return t1_; }
  // Homogeneous FWHM 1/(pi T2).
  double gamma_h() const noexcept;

 private:
  double t2_;
  double t1_;
};

/// Optical depth per detuning class. Values are OD (alpha * L pre-multiplied).
class InhomogeneousProfile {
 public:
  InhomogeneousProfile(SpectralGrid grid, std::vector<double> od_density, double length_m);

  const SpectralGrid& grid() const noexcept { return grid_; }
  std::span<const double> od() const noexcept { return od_; }
  double length() const noexcept { return length_; }

  // Linear combination a*this + b*other on the same grid; coefficients must keep od >= 0.
  InhomogeneousProfile combined(double a, const InhomogeneousProfile& other, double b) const;

 private:
  SpectralGrid grid_;
  std::vector<double> od_;
  double length_;
};

InhomogeneousProfile flat_profile(const SpectralGrid& grid, double od, double length_m);

/// Complex optical depth d(f) = d_abs(f) + i d_disp(f). The field transfer function of
/// the medium is exp(-d/2).
struct ComplexDepthSpectrum {
  SpectralGrid grid;
  std::vector<std::complex<double>> depth;

  std::vector<double> absorption() const;
  std::vector<double> dispersion() const;
};

/// Convolves the profile with the unit-area causal complex Lorentzian of FWHM gamma_h,
///   l(x) = (1/pi) (g/2 - i x) / (x^2 + (g/2)^2),
/// so Re(depth) is the homogeneously smoothed absorption and Im(depth) its
/// Kramers-Kronig partner for exp(+i 2 pi f t) envelopes.
ComplexDepthSpectrum complex_depth(const InhomogeneousProfile& profile, const IonParameters& ions);

/// Lorentzian convolution on a grid with edge-replicating padding of one span.
/// Returns the complex result; the real kernel part has discrete unit area.
std::vector<std::complex<double>> lorentzian_convolve(std::span<const double> values,
                                                      const SpectralGrid& grid, double fwhm_hz);

/// Linear interpolation of a sampled curve at a detuning; clamps to the edge values.
template <typename T>
T interpolate(std::span<const T> values, const SpectralGrid& grid, double frequency_hz) {
  const double pos = grid.position(frequency_hz);
  if (pos <= 0.0) return values.front();
  const auto last = static_cast<double>(values.size() - 1);
  if (pos >= last) return values.back();
  const auto i = static_cast<std::size_t>(pos);
  const double w = pos - static_cast<double>(i);
  return values[i] * (1.0 - w) + values[i + 1] * w;
}

}  // namespace afc
