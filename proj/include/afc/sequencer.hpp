// Timed pulse sequences: comb burn trains, two-pulse echoes, probes, and their spectra.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "afc/device.hpp"
#include "afc/field_trace.hpp"
#include "afc/spectral.hpp"

namespace afc {

enum class PulseShape { square, square_with_rise };

inline constexpr double kDefaultRiseTime = 2e-9;

struct Pulse {
  double t_start = 0.0;
  double duration = 0.0;
  double peak_rabi = 0.0;       // rad/s at the pulse top
  double carrier_offset = 0.0;  // Hz relative to line center
  double phase = 0.0;           // rad
  PulseShape shape = PulseShape::square;
  double rise_time = 0.0;  // raised-cosine edge, used by square_with_rise

  double t_end() const noexcept { return t_start + duration; }
  // Real envelope (0..peak_rabi) without carrier rotation.
  double magnitude(double t) const noexcept;
  // Complex drive including carrier exp(i 2 pi f t) and phase offset.
  std::complex<double> value(double t) const noexcept;
  void validate() const;
};

/// Time-ordered, non-overlapping pulses.
class Sequence {
 public:
  Sequence() = default;
  Sequence(std::vector<Pulse> pulses, double t_end);

  const std::vector<Pulse>& pulses() const noexcept { return pulses_; }
  double t_end() const noexcept { return t_end_; }
  bool empty() const noexcept { return pulses_.empty(); }

  double min_duration() const;
  double max_rabi() const;
  double max_abs_carrier() const;
  // Complex drive at t (sum over pulses; at most one is active).
  std::complex<double> drive(double t) const noexcept;
  // Sorted pulse edges (starts, ends, rise boundaries) inside [0, t_end].
  std::vector<double> breakpoints() const;

  Sequence shifted(double dt) const;
  Sequence scaled(double factor) const;

 private:
  std::vector<Pulse> pulses_;
  double t_end_ = 0.0;
};

enum class PairPhase { coherent, randomized };

struct BurnConfig {
  double pair_separation = 130e-9;  // T
  double pulse_duration = 10e-9;
  int n_pairs = 150;
  double pair_wait = 3e-6;
  double peak_power_w = 0.5e-6;
  double carrier_offset = 0.0;  // f0
  PairPhase pair_phase = PairPhase::coherent;
  std::uint64_t seed = 0;

  void validate() const;
};

// 2*n_pairs pulses at k*pair_wait and k*pair_wait + T; amplitude from the device model.
Sequence afc_burn_sequence(const BurnConfig& cfg, const DeviceModel& device = DeviceModel::reference());

// Pulse 1 at t=0 (duration t1), pulse 2 at t=tau (duration t2), both at Rabi omega.
// t2 == 0 omits the rephasing pulse.
Sequence echo_sequence(double t1, double t2, double tau, double omega);

Sequence probe_pulse(double duration, double carrier_offset, double rabi,
                     PulseShape shape = PulseShape::square, double rise_time = kDefaultRiseTime);

// Dense complex envelope sampled at n*dt on [0, t_end).
FieldTrace envelope(const Sequence& seq, double dt);

/// Fourier amplitude of a sequence envelope on a spectral grid.
struct EnvelopeSpectrum {
  SpectralGrid grid;
  std::vector<std::complex<double>> amplitude;

  std::vector<double> power() const;
  double total_power() const;  // sum |A|^2 df
};

// A(f) = integral e(t) exp(-i 2 pi f t) dt sampled on the grid, via FFT of the envelope
// sampled at dt = 1/(q * span) from each pulse's own start; sub-sample start offsets enter
// as exact phase factors. The envelope is folded modulo 1/df, so Parseval holds exactly
// when the sequence fits in 1/df, q == 1 and every pulse starts on a multiple of dt.
EnvelopeSpectrum power_spectrum(const Sequence& seq, const SpectralGrid& grid);

// Gaussian AOM response: power transmission exp(-4 ln2 (f-c)^2 / B^2).
EnvelopeSpectrum aom_filter(const EnvelopeSpectrum& spec, double bandwidth_fwhm, double center);
double aom_power_transmission(double frequency, double bandwidth_fwhm, double center);

}  // namespace afc
