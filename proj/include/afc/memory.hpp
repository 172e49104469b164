// Spectral hole burning, linear propagation and AFC storage/recall.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "afc/analysis.hpp"
#include "afc/field_trace.hpp"
#include "afc/sequencer.hpp"
#include "afc/spectral.hpp"

namespace afc {

/// Saturable hole-burning model:
///   d'(f) = d(f) * [(1 - cap) + cap * exp(-kappa * S(f))]
/// with S the burn power spectral density normalized to unit peak. When
/// homogeneous_fwhm > 0 the density is first convolved with the ions' homogeneous
/// Lorentzian (each ion integrates the drive over its own linewidth).
struct BurnModel {
  double kappa = 0.0;
  double hole_depth_cap = 1.0;
  double homogeneous_fwhm = 0.0;

  void validate() const;
};

InhomogeneousProfile burn(const InhomogeneousProfile& profile, const EnvelopeSpectrum& spec,
                          const BurnModel& model);

// Normalized burn density S(f) used by burn().
std::vector<double> burn_density(const EnvelopeSpectrum& spec, double homogeneous_fwhm);

/// Burn density straight from the drive: FT of the envelope autocorrelation weighted by
/// exp(-pi * gamma * |lag|), i.e. |A|^2 convolved with the homogeneous Lorentzian. Pulses
/// further apart than the ions' memory add incoherently, so trains longer than 1/df do not
/// alias as they do through the folded EnvelopeSpectrum. Requires homogeneous_fwhm > 0.
/// With aom_bandwidth > 0 the Gaussian AOM power response multiplies the density.
std::vector<double> burn_density(const Sequence& seq, const SpectralGrid& grid, double homogeneous_fwhm,
                                 double aom_bandwidth = 0.0, double aom_center = 0.0);

// Same as above with a precomputed normalized density; model.homogeneous_fwhm is not applied.
InhomogeneousProfile burn(const InhomogeneousProfile& profile, std::span<const double> density,
                          const BurnModel& model);

struct CalibrationOptions {
  double hole_depth_cap = 1.0;
  // Comb contrast is evaluated on [window_lo, window_hi].
  double window_lo = -25e6;
  double window_hi = 25e6;
  // With ions set, the burn includes homogeneous broadening and the contrast is measured
  // on the probe-observed absorption Re(complex_depth); otherwise on the raw profile.
  std::optional<IonParameters> ions;
  double tolerance = 1e-4;
};

/// Finds kappa so that the burned comb's OD contrast equals target_contrast.
/// Throws UnreachableTargetError (carrying the maximum reachable contrast) if the
/// target exceeds what the cap allows.
BurnModel calibrate_burn(const InhomogeneousProfile& profile, const EnvelopeSpectrum& spec,
                         double target_contrast, const CalibrationOptions& options);
// Calibration against a precomputed density; the returned model has homogeneous_fwhm = 0.
BurnModel calibrate_burn(const InhomogeneousProfile& profile, std::span<const double> density,
                         double target_contrast, const CalibrationOptions& options);

// Absorption spectrum a calibration or analysis step observes.
std::vector<double> observed_absorption(const InhomogeneousProfile& profile,
                                        const std::optional<IonParameters>& ions);

/// Weak-field propagation: output = IFFT[FFT(input) * exp(-depth/2)]. The output trace
/// spans the full 1/df window of the grid, starting at input.t0.
FieldTrace transmit(const InhomogeneousProfile& profile, const IonParameters& ions, const FieldTrace& input);
FieldTrace transmit(const ComplexDepthSpectrum& depth, const FieldTrace& input);

/// OD seen by a narrowband probe at each frequency, -ln T(f). With probe_fwhm > 0 the
/// probe has a Gaussian power spectrum of that FWHM and T is averaged over it.
std::vector<double> probe_scan(const InhomogeneousProfile& profile, const IonParameters& ions,
                               std::span<const double> frequencies, double probe_fwhm = 0.0);

struct EchoResult {
  bool echo_detected = false;
  double echo_time = 0.0;  // echo centroid minus input centroid
  double efficiency = 0.0;
  double transmitted_fraction = 0.0;
  FieldTrace output_trace;
};

/// Propagates input through the comb and measures the first recalled pulse.
/// The hint (<= 0 to disable) only chooses among comparable candidate maxima.
EchoResult store_recall(const InhomogeneousProfile& profile, const IonParameters& ions,
                        const FieldTrace& input, double expected_delay_hint = 0.0);
EchoResult store_recall(const ComplexDepthSpectrum& depth, const FieldTrace& input,
                        double expected_delay_hint = 0.0);

// Relative power below which a secondary maximum is treated as noise.
inline constexpr double kEchoNoiseFloor = 1e-8;
// Input pulse area above which the weak-field assumption is flagged.
inline constexpr double kWeakFieldArea = 0.1;

}  // namespace afc
