// Comb metrics, exponential fits, and the analytic AFC efficiency oracle.

#pragma once

#include <span>
#include <vector>

namespace afc {

struct Tooth {
  double center = 0.0;   // Hz
  double fwhm = 0.0;     // Hz, at half prominence; 0 when the tooth is cut by the window
  double peak_od = 0.0;
  double prominence = 0.0;
  bool complete = false;  // bounded by troughs on both sides inside the window
};

struct CombAnalysis {
  double spacing = 0.0;  // median adjacent tooth distance, Hz
  std::vector<Tooth> teeth;
  double finesse = 0.0;  // spacing / mean FWHM of complete teeth
  double od_contrast = 0.0;
  double background_od = 0.0;  // mean trough OD
  double mean_fwhm = 0.0;
};

/// Peak analysis of an absorption (or any positive) spectrum restricted to
/// [window_lo, window_hi]. Peaks need a topographic prominence of at least 10 % of the
/// window's max-min range. Throws NotACombError when fewer than 3 teeth are found.
CombAnalysis analyze_comb(std::span<const double> frequencies, std::span<const double> values,
                          double window_lo, double window_hi);

// Period of an interference pattern from its minima. The zeros of a fringe pattern stay put
// under a smooth envelope, whose slope would drag the maxima towards the envelope peak.
double fringe_spacing(std::span<const double> frequencies, std::span<const double> values, double window_lo,
                      double window_hi);

struct FitResult {
  double amplitude = 0.0;
  double decay_constant = 0.0;  // s
  double std_error = 0.0;       // s
  double residual_rms = 0.0;
  bool log_linear = true;  // false when the direct nonlinear fit was used
};

/// Least-squares fit of y = A exp(-x / tau). Uses a log-linear fit when all y > 0,
/// otherwise Gauss-Newton on y directly. Throws NumericalError for non-decaying data.
FitResult fit_exponential(std::span<const double> x, std::span<const double> y);

/// Forward-recall efficiency of a square-tooth comb:
///   eta = dt^2 exp(-dt) sinc^2(pi/F) exp(-d0), dt = tooth_od / F.
double afc_efficiency_analytic(double tooth_od, double finesse, double background_od);

}  // namespace afc
