#include "afc/memory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "afc/diagnostics.hpp"
#include "afc/fft.hpp"

namespace afc {

void BurnModel::validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("burn kappa must be non-negative");
  if (!(hole_depth_cap > 0.0 && hole_depth_cap <= 1.0)) throw std::invalid_argument("hole depth cap must be in (0, 1]");
  if (!(homogeneous_fwhm >= 0.0)) throw std::invalid_argument("burn homogeneous linewidth must be non-negative");
}

std::vector<double> burn_density(const EnvelopeSpectrum& spec, double homogeneous_fwhm) {
  std::vector<double> density = spec.power();
  if (homogeneous_fwhm > 0.0) {
    const auto smoothed = lorentzian_convolve(density, spec.grid, homogeneous_fwhm);
    for (std::size_t k = 0; k < density.size(); ++k) density[k] = std::max(0.0, smoothed[k].real());
  }
  const double peak = *std::max_element(density.begin(), density.end());
  if (peak > 0.0) {
    for (auto& v : density) v /= peak;
  }
  return density;
}

std::vector<double> burn_density(const Sequence& seq, const SpectralGrid& grid, double homogeneous_fwhm,
                                 double aom_bandwidth, double aom_center) {
  if (!(homogeneous_fwhm > 0.0)) throw std::invalid_argument("burn_density: homogeneous linewidth must be positive");
  if (seq.empty()) throw std::invalid_argument("burn_density: empty sequence");
  const double span = grid.span();
  const auto q = static_cast<std::size_t>(std::max(1.0, std::ceil(10.0 / (seq.min_duration() * span))));
  const double dt = 1.0 / (static_cast<double>(q) * span);
  const std::size_t m = q * grid.size();  // samples per 1/df

  // Lags beyond max_lag carry weight below e^-30, or would alias on the grid.
  const double decay = std::numbers::pi * homogeneous_fwhm;
  const auto max_lag = std::min(m / 2 - 1, static_cast<std::size_t>(std::ceil(30.0 / decay / dt)));

  const auto e = envelope(seq, dt);
  std::size_t n_fft = 1;
  while (n_fft < e.size() + max_lag + 1) n_fft <<= 1;
  fft::cvec buf(n_fft);
  std::copy(e.samples.begin(), e.samples.end(), buf.begin());
  fft::forward_inplace(buf);
  for (auto& v : buf) v = std::norm(v);
  fft::inverse_inplace(buf);  // buf[j] = sum_t e(t + j dt) e*(t): autocorrelation at lag j dt

  fft::cvec lagged(m);
  lagged[0] = buf[0];
  for (std::size_t j = 1; j <= max_lag; ++j) {
    const double w = std::exp(-decay * static_cast<double>(j) * dt);
    lagged[j] = buf[j] * w;
    lagged[m - j] = buf[n_fft - j] * w;
  }
  fft::forward_inplace(lagged);

  std::vector<double> density(grid.size());
  const auto half = static_cast<std::ptrdiff_t>(grid.size() / 2);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(k) - half;
    const auto bin = static_cast<std::size_t>(j < 0 ? j + static_cast<std::ptrdiff_t>(m) : j);
    double v = std::max(0.0, lagged[bin].real());
    if (aom_bandwidth > 0.0) v *= aom_power_transmission(grid.frequency(k), aom_bandwidth, aom_center);
    density[k] = v;
  }
  const double peak = *std::max_element(density.begin(), density.end());
  if (peak > 0.0) {
    for (auto& v : density) v /= peak;
  }
  return density;
}

InhomogeneousProfile burn(const InhomogeneousProfile& profile, std::span<const double> density,
                          const BurnModel& model) {
  model.validate();
  if (density.size() != profile.grid().size()) throw std::invalid_argument("burn: density and profile sizes differ");
  if (model.kappa == 0.0) return profile;
  const double cap = model.hole_depth_cap;
  std::vector<double> od(profile.od().begin(), profile.od().end());
  for (std::size_t k = 0; k < od.size(); ++k) {
    const double keep = std::min(1.0, (1.0 - cap) + cap * std::exp(-model.kappa * density[k]));
    od[k] *= keep;
  }
  return InhomogeneousProfile(profile.grid(), std::move(od), profile.length());
}

InhomogeneousProfile burn(const InhomogeneousProfile& profile, const EnvelopeSpectrum& spec, const BurnModel& model) {
  model.validate();
  if (!(profile.grid() == spec.grid)) throw std::invalid_argument("burn: profile and spectrum grids differ");
  if (model.kappa == 0.0) return profile;
  return burn(profile, burn_density(spec, model.homogeneous_fwhm), model);
}

std::vector<double> observed_absorption(const InhomogeneousProfile& profile, const std::optional<IonParameters>& ions) {
  if (!ions) return {profile.od().begin(), profile.od().end()};
  return complex_depth(profile, *ions).absorption();
}

BurnModel calibrate_burn(const InhomogeneousProfile& profile, const EnvelopeSpectrum& spec, double target_contrast,
                         const CalibrationOptions& options) {
  if (!(profile.grid() == spec.grid)) throw std::invalid_argument("calibrate_burn: profile and spectrum grids differ");
  const double fwhm = options.ions ? options.ions->gamma_h() : 0.0;
  BurnModel model = calibrate_burn(profile, burn_density(spec, fwhm), target_contrast, options);
  model.homogeneous_fwhm = fwhm;
  return model;
}

BurnModel calibrate_burn(const InhomogeneousProfile& profile, std::span<const double> density, double target_contrast,
                         const CalibrationOptions& options) {
  if (!(target_contrast >= 0.0)) throw std::invalid_argument("target contrast must be non-negative");
  if (density.size() != profile.grid().size()) throw std::invalid_argument("calibrate_burn: density size differs");
  BurnModel model;
  model.hole_depth_cap = options.hole_depth_cap;
  model.validate();
  if (target_contrast == 0.0) return model;

  const auto freqs = profile.grid().frequencies();
  auto contrast_at = [&](double kappa) {
    BurnModel m = model;
    m.kappa = kappa;
    const auto absorption = observed_absorption(burn(profile, density, m), options.ions);
    try {
      return analyze_comb(freqs, absorption, options.window_lo, options.window_hi).od_contrast;
    } catch (const NotACombError&) {
      return 0.0;
    }
  };

  // Geometric scan for a bracket, then bisection in log(kappa).
  double lo = 0.0;
  double hi = 0.0;
  double best = 0.0;
  for (double kappa = 1e-3; kappa <= 1e12; kappa *= 2.0) {
    const double c = contrast_at(kappa);
    best = std::max(best, c);
    if (c >= target_contrast) {
      hi = kappa;
      break;
    }
    if (c < 0.5 * best) break;  // past the maximum: burning now erodes the teeth too
    lo = kappa;
  }
  if (hi == 0.0) {
    std::ostringstream msg;
    msg << "target contrast " << target_contrast << " is unreachable with hole depth cap "
        << options.hole_depth_cap << "; maximum achievable contrast is " << best;
    throw UnreachableTargetError(msg.str(), best);
  }
  if (lo == 0.0) lo = hi / 2.0;
  double kappa = hi;
  for (int iter = 0; iter < 200; ++iter) {
    kappa = std::sqrt(lo * hi);
    const double c = contrast_at(kappa);
    if (std::abs(c - target_contrast) <= options.tolerance) break;
    (c < target_contrast ? lo : hi) = kappa;
  }
  model.kappa = kappa;
  return model;
}

FieldTrace transmit(const ComplexDepthSpectrum& depth, const FieldTrace& input) {
  const auto& grid = depth.grid;
  const double window = 1.0 / (grid.df() * input.dt);
  const auto m = static_cast<std::size_t>(std::llround(window));
  if (m < input.size() || m < 2) {
    std::ostringstream msg;
    msg << "input trace (" << input.duration() << " s) exceeds the grid's 1/df window (" << 1.0 / grid.df()
        << " s); use a finer spectral grid";
    throw std::invalid_argument(msg.str());
  }
  fft::cvec buffer(m);
  std::copy(input.samples.begin(), input.samples.end(), buffer.begin());
  fft::forward_inplace(buffer);
  const double bin_df = 1.0 / (static_cast<double>(m) * input.dt);
  const std::span<const std::complex<double>> d(depth.depth);
  for (std::size_t j = 0; j < m; ++j) {
    const double nu = (j < (m + 1) / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(m)) * bin_df;
    buffer[j] *= std::exp(-0.5 * interpolate(d, grid, nu));
  }
  fft::inverse_inplace(buffer);
  return FieldTrace(input.dt, input.t0, std::move(buffer));
}

FieldTrace transmit(const InhomogeneousProfile& profile, const IonParameters& ions, const FieldTrace& input) {
  return transmit(complex_depth(profile, ions), input);
}

std::vector<double> probe_scan(const InhomogeneousProfile& profile, const IonParameters& ions,
                               std::span<const double> frequencies, double probe_fwhm) {
  const auto& grid = profile.grid();
  const auto absorption = complex_depth(profile, ions).absorption();
  const std::span<const double> a(absorption);
  std::vector<double> out;
  out.reserve(frequencies.size());
  for (double f : frequencies) {
    if (f < grid.min_frequency() || f > grid.max_frequency())
      throw std::invalid_argument("probe frequency lies outside the spectral grid");
    if (probe_fwhm <= 0.0) {
      out.push_back(interpolate(a, grid, f));
      continue;
    }
    const double reach = 3.0 * probe_fwhm;
    const auto k_lo = static_cast<std::size_t>(std::max(0.0, std::floor(grid.position(f - reach))));
    const auto k_hi = std::min(grid.size() - 1, static_cast<std::size_t>(std::ceil(grid.position(f + reach))));
    double weight = 0.0;
    double transmitted = 0.0;
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
      const double x = (grid.frequency(k) - f) / probe_fwhm;
      const double w = std::exp(-4.0 * std::numbers::ln2 * x * x);
      weight += w;
      transmitted += w * std::exp(-absorption[k]);
    }
    out.push_back(-std::log(transmitted / weight));
  }
  return out;
}

EchoResult store_recall(const ComplexDepthSpectrum& depth, const FieldTrace& input, double expected_delay_hint) {
  const double in_energy = input.energy();
  if (!(in_energy > 0.0)) throw std::invalid_argument("store_recall needs a non-zero input pulse");
  double area = 0.0;
  for (const auto& s : input.samples) area += std::abs(s);
  area *= input.dt;
  if (area > kWeakFieldArea) {
    std::ostringstream msg;
    msg << "input pulse area " << area << " rad exceeds the weak-field limit; propagation stays linear";
    warn(msg.str());
  }

  EchoResult result;
  result.output_trace = transmit(depth, input);
  const auto& out = result.output_trace;

  const double width = input.fwhm();
  const double t_in = input.centroid_between(input.t0, input.t0 + input.duration());
  const double tx_lo = t_in - 2.0 * width;
  const double tx_hi = t_in + 2.0 * width;
  result.transmitted_fraction = out.energy_between(tx_lo, tx_hi) / in_energy;

  auto outside_tx = [&](double t) { return t < tx_lo || t > tx_hi; };
  const double floor = kEchoNoiseFloor * input.peak_power();
  std::vector<std::size_t> candidates;
  for (std::size_t n = 1; n + 1 < out.size(); ++n) {
    const double p = std::norm(out.samples[n]);
    if (p > floor && outside_tx(out.time(n)) && p > std::norm(out.samples[n - 1]) &&
        p >= std::norm(out.samples[n + 1]))
      candidates.push_back(n);
  }
  if (candidates.empty()) return result;

  std::size_t pick = *std::max_element(candidates.begin(), candidates.end(), [&](auto a, auto b) {
    return std::norm(out.samples[a]) < std::norm(out.samples[b]);
  });
  if (expected_delay_hint > 0.0) {
    const double strongest = std::norm(out.samples[pick]);
    double best = std::abs(out.time(pick) - t_in - expected_delay_hint);
    for (auto n : candidates) {
      const double miss = std::abs(out.time(n) - t_in - expected_delay_hint);
      if (std::norm(out.samples[n]) >= 0.1 * strongest && miss < best) {
        best = miss;
        pick = n;
      }
    }
  }

  const double t_pk = out.time(pick);
  double e = 0.0;
  double et = 0.0;
  for (std::size_t n = 0; n < out.size(); ++n) {
    const double t = out.time(n);
    if (t >= t_pk - 2.0 * width && t <= t_pk + 2.0 * width && outside_tx(t)) {
      const double p = std::norm(out.samples[n]);
      e += p;
      et += p * t;
    }
  }
  result.echo_detected = true;
  result.efficiency = std::min(1.0, e * out.dt / in_energy);
  result.echo_time = (e > 0.0 ? et / e : t_pk) - t_in;
  return result;
}

EchoResult store_recall(const InhomogeneousProfile& profile, const IonParameters& ions, const FieldTrace& input,
                        double expected_delay_hint) {
  return store_recall(complex_depth(profile, ions), input, expected_delay_hint);
}

}  // namespace afc
