#include "afc/sequencer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "afc/diagnostics.hpp"
#include "afc/fft.hpp"

namespace afc {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Relative slack for deciding which samples fall inside a half-open pulse window.
constexpr double kSampleSlack = 1e-9;

// Sample indices [first, last) of t = n*dt inside [t_start, t_end).
std::pair<long long, long long> sample_range(const Pulse& p, double dt) {
  const auto first = static_cast<long long>(std::ceil(p.t_start / dt - kSampleSlack));
  const auto last = static_cast<long long>(std::ceil(p.t_end() / dt - kSampleSlack));
  return {std::max(0LL, first), std::max(0LL, last)};
}

// Pulse value at sample time ts; the shape is evaluated with ts clamped into the pulse
// so samples admitted by the slack see the edge value.
std::complex<double> sample_value(const Pulse& p, double ts) {
  const double t = std::clamp(ts, p.t_start, std::nextafter(p.t_end(), p.t_start));
  return std::polar(p.magnitude(t), kTwoPi * p.carrier_offset * ts + p.phase);
}

double uniform_phase(std::mt19937_64& rng) {
  // 53 random mantissa bits; avoids implementation-defined distributions.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 * kTwoPi;
}

}  // namespace

double Pulse::magnitude(double t) const noexcept {
  if (t < t_start || t >= t_end()) return 0.0;
  if (shape == PulseShape::square_with_rise && rise_time > 0.0) {
    const double s = std::min(t - t_start, t_end() - t);
    if (s < rise_time) return peak_rabi * 0.5 * (1.0 - std::cos(std::numbers::pi * s / rise_time));
  }
  return peak_rabi;
}

std::complex<double> Pulse::value(double t) const noexcept {
  const double m = magnitude(t);
  if (m == 0.0) return {0.0, 0.0};
  return std::polar(m, kTwoPi * carrier_offset * t + phase);
}

void Pulse::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) throw std::invalid_argument("pulse duration must be positive");
  if (!(peak_rabi >= 0.0) || !std::isfinite(peak_rabi)) throw std::invalid_argument("pulse peak Rabi frequency must be non-negative");
  if (!std::isfinite(t_start) || !std::isfinite(carrier_offset) || !std::isfinite(phase))
    throw std::invalid_argument("pulse parameters must be finite");
  if (shape == PulseShape::square_with_rise && !(rise_time >= 0.0 && rise_time < duration / 2.0))
    throw std::invalid_argument("pulse rise time must be below half the duration");
}

Sequence::Sequence(std::vector<Pulse> pulses, double t_end) : pulses_(std::move(pulses)), t_end_(t_end) {
  for (const auto& p : pulses_) p.validate();
  for (std::size_t i = 1; i < pulses_.size(); ++i) {
    if (pulses_[i].t_start < pulses_[i - 1].t_start) throw std::invalid_argument("pulses must be sorted by start time");
    if (pulses_[i].t_start < pulses_[i - 1].t_end()) throw std::invalid_argument("pulses overlap");
  }
  if (!pulses_.empty() && t_end_ < pulses_.back().t_end())
    throw std::invalid_argument("sequence end precedes the last pulse end");
  if (!(t_end_ >= 0.0)) throw std::invalid_argument("sequence end must be non-negative");
}

double Sequence::min_duration() const {
  if (pulses_.empty()) throw std::invalid_argument("sequence has no pulses");
  double d = pulses_.front().duration;
  for (const auto& p : pulses_) d = std::min(d, p.duration);
  return d;
}

double Sequence::max_rabi() const {
  double m = 0.0;
  for (const auto& p : pulses_) m = std::max(m, p.peak_rabi);
  return m;
}

double Sequence::max_abs_carrier() const {
  double m = 0.0;
  for (const auto& p : pulses_) m = std::max(m, std::abs(p.carrier_offset));
  return m;
}

std::complex<double> Sequence::drive(double t) const noexcept {
  // Last pulse starting at or before t.
  auto it = std::upper_bound(pulses_.begin(), pulses_.end(), t,
                             [](double x, const Pulse& p) { return x < p.t_start; });
  if (it == pulses_.begin()) return {0.0, 0.0};
  return std::prev(it)->value(t);
}

std::vector<double> Sequence::breakpoints() const {
  std::vector<double> bp;
  for (const auto& p : pulses_) {
    bp.push_back(p.t_start);
    bp.push_back(p.t_end());
    if (p.shape == PulseShape::square_with_rise && p.rise_time > 0.0) {
      bp.push_back(p.t_start + p.rise_time);
      bp.push_back(p.t_end() - p.rise_time);
    }
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

Sequence Sequence::shifted(double dt) const {
  auto pulses = pulses_;
  for (auto& p : pulses) p.t_start += dt;
  return Sequence(std::move(pulses), t_end_ + dt);
}

Sequence Sequence::scaled(double factor) const {
  auto pulses = pulses_;
  for (auto& p : pulses) p.peak_rabi *= factor;
  return Sequence(std::move(pulses), t_end_);
}

void BurnConfig::validate() const {
  if (!(pulse_duration > 0.0)) throw std::invalid_argument("burn pulse duration must be positive");
  if (!(pair_separation > pulse_duration))
    throw std::invalid_argument("burn pair separation must exceed the pulse duration (pulses overlap)");
  if (n_pairs < 1) throw std::invalid_argument("burn train needs at least one pair");
  if (n_pairs > 1 && !(pair_wait >= pair_separation + pulse_duration))
    throw std::invalid_argument("burn pair wait must exceed the pair length (pairs overlap)");
  if (!(peak_power_w >= 0.0)) throw std::invalid_argument("burn peak power must be non-negative");
  if (n_pairs > 1 && pair_wait < 10.0 * pair_separation) {
    std::ostringstream msg;
    msg << "burn pair wait " << pair_wait << " s is shorter than 10x the pair separation";
    warn(msg.str());
  }
}

Sequence afc_burn_sequence(const BurnConfig& cfg, const DeviceModel& device) {
  cfg.validate();
  const double rabi = rabi_from_power(device, cfg.peak_power_w);
  std::mt19937_64 rng(cfg.seed);
  std::vector<Pulse> pulses;
  pulses.reserve(2 * static_cast<std::size_t>(cfg.n_pairs));
  for (int k = 0; k < cfg.n_pairs; ++k) {
    const double t0 = k * cfg.pair_wait;
    const double phase = cfg.pair_phase == PairPhase::randomized ? uniform_phase(rng) : 0.0;
    for (double t : {t0, t0 + cfg.pair_separation}) {
      Pulse p;
      p.t_start = t;
      p.duration = cfg.pulse_duration;
      p.peak_rabi = rabi;
      p.carrier_offset = cfg.carrier_offset;
      p.phase = phase;
      pulses.push_back(p);
    }
  }
  const double last_end = pulses.back().t_end();
  const double t_end = std::max(last_end, cfg.n_pairs * cfg.pair_wait);
  return Sequence(std::move(pulses), t_end);
}

Sequence echo_sequence(double t1, double t2, double tau, double omega) {
  if (!(t1 > 0.0)) throw std::invalid_argument("echo pulse t1 must be positive");
  if (!(t2 >= 0.0)) throw std::invalid_argument("echo pulse t2 must be non-negative");
  if (!(tau > t1 + t2)) throw std::invalid_argument("echo delay tau must exceed t1 + t2 (pulses overlap)");
  std::vector<Pulse> pulses;
  Pulse first;
  first.duration = t1;
  first.peak_rabi = omega;
  pulses.push_back(first);
  if (t2 > 0.0) {
    Pulse second = first;
    second.t_start = tau;
    second.duration = t2;
    pulses.push_back(second);
  }
  return Sequence(std::move(pulses), tau + t2);
}

Sequence probe_pulse(double duration, double carrier_offset, double rabi, PulseShape shape, double rise_time) {
  Pulse p;
  p.duration = duration;
  p.peak_rabi = rabi;
  p.carrier_offset = carrier_offset;
  p.shape = shape;
  p.rise_time = shape == PulseShape::square_with_rise ? rise_time : 0.0;
  return Sequence({p}, duration);
}

FieldTrace envelope(const Sequence& seq, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("envelope dt must be positive");
  if (!seq.empty() && dt > seq.min_duration() / 10.0 * (1.0 + 1e-12))
    throw std::invalid_argument("envelope dt is coarser than a tenth of the shortest pulse");
  const auto n = static_cast<std::size_t>(std::ceil(seq.t_end() / dt - kSampleSlack));
  std::vector<std::complex<double>> samples(n);
  for (const auto& p : seq.pulses()) {
    const auto [first, last] = sample_range(p, dt);
    for (long long i = first; i < last && static_cast<std::size_t>(i) < n; ++i) {
      samples[static_cast<std::size_t>(i)] = sample_value(p, static_cast<double>(i) * dt);
    }
  }
  return FieldTrace(dt, 0.0, std::move(samples));
}

std::vector<double> EnvelopeSpectrum::power() const {
  std::vector<double> p(amplitude.size());
  std::transform(amplitude.begin(), amplitude.end(), p.begin(), [](auto z) { return std::norm(z); });
  return p;
}

double EnvelopeSpectrum::total_power() const {
  double s = 0.0;
  for (const auto& a : amplitude) s += std::norm(a);
  return s * grid.df();
}

EnvelopeSpectrum power_spectrum(const Sequence& seq, const SpectralGrid& grid) {
  if (seq.empty()) throw std::invalid_argument("power spectrum of an empty sequence");
  const double min_dur = seq.min_duration();
  if (grid.span() < 1.0 / min_dur) {
    std::ostringstream msg;
    msg << "grid span " << grid.span() << " Hz is narrower than 1/pulse duration (" << 1.0 / min_dur << " Hz)";
    throw std::invalid_argument(msg.str());
  }
  if (grid.span() < 2.0 / min_dur) warn("grid span is below 2/pulse duration; spectrum is truncated");

  const auto q = static_cast<std::size_t>(std::max(1.0, std::ceil(10.0 / (min_dur * grid.span()) - 1e-9)));
  const std::size_t n = grid.size();
  const std::size_t len = q * n;
  const double dt = 1.0 / (static_cast<double>(q) * grid.span());

  // Each pulse is sampled from its own start, so pulse timing is not rounded to dt. Pulses are
  // grouped by the sub-sample offset of their start; each group gets one FFT and the offset
  // comes back as a phase ramp.
  struct Group {
    double offset;
    fft::cvec folded;
  };
  std::vector<Group> groups;
  for (const auto& p : seq.pulses()) {
    const double pos = p.t_start / dt;
    auto k0 = static_cast<long long>(std::floor(pos + kSampleSlack));
    double offset = (pos - static_cast<double>(k0)) * dt;
    if (offset < kSampleSlack * dt) offset = 0.0;
    auto g = std::find_if(groups.begin(), groups.end(), [&](const Group& x) { return std::abs(x.offset - offset) <= kSampleSlack * dt; });
    if (g == groups.end()) {
      groups.push_back({offset, fft::cvec(len)});
      g = groups.end() - 1;
    }
    const auto count = static_cast<long long>(std::ceil(p.duration / dt - kSampleSlack));
    for (long long i = 0; i < count; ++i) {
      g->folded[static_cast<std::size_t>(k0 + i) % len] += sample_value(p, p.t_start + static_cast<double>(i) * dt);
    }
  }

  std::vector<std::complex<double>> amp(n);
  const auto half = static_cast<long long>(n / 2);
  const auto llen = static_cast<long long>(len);
  for (auto& g : groups) {
    fft::forward_inplace(g.folded);
    for (std::size_t k = 0; k < n; ++k) {
      long long bin = static_cast<long long>(k) - half;
      bin = ((bin % llen) + llen) % llen;
      auto a = g.folded[static_cast<std::size_t>(bin)] * dt;
      if (g.offset != 0.0) a *= std::polar(1.0, -kTwoPi * grid.frequency(k) * g.offset);
      amp[k] += a;
    }
  }
  return EnvelopeSpectrum{grid, std::move(amp)};
}

double aom_power_transmission(double frequency, double bandwidth_fwhm, double center) {
  const double x = (frequency - center) / bandwidth_fwhm;
  return std::exp(-4.0 * std::numbers::ln2 * x * x);
}

EnvelopeSpectrum aom_filter(const EnvelopeSpectrum& spec, double bandwidth_fwhm, double center) {
  if (!(bandwidth_fwhm > 0.0)) throw std::invalid_argument("AOM bandwidth must be positive");
  EnvelopeSpectrum out = spec;
  for (std::size_t k = 0; k < out.amplitude.size(); ++k)
    out.amplitude[k] *= std::sqrt(aom_power_transmission(spec.grid.frequency(k), bandwidth_fwhm, center));
  return out;
}

}  // namespace afc
