#include "afc/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "afc/diagnostics.hpp"

namespace afc {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Substep {
  double h;
  std::complex<double> drive[3];  // at t, t + h/2, t + h
  bool ends_on_sample;
};

// Drive of the pulse active on a substep, continuous up to both pulse edges.
std::complex<double> drive_on(const Pulse* p, double t) {
  if (!p) return {0.0, 0.0};
  const double inside = std::clamp(t, p->t_start, std::nextafter(p->t_end(), p->t_start));
  return std::polar(p->magnitude(inside), kTwoPi * p->carrier_offset * t + p->phase);
}

const Pulse* active_pulse(const Sequence& seq, double t) {
  for (const auto& p : seq.pulses()) {
    if (t >= p.t_start && t < p.t_end()) return &p;
    if (p.t_start > t) break;
  }
  return nullptr;
}

std::vector<Substep> build_substeps(const Sequence& seq, double dt, std::size_t n_samples) {
  const auto bp = seq.breakpoints();
  std::vector<Substep> steps;
  steps.reserve(n_samples + bp.size());
  auto it = bp.begin();
  for (std::size_t n = 0; n + 1 < n_samples; ++n) {
    const double a = static_cast<double>(n) * dt;
    const double b = static_cast<double>(n + 1) * dt;
    double start = a;
    while (it != bp.end() && *it <= a + 1e-12 * dt) ++it;
    std::vector<double> cuts;
    while (it != bp.end() && *it < b - 1e-12 * dt) cuts.push_back(*it++);
    cuts.push_back(b);
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      const double end = cuts[c];
      const double h = end - start;
      const Pulse* p = active_pulse(seq, start + 0.5 * h);
      steps.push_back({h, {drive_on(p, start), drive_on(p, start + 0.5 * h), drive_on(p, end)}, c + 1 == cuts.size()});
      start = end;
    }
  }
  return steps;
}

struct Rates {
  double du, dv, dw;
};

inline Rates bloch_rates(double u, double v, double w, std::complex<double> drive, double wz, double g2, double g1) {
  const double wx = -drive.real();
  const double wy = -drive.imag();
  return {wy * w - wz * v - g2 * u, wz * u - wx * w - g2 * v, wx * v - wy * u - g1 * (w + 1.0)};
}

double decay_rate(double t) { return std::isfinite(t) ? 1.0 / t : 0.0; }

}  // namespace

BlochEnsembleState BlochEnsembleState::ground(std::vector<double> detunings, std::vector<double> weights) {
  if (detunings.empty()) throw std::invalid_argument("Bloch ensemble needs at least one detuning class");
  if (weights.empty()) weights.assign(detunings.size(), 1.0);
  if (weights.size() != detunings.size()) throw std::invalid_argument("class weights do not match detunings");
  BlochEnsembleState s;
  const std::size_t n = detunings.size();
  s.detunings = std::move(detunings);
  s.weights = std::move(weights);
  s.u.assign(n, 0.0);
  s.v.assign(n, 0.0);
  s.w.assign(n, -1.0);
  return s;
}

std::vector<double> uniform_classes(double bandwidth, std::size_t n_classes) {
  if (n_classes == 0) throw std::invalid_argument("need at least one detuning class");
  if (n_classes == 1) return {0.0};
  if (!(bandwidth > 0.0)) throw std::invalid_argument("class bandwidth must be positive");
  std::vector<double> d(n_classes);
  const double step = bandwidth / static_cast<double>(n_classes - 1);
  for (std::size_t k = 0; k < n_classes; ++k)
    d[k] = (static_cast<double>(k) - 0.5 * static_cast<double>(n_classes - 1)) * step;
  return d;
}

std::size_t recommended_classes(double bandwidth, double observation_time) {
  const auto n = static_cast<std::size_t>(std::ceil(1.5 * bandwidth * observation_time)) + 1;
  return std::max(kMinEchoClasses, n | 1u);
}

double max_bloch_step(const BlochEnsembleState& state, const Sequence& seq, const IonParameters& ions) {
  double max_det = 0.0;
  for (double d : state.detunings) max_det = std::max(max_det, std::abs(d));
  const double omega = seq.max_rabi();
  const double offset = kTwoPi * (max_det + seq.max_abs_carrier());
  const double generalized = std::hypot(omega, offset);
  double dt = generalized > 0.0 ? 1.0 / (10.0 * generalized) : std::numeric_limits<double>::infinity();
  return std::min(dt, ions.t2() / 100.0);
}

EvolveResult evolve(const BlochEnsembleState& initial, const Sequence& seq, const IonParameters& ions, double dt,
                    std::optional<double> t_final) {
  if (initial.size() == 0) throw std::invalid_argument("Bloch ensemble has no detuning classes");
  const double limit = max_bloch_step(initial, seq, ions);
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "Bloch step dt=" << dt << " s is too coarse; the limit is " << limit << " s";
    throw std::invalid_argument(msg.str());
  }
  const double t_stop = t_final.value_or(seq.t_end());
  const auto n_samples = static_cast<std::size_t>(std::ceil(t_stop / dt - 1e-9)) + 1;
  const auto steps = build_substeps(seq, dt, n_samples);

  const double g1 = decay_rate(ions.t1());
  const double g2 = decay_rate(ions.t2());
  double weight_sum = 0.0;
  for (double wgt : initial.weights) weight_sum += wgt;
  if (!(weight_sum > 0.0)) throw std::invalid_argument("class weights must sum to a positive value");

  EvolveResult result;
  result.state = initial;
  std::vector<std::complex<double>> coherence(n_samples);
  std::vector<double> inversion(n_samples);
  auto& st = result.state;

  // Classes are integrated one at a time and reduced in class order, so the emitted
  // field is bit-stable.
  for (std::size_t k = 0; k < st.size(); ++k) {
    const double wz = kTwoPi * st.detunings[k];
    const double weight = st.weights[k];
    double u = st.u[k];
    double v = st.v[k];
    double w = st.w[k];
    std::size_t sample = 0;
    coherence[0] += weight * std::complex<double>(u, v);
    inversion[0] += weight * w;
    for (const auto& s : steps) {
      const double h = s.h;
      const auto k1 = bloch_rates(u, v, w, s.drive[0], wz, g2, g1);
      const auto k2 = bloch_rates(u + 0.5 * h * k1.du, v + 0.5 * h * k1.dv, w + 0.5 * h * k1.dw, s.drive[1], wz, g2, g1);
      const auto k3 = bloch_rates(u + 0.5 * h * k2.du, v + 0.5 * h * k2.dv, w + 0.5 * h * k2.dw, s.drive[1], wz, g2, g1);
      const auto k4 = bloch_rates(u + h * k3.du, v + h * k3.dv, w + h * k3.dw, s.drive[2], wz, g2, g1);
      u += h / 6.0 * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du);
      v += h / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
      w += h / 6.0 * (k1.dw + 2.0 * k2.dw + 2.0 * k3.dw + k4.dw);
      if (s.ends_on_sample) {
        ++sample;
        coherence[sample] += weight * std::complex<double>(u, v);
        inversion[sample] += weight * w;
      }
    }
    st.u[k] = u;
    st.v[k] = v;
    st.w[k] = w;
  }

  const std::complex<double> radiate(0.0, 1.0 / weight_sum);
  for (auto& c : coherence) c *= radiate;
  for (auto& x : inversion) x /= weight_sum;
  result.field = FieldTrace(dt, 0.0, std::move(coherence));
  result.mean_inversion = std::move(inversion);
  return result;
}

EchoPoint two_pulse_echo(double t1, double t2, double tau, double omega, const IonParameters& ions, double bandwidth,
                         std::size_t n_classes, const EchoOptions& options) {
  if (n_classes < kMinEchoClasses) {
    std::ostringstream msg;
    msg << "two-pulse echo needs at least " << kMinEchoClasses << " detuning classes";
    throw std::invalid_argument(msg.str());
  }
  if (!(omega > 0.0)) throw std::invalid_argument("echo Rabi frequency must be positive");
  if (tau + t1 + t2 > 5.0 * ions.t2()) warn("echo sequence extends beyond 5 T2; the echo is deeply decayed");

  const auto seq = echo_sequence(t1, t2, tau, omega);
  auto detunings = uniform_classes(bandwidth, n_classes);
  std::vector<double> weights;
  if (options.profile) {
    const auto od = options.profile->od();
    for (double d : detunings) weights.push_back(interpolate(od, options.profile->grid(), d));
  }
  const double t_stop = std::max(2.5 * tau, seq.t_end());
  const double revival = static_cast<double>(n_classes - 1) / bandwidth;
  if (revival < t_stop) {
    std::ostringstream msg;
    msg << "class spacing revives the ensemble at " << revival << " s, inside the " << t_stop
        << " s observation window; increase n_classes";
    warn(msg.str());
  }

  const auto state = BlochEnsembleState::ground(std::move(detunings), std::move(weights));
  const double dt = options.dt > 0.0 ? options.dt : 0.5 * max_bloch_step(state, seq, ions);
  auto evolved = evolve(state, seq, ions, dt, t_stop);

  EchoPoint point;
  const auto& f = evolved.field;
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double t = f.time(n);
    if (t < 1.5 * tau || t > 2.5 * tau) continue;
    const double p = std::norm(f.samples[n]);
    if (p > point.intensity) {
      point.intensity = p;
      point.echo_time = t;
    }
  }
  point.field = std::move(evolved.field);
  return point;
}

EchoScanResult rabi_scan(double t1, const std::vector<double>& t2_values, double tau, double omega,
                         const IonParameters& ions, double bandwidth, std::size_t n_classes,
                         const EchoOptions& options) {
  if (!std::is_sorted(t2_values.begin(), t2_values.end())) throw std::invalid_argument("t2 scan values must be sorted");
  EchoScanResult out;
  for (double t2 : t2_values) {
    if (t2 < 0.0) throw std::invalid_argument("t2 scan values must be non-negative");
    out.scan_values.push_back(t2);
    out.echo_intensity.push_back(two_pulse_echo(t1, t2, tau, omega, ions, bandwidth, n_classes, options).intensity);
  }
  return out;
}

EchoScanResult echo_decay_scan(double t1, double t2, const std::vector<double>& taus, double omega,
                               const IonParameters& ions, double bandwidth, std::size_t n_classes,
                               const EchoOptions& options) {
  EchoScanResult out;
  for (double tau : taus) {
    out.scan_values.push_back(tau);
    out.echo_intensity.push_back(two_pulse_echo(t1, t2, tau, omega, ions, bandwidth, n_classes, options).intensity);
  }
  return out;
}

}  // namespace afc
