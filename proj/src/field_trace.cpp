#include "afc/field_trace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace afc {

FieldTrace::FieldTrace(double dt_s, double t0_s, std::vector<std::complex<double>> values)
    : dt(dt_s), t0(t0_s), samples(std::move(values)) {
  if (!(dt_s > 0.0) || !std::isfinite(dt_s)) throw std::invalid_argument("trace dt must be positive");
  for (const auto& s : samples) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw std::invalid_argument("trace samples must be finite");
  }
}

double FieldTrace::energy() const {
  double e = 0.0;
  for (const auto& s : samples) e += std::norm(s);
  return e * dt;
}

double FieldTrace::energy_between(double t_lo, double t_hi) const {
  double e = 0.0;
  for (std::size_t n = 0; n < samples.size(); ++n) {
    const double t = time(n);
    if (t >= t_lo && t <= t_hi) e += std::norm(samples[n]);
  }
  return e * dt;
}

double FieldTrace::centroid_between(double t_lo, double t_hi) const {
  double e = 0.0;
  double et = 0.0;
  for (std::size_t n = 0; n < samples.size(); ++n) {
    const double t = time(n);
    if (t >= t_lo && t <= t_hi) {
      const double p = std::norm(samples[n]);
      e += p;
      et += p * t;
    }
  }
  return e > 0.0 ? et / e : 0.5 * (t_lo + t_hi);
}

double FieldTrace::peak_power() const {
  double p = 0.0;
  for (const auto& s : samples) p = std::max(p, std::norm(s));
  return p;
}

double FieldTrace::fwhm() const {
  const double half = 0.5 * peak_power();
  if (half <= 0.0) return 0.0;
  std::size_t first = samples.size();
  std::size_t last = 0;
  for (std::size_t n = 0; n < samples.size(); ++n) {
    if (std::norm(samples[n]) >= half) {
      first = std::min(first, n);
      last = n;
    }
  }
  return static_cast<double>(last - first + 1) * dt;
}

FieldTrace FieldTrace::scaled(std::complex<double> factor) const {
  FieldTrace out = *this;
  for (auto& s : out.samples) s *= factor;
  return out;
}

}  // namespace afc
