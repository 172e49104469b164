#include "afc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "afc/diagnostics.hpp"

namespace afc {
namespace {

constexpr double kMinProminenceFraction = 0.1;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Topographic prominence of the local maximum at i.
double prominence(std::span<const double> y, std::size_t i) {
  double left_min = y[i];
  for (std::size_t j = i; j-- > 0;) {
    if (y[j] > y[i]) break;
    left_min = std::min(left_min, y[j]);
  }
  double right_min = y[i];
  for (std::size_t j = i + 1; j < y.size(); ++j) {
    if (y[j] > y[i]) break;
    right_min = std::min(right_min, y[j]);
  }
  return y[i] - std::max(left_min, right_min);
}

// First crossing below `level` walking from index `from` towards `to` (inclusive),
// linearly interpolated.
bool find_crossing(std::span<const double> x, std::span<const double> y, std::size_t from, std::size_t to,
                   double level, double& out) {
  const long long step = to > from ? 1 : -1;
  for (auto j = static_cast<long long>(from); j != static_cast<long long>(to); j += step) {
    const auto a = static_cast<std::size_t>(j);
    const auto b = static_cast<std::size_t>(j + step);
    if (y[b] < level) {
      const double w = (y[a] - level) / (y[a] - y[b]);
      out = x[a] + w * (x[b] - x[a]);
      return true;
    }
  }
  return false;
}

// Vertex of the parabola through samples i-1, i, i+1 (uniform spacing).
double parabolic_vertex(std::span<const double> x, std::span<const double> y, std::size_t i) {
  const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
  const double shift = denom != 0.0 ? 0.5 * (y[i - 1] - y[i + 1]) / denom : 0.0;
  return x[i] + shift * (x[i + 1] - x[i]);
}

}  // namespace

CombAnalysis analyze_comb(std::span<const double> frequencies, std::span<const double> values, double window_lo,
                          double window_hi) {
  if (frequencies.size() != values.size()) throw std::invalid_argument("spectrum axes differ in length");
  if (!(window_hi > window_lo)) throw std::invalid_argument("analysis window is empty");

  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t k = 0; k < frequencies.size(); ++k) {
    if (frequencies[k] >= window_lo && frequencies[k] <= window_hi) {
      x.push_back(frequencies[k]);
      y.push_back(values[k]);
    }
  }
  if (x.size() < 5) throw NotACombError("not a comb: analysis window holds too few samples");
  if (!std::is_sorted(x.begin(), x.end())) throw std::invalid_argument("frequencies must be ascending");

  const auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());
  const double range = *ymax_it - *ymin_it;
  if (!(range > 0.0)) throw NotACombError("not a comb: spectrum is flat");

  std::vector<std::size_t> peaks;
  std::vector<double> proms;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (y[i] > y[i - 1] && y[i] >= y[i + 1]) {
      const double p = prominence(y, i);
      if (p >= kMinProminenceFraction * range) {
        peaks.push_back(i);
        proms.push_back(p);
      }
    }
  }
  if (peaks.size() < 3) {
    std::ostringstream msg;
    msg << "not a comb: found " << peaks.size() << " teeth, need at least 3";
    throw NotACombError(msg.str());
  }

  CombAnalysis out;
  std::vector<double> troughs;
  for (std::size_t t = 0; t + 1 < peaks.size(); ++t)
    troughs.push_back(*std::min_element(y.begin() + static_cast<long>(peaks[t]), y.begin() + static_cast<long>(peaks[t + 1]) + 1));

  double fwhm_sum = 0.0;
  int fwhm_count = 0;
  for (std::size_t t = 0; t < peaks.size(); ++t) {
    const std::size_t i = peaks[t];
    Tooth tooth;
    tooth.peak_od = y[i];
    tooth.prominence = proms[t];
    tooth.center = parabolic_vertex(x, y, i);
    if (t > 0 && t + 1 < peaks.size()) {
      const double level = y[i] - 0.5 * proms[t];
      double lo = 0.0;
      double hi = 0.0;
      if (find_crossing(x, y, i, peaks[t - 1], level, lo) && find_crossing(x, y, i, peaks[t + 1], level, hi)) {
        tooth.fwhm = hi - lo;
        tooth.center = 0.5 * (lo + hi);  // less sensitive to ripple on a flat top
        tooth.complete = true;
        fwhm_sum += tooth.fwhm;
        ++fwhm_count;
      }
    }
    out.teeth.push_back(tooth);
  }

  std::vector<double> gaps;
  for (std::size_t t = 0; t + 1 < out.teeth.size(); ++t) gaps.push_back(out.teeth[t + 1].center - out.teeth[t].center);
  out.spacing = median(gaps);

  double peak_sum = 0.0;
  for (const auto& tooth : out.teeth) peak_sum += tooth.peak_od;
  const double mean_peak = peak_sum / static_cast<double>(out.teeth.size());
  out.background_od = std::accumulate(troughs.begin(), troughs.end(), 0.0) / static_cast<double>(troughs.size());
  out.od_contrast = std::max(0.0, mean_peak - out.background_od);
  if (fwhm_count > 0) {
    out.mean_fwhm = fwhm_sum / fwhm_count;
    out.finesse = out.spacing / out.mean_fwhm;
  }
  return out;
}

double fringe_spacing(std::span<const double> frequencies, std::span<const double> values, double window_lo,
                      double window_hi) {
  if (frequencies.size() != values.size()) throw std::invalid_argument("spectrum axes differ in length");
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t k = 0; k < frequencies.size(); ++k) {
    if (frequencies[k] >= window_lo && frequencies[k] <= window_hi) {
      x.push_back(frequencies[k]);
      y.push_back(-values[k]);
    }
  }
  if (x.size() < 5) throw NotACombError("no fringes: analysis window holds too few samples");
  const auto [lo_it, hi_it] = std::minmax_element(y.begin(), y.end());
  const double range = *hi_it - *lo_it;
  std::vector<double> minima;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (y[i] > y[i - 1] && y[i] >= y[i + 1] && prominence(y, i) >= kMinProminenceFraction * range)
      minima.push_back(parabolic_vertex(x, y, i));
  }
  if (minima.size() < 3) throw NotACombError("no fringes: fewer than 3 minima in the window");
  std::vector<double> gaps;
  for (std::size_t t = 0; t + 1 < minima.size(); ++t) gaps.push_back(minima[t + 1] - minima[t]);
  return median(gaps);
}

FitResult fit_exponential(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size()) throw std::invalid_argument("fit data lengths differ");
  if (n < 4) throw std::invalid_argument("exponential fit needs at least 4 points");

  const bool positive = std::all_of(y.begin(), y.end(), [](double v) { return v > 0.0; });
  FitResult fit;
  double rate = 0.0;
  double rate_se = 0.0;

  if (positive) {
    const double xm = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double lm = 0.0;
    for (double v : y) lm += std::log(v);
    lm /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sxx += (x[i] - xm) * (x[i] - xm);
      sxy += (x[i] - xm) * (std::log(y[i]) - lm);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("exponential fit needs distinct x values");
    const double slope = sxy / sxx;
    const double intercept = lm - slope * xm;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = std::log(y[i]) - (intercept + slope * x[i]);
      rss += r * r;
    }
    rate = -slope;
    rate_se = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
    fit.amplitude = std::exp(intercept);
  } else {
    fit.log_linear = false;
    // Start from the positive samples' log-linear estimate when possible.
    double amp = *std::max_element(y.begin(), y.end());
    const auto [xlo, xhi] = std::minmax_element(x.begin(), x.end());
    double k = 1.0 / (*xhi - *xlo);
    std::vector<double> px;
    std::vector<double> py;
    for (std::size_t i = 0; i < n; ++i) {
      if (y[i] > 0.0) {
        px.push_back(x[i]);
        py.push_back(y[i]);
      }
    }
    if (px.size() >= 4) {
      try {
        const auto guess = fit_exponential(px, py);
        amp = guess.amplitude;
        k = 1.0 / guess.decay_constant;
      } catch (const NumericalError&) {
      }
    }
    double lambda = 1e-3;
    auto rss_of = [&](double a, double kk) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - a * std::exp(-kk * x[i]);
        s += r * r;
      }
      return s;
    };
    double rss = rss_of(amp, k);
    double jaa = 0.0, jak = 0.0, jkk = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
      double ga = 0.0, gk = 0.0;
      jaa = jak = jkk = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double e = std::exp(-k * x[i]);
        const double da = e;
        const double dk = -amp * x[i] * e;
        const double r = y[i] - amp * e;
        jaa += da * da;
        jak += da * dk;
        jkk += dk * dk;
        ga += da * r;
        gk += dk * r;
      }
      bool improved = false;
      for (int tries = 0; tries < 30 && !improved; ++tries) {
        const double a11 = jaa * (1.0 + lambda);
        const double a22 = jkk * (1.0 + lambda);
        const double det = a11 * a22 - jak * jak;
        if (det == 0.0) break;
        const double step_a = (a22 * ga - jak * gk) / det;
        const double step_k = (a11 * gk - jak * ga) / det;
        const double trial = rss_of(amp + step_a, k + step_k);
        if (trial <= rss) {
          const double rel = (rss - trial) / std::max(rss, 1e-300);
          amp += step_a;
          k += step_k;
          rss = trial;
          lambda = std::max(lambda * 0.3, 1e-12);
          improved = true;
          if (rel < 1e-14) iter = 200;
        } else {
          lambda *= 10.0;
        }
      }
      if (!improved) break;
    }
    rate = k;
    fit.amplitude = amp;
    const double det = jaa * jkk - jak * jak;
    const double sigma2 = rss / static_cast<double>(n - 2);
    rate_se = det > 0.0 ? std::sqrt(sigma2 * jaa / det) : 0.0;
  }

  if (!(rate > 0.0) || !std::isfinite(rate))
    throw NumericalError("exponential fit: data is not decaying (fitted decay constant <= 0)");
  fit.decay_constant = 1.0 / rate;
  fit.std_error = rate_se / (rate * rate);
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.amplitude * std::exp(-x[i] / fit.decay_constant);
    sq += r * r;
  }
  fit.residual_rms = std::sqrt(sq / static_cast<double>(n));
  return fit;
}

double afc_efficiency_analytic(double tooth_od, double finesse, double background_od) {
  if (!(finesse > 1.0)) throw std::invalid_argument("comb finesse must exceed 1");
  if (!(tooth_od >= 0.0) || !(background_od >= 0.0)) throw std::invalid_argument("optical depths must be non-negative");
  const double d = tooth_od / finesse;
  const double arg = std::numbers::pi / finesse;
  const double sinc = std::sin(arg) / arg;
  return d * d * std::exp(-d) * sinc * sinc * std::exp(-background_od);
}

}  // namespace afc
