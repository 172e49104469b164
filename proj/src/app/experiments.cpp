#include "afc/app/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>

#include "afc/analysis.hpp"
#include "afc/bloch.hpp"
#include "afc/comb_synthesis.hpp"
#include "afc/device.hpp"
#include "afc/diagnostics.hpp"
#include "afc/io.hpp"
#include "afc/memory.hpp"
#include "afc/sequencer.hpp"
#include "afc/spectral.hpp"
#include "afc/storage_scan.hpp"

namespace afc::app {
namespace {

// Module constructors throw invalid_argument; attribute the failure to a key.
template <typename F>
auto checked(const std::string& key, F&& make) {
  try {
    return make();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

double positive(const Config& cfg, const std::string& key, double fallback) {
  const double v = cfg.number(key, fallback);
  if (!(v > 0.0)) throw ConfigError(key, "must be positive");
  return v;
}

double non_negative(const Config& cfg, const std::string& key, double fallback) {
  const double v = cfg.number(key, fallback);
  if (v < 0.0) throw ConfigError(key, "must not be negative");
  return v;
}

std::size_t count(const Config& cfg, const std::string& key, std::int64_t fallback, std::int64_t min) {
  const auto v = cfg.integer(key, fallback);
  if (v < min) throw ConfigError(key, "must be at least " + std::to_string(min));
  return static_cast<std::size_t>(v);
}

// Inclusive arithmetic range from start/stop/step keys.
std::vector<double> range(const Config& cfg, const std::string& prefix, double start, double stop, double step) {
  const double a = cfg.number(prefix + "_start_s", start);
  const double b = cfg.number(prefix + "_stop_s", stop);
  const double h = cfg.number(prefix + "_step_s", step);
  if (!(h > 0.0)) throw ConfigError(prefix + "_step_s", "must be positive");
  if (!(b >= a) || !(a > 0.0)) throw ConfigError(prefix + "_stop_s", "range must be positive and increasing");
  const auto n = static_cast<std::size_t>(std::floor((b - a) / h + 1e-9)) + 1;
  if (n > 100000) throw ConfigError(prefix + "_step_s", "range has too many points");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + static_cast<double>(i) * h;
  return out;
}

SpectralGrid read_grid(const Config& cfg) {
  const double span = cfg.number("grid.span_hz");
  const auto n = count(cfg, "grid.n_points", 16384, 2);
  return checked("grid.span_hz", [&] { return make_grid(span, n); });
}

IonParameters read_ions(const Config& cfg) {
  const double t2 = cfg.number("ions.t2_s", 700e-9);
  const double t1 = cfg.number("ions.t1_s", 100e-6);
  return checked("ions.t2_s", [&] { return IonParameters(t2, t1); });
}

DeviceModel read_device(const Config& cfg) {
  const auto d = DeviceModel::reference();
  const double area = cfg.number("device.mode_area_m2", d.mode_area());
  const double length = cfg.number("device.length_m", d.length());
  const double cin = cfg.number("device.coupling_in", d.coupling_in());
  const double cout = cfg.number("device.coupling_out", d.coupling_out());
  const double p = cfg.number("device.rabi_anchor_power_w", d.rabi_anchor_power());
  const double rabi = cfg.number("device.rabi_anchor_rad_s", d.rabi_anchor_rabi());
  const double a = cfg.number("device.rabi_anchor_area_m2", d.rabi_anchor_area());
  return checked("device.mode_area_m2", [&] { return DeviceModel(area, length, cin, cout, p, rabi, a); });
}

InhomogeneousProfile read_profile(const Config& cfg, const SpectralGrid& grid) {
  const double od = non_negative(cfg, "profile.od", 1.0);
  const double length = non_negative(cfg, "profile.length_m", 0.8e-3);
  return checked("profile.od", [&] { return flat_profile(grid, od, length); });
}

BurnConfig read_burn(const Config& cfg) {
  BurnConfig b;
  b.pair_separation = positive(cfg, "burn.pair_separation_s", b.pair_separation);
  b.pulse_duration = positive(cfg, "burn.pulse_duration_s", b.pulse_duration);
  b.n_pairs = static_cast<int>(count(cfg, "burn.n_pairs", b.n_pairs, 1));
  b.pair_wait = positive(cfg, "burn.pair_wait_s", b.pair_wait);
  b.peak_power_w = positive(cfg, "burn.peak_power_w", b.peak_power_w);
  b.carrier_offset = cfg.number("burn.carrier_offset_hz", b.carrier_offset);
  const auto phase = cfg.text("burn.pair_phase", "coherent");
  if (phase == "coherent") {
    b.pair_phase = PairPhase::coherent;
  } else if (phase == "randomized") {
    b.pair_phase = PairPhase::randomized;
  } else {
    throw ConfigError("burn.pair_phase", "expected coherent or randomized, got '" + phase + "'");
  }
  const auto seed = cfg.integer("seed", 0);
  if (seed < 0) throw ConfigError("seed", "must not be negative");
  b.seed = static_cast<std::uint64_t>(seed);
  return b;
}

struct Aom {
  double bandwidth = 0.0;
  double center = 0.0;
};

Aom read_aom(const Config& cfg) {
  return {non_negative(cfg, "aom.bandwidth_hz", 0.0), cfg.number("aom.center_hz", 0.0)};
}

CalibrationOptions read_calibration(const Config& cfg, const IonParameters& ions) {
  CalibrationOptions c;
  c.hole_depth_cap = cfg.number("burn.hole_depth_cap", c.hole_depth_cap);
  if (!(c.hole_depth_cap > 0.0 && c.hole_depth_cap <= 1.0)) throw ConfigError("burn.hole_depth_cap", "must lie in (0, 1]");
  c.window_lo = cfg.number("analysis.window_lo_hz", c.window_lo);
  c.window_hi = cfg.number("analysis.window_hi_hz", c.window_hi);
  if (!(c.window_hi > c.window_lo)) throw ConfigError("analysis.window_hi_hz", "must exceed analysis.window_lo_hz");
  if (cfg.flag("burn.homogeneous", true)) c.ions = ions;
  return c;
}

struct Probe {
  Sequence seq;
  double dt = 0.0;
};

Probe read_probe(const Config& cfg) {
  const double duration = positive(cfg, "probe.duration_s", 10e-9);
  const double offset = cfg.number("probe.carrier_offset_hz", 0.0);
  const double rabi = positive(cfg, "probe.rabi_rad_s", 1e6);
  const auto shape_name = cfg.text("probe.shape", "square");
  PulseShape shape = PulseShape::square;
  double rise = kDefaultRiseTime;
  if (shape_name == "square_with_rise") {
    shape = PulseShape::square_with_rise;
    rise = positive(cfg, "probe.rise_s", kDefaultRiseTime);
  } else if (shape_name != "square") {
    throw ConfigError("probe.shape", "expected square or square_with_rise, got '" + shape_name + "'");
  }
  const double dt = positive(cfg, "probe.dt_s", 0.5e-9);
  if (dt > duration / 10.0) throw ConfigError("probe.dt_s", "must resolve the probe (at most duration/10)");
  return {checked("probe.duration_s", [&] { return probe_pulse(duration, offset, rabi, shape, rise); }), dt};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

template <typename F>
std::string render(F&& write) {
  std::ostringstream os;
  write(os);
  return os.str();
}

std::string plot_lines(const std::string& file, const std::string& xlabel, const std::string& ylabel,
                       const std::string& columns) {
  return "set datafile separator ','\nset key off\nset xlabel '" + xlabel + "'\nset ylabel '" + ylabel +
         "'\nplot '" + file + "' using " + columns + " with lines\npause -1\n";
}

// ---------------------------------------------------------------------------------------------

PreparedExperiment prepare_burn_and_probe(const Config& cfg) {
  const auto grid = read_grid(cfg);
  const auto ions = read_ions(cfg);
  const auto device = read_device(cfg);
  const auto profile = read_profile(cfg, grid);
  const auto burn_cfg = read_burn(cfg);
  const auto aom = read_aom(cfg);
  const auto calibration = read_calibration(cfg, ions);
  const double target = non_negative(cfg, "burn.target_contrast", 0.23);
  checked("burn.pair_separation_s", [&] { burn_cfg.validate(); return 0; });

  return {"burn_and_probe", [=] {
            Outcome out;
            const auto seq = afc_burn_sequence(burn_cfg, device);
            auto spec = power_spectrum(seq, grid);
            if (aom.bandwidth > 0.0) spec = aom_filter(spec, aom.bandwidth, aom.center);
            // Burn through the ions' own response unless burn.homogeneous is off.
            const auto density = calibration.ions
                                     ? burn_density(seq, grid, ions.gamma_h(), aom.bandwidth, aom.center)
                                     : burn_density(spec, 0.0);
            const auto model = calibrate_burn(profile, density, target, calibration);
            const auto burned = burn(profile, density, model);
            const auto absorption = observed_absorption(burned, calibration.ions);
            const auto freqs = grid.frequencies();

            out.files.push_back({"sequence.csv", render([&](auto& os) { io::write_sequence(os, seq); })});
            out.files.push_back({"spectrum.csv", render([&](auto& os) { io::write_spectrum(os, spec); })});
            out.files.push_back({"profile.csv", render([&](auto& os) { io::write_profile(os, burned); })});
            out.files.push_back({"absorption.csv", render([&](auto& os) { io::write_absorption(os, freqs, absorption); })});
            out.files.push_back({"plot.gp", plot_lines("absorption.csv", "detuning (Hz)", "OD", "1:2")});
            out.metrics.emplace_back("kappa", model.kappa);
            out.metrics.emplace_back("expected_spacing_hz", 1.0 / burn_cfg.pair_separation);
            try {
              const auto comb = analyze_comb(freqs, absorption, calibration.window_lo, calibration.window_hi);
              out.files.push_back({"comb.txt", render([&](auto& os) { io::write_comb(os, comb); })});
              out.metrics.emplace_back("spacing_hz", comb.spacing);
              out.metrics.emplace_back("finesse", comb.finesse);
              out.metrics.emplace_back("od_contrast", comb.od_contrast);
              out.metrics.emplace_back("background_od", comb.background_od);
            } catch (const NotACombError& e) {
              out.notes.push_back(std::string("not a comb: ") + e.what());
              out.status = 4;
            }
            return out;
          }};
}

// Comb source for storage experiments: burned with the pulse-pair train, or synthetic.
struct CombSource {
  std::string kind;
  double finesse = 0.0;
  double tooth_od = 0.0;
  double contrast = 0.0;
  double background = 0.0;
  // > 0: finesse, contrast and background are observed values at this storage time.
  double observed_at = 0.0;
};

CombSource read_comb_source(const Config& cfg) {
  CombSource s;
  s.kind = cfg.text("comb.source", "burned");
  if (s.kind == "square") {
    s.finesse = positive(cfg, "comb.finesse", 2.0);
    s.tooth_od = non_negative(cfg, "comb.tooth_od", 1.0);
    s.background = non_negative(cfg, "comb.background_od", 0.0);
    if (s.finesse <= 1.0) throw ConfigError("comb.finesse", "must exceed 1");
  } else if (s.kind == "shaped") {
    s.finesse = positive(cfg, "comb.finesse", 1.7);
    s.contrast = non_negative(cfg, "comb.contrast", 0.23);
    s.background = non_negative(cfg, "comb.background_od", 0.0);
    s.observed_at = non_negative(cfg, "comb.observed_at_s", 0.0);
    if (s.finesse <= 1.0) throw ConfigError("comb.finesse", "must exceed 1");
  } else if (s.kind != "burned") {
    throw ConfigError("comb.source", "expected burned, square or shaped, got '" + s.kind + "'");
  }
  return s;
}

struct StorageSetup {
  SpectralGrid grid;
  IonParameters ions;
  InhomogeneousProfile profile;
  DeviceModel device;
  CombSource source;
  StorageScanConfig scan;
};

StorageSetup read_storage(const Config& cfg) {
  const auto grid = read_grid(cfg);
  const auto ions = read_ions(cfg);
  auto source = read_comb_source(cfg);
  auto profile = source.kind == "burned"
                     ? read_profile(cfg, grid)
                     : flat_profile(grid, 0.0, non_negative(cfg, "profile.length_m", 0.8e-3));
  auto device = source.kind == "burned" ? read_device(cfg) : DeviceModel::reference();
  StorageSetup s{grid, ions, std::move(profile), device, std::move(source), {}};
  s.scan.storage_times = cfg.numbers("storage.times_s");
  for (double t : s.scan.storage_times) {
    if (!(t > 0.0)) throw ConfigError("storage.times_s", "storage times must be positive");
  }
  s.scan.calibration = read_calibration(cfg, ions);
  const auto probe = read_probe(cfg);
  s.scan.probe = probe.seq;
  s.scan.probe_dt = probe.dt;
  if (s.source.kind == "burned") {
    s.scan.burn = read_burn(cfg);
    s.scan.target_contrast = non_negative(cfg, "burn.target_contrast", 0.23);
    const auto aom = read_aom(cfg);
    s.scan.aom_bandwidth = aom.bandwidth;
    s.scan.aom_center = aom.center;
  }
  return s;
}

std::vector<StoragePoint> run_storage(const StorageSetup& s) {
  if (s.source.kind == "burned") return efficiency_vs_storage(s.profile, s.ions, s.scan, s.device);
  const auto input = envelope(s.scan.probe, s.scan.probe_dt);
  const auto freqs = s.grid.frequencies();
  const auto& cal = s.scan.calibration;
  ShapedCombParameters raw{s.source.finesse, s.source.contrast, s.source.background};
  if (s.source.kind == "shaped" && s.source.observed_at > 0.0)
    raw = calibrate_shaped_comb(s.grid, 1.0 / s.source.observed_at, s.ions, s.source.finesse, s.source.contrast,
                                s.source.background, cal.window_lo, cal.window_hi);
  std::vector<StoragePoint> rows;
  for (double t : s.scan.storage_times) {
    const double spacing = 1.0 / t;
    const auto comb = s.source.kind == "square"
                          ? square_tooth_comb(s.grid, spacing, s.source.finesse, s.source.tooth_od,
                                              s.source.background, 0.0, s.profile.length())
                          : shaped_comb(s.grid, spacing, raw.finesse, raw.contrast, raw.background_od, 0.0,
                                        s.profile.length());
    const auto depth = complex_depth(comb, s.ions);
    StoragePoint row;
    row.storage_time = t;
    row.comb = analyze_comb(freqs, depth.absorption(), s.scan.calibration.window_lo, s.scan.calibration.window_hi);
    row.echo = store_recall(depth, input, t);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Traces are cut after the latest expected echo plus margin.
FieldTrace trimmed(const FieldTrace& trace, double t_max) {
  std::vector<std::complex<double>> keep;
  for (std::size_t n = 0; n < trace.size() && trace.time(n) <= t_max; ++n) keep.push_back(trace.samples[n]);
  return FieldTrace(trace.dt, trace.t0, std::move(keep));
}

std::string row_key(const std::string& name, std::size_t i, std::size_t n) {
  return n == 1 ? name : name + "_" + std::to_string(i);
}

PreparedExperiment prepare_store_recall(const Config& cfg) {
  const auto s = read_storage(cfg);
  return {"store_recall", [s] {
            Outcome out;
            const auto rows = run_storage(s);
            const auto input = envelope(s.scan.probe, s.scan.probe_dt);
            double t_max = 0.0;
            for (double t : s.scan.storage_times) t_max = std::max(t_max, t);
            const double cut = input.t0 + 3.0 * t_max + 4.0 * input.duration();
            std::ostringstream echo;
            io::write_echo_header(echo);
            out.files.push_back({"input.csv", render([&](auto& os) { io::write_trace(os, input); })});
            std::string plot = "set datafile separator ','\nset xlabel 't (s)'\nset ylabel 'power'\nplot ";
            for (std::size_t i = 0; i < rows.size(); ++i) {
              const auto& r = rows[i];
              io::write_echo_row(echo, 1.0 / r.storage_time, r.echo);
              const auto name = "output_" + std::to_string(i) + ".csv";
              out.files.push_back({name, render([&](auto& os) { io::write_trace(os, trimmed(r.echo.output_trace, cut)); })});
              plot += std::string(i ? ", " : "") + "'" + name + "' using 1:4 with lines title 'T=" + fmt(r.storage_time) + " s'";
              out.metrics.emplace_back(row_key("echo_time_s", i, rows.size()), r.echo.echo_time);
              out.metrics.emplace_back(row_key("efficiency", i, rows.size()), r.echo.efficiency);
              out.metrics.emplace_back(row_key("finesse", i, rows.size()), r.comb.finesse);
              if (!r.echo.echo_detected) {
                out.notes.push_back("no echo detected for storage time " + fmt(r.storage_time) + " s");
                out.status = 4;
              }
            }
            out.files.push_back({"echo.csv", echo.str()});
            out.files.push_back({"plot.gp", plot + "\npause -1\n"});
            return out;
          }};
}

PreparedExperiment prepare_efficiency_sweep(const Config& cfg) {
  const auto s = read_storage(cfg);
  return {"efficiency_sweep", [s] {
            Outcome out;
            const auto rows = run_storage(s);
            std::ostringstream table;
            table << "storage_time_s,efficiency,finesse,od_contrast,background_od,echo_time_s";
            if (s.source.kind == "square") table << ",analytic_efficiency";
            table << '\n';
            for (std::size_t i = 0; i < rows.size(); ++i) {
              const auto& r = rows[i];
              table << io::exact(r.storage_time) << ',' << io::exact(r.echo.efficiency) << ','
                    << io::exact(r.comb.finesse) << ',' << io::exact(r.comb.od_contrast) << ','
                    << io::exact(r.comb.background_od) << ',' << io::exact(r.echo.echo_time);
              if (s.source.kind == "square")
                table << ',' << io::exact(afc_efficiency_analytic(s.source.tooth_od, s.source.finesse, s.source.background));
              table << '\n';
              out.files.push_back({"comb_" + std::to_string(i) + ".txt", render([&](auto& os) { io::write_comb(os, r.comb); })});
              out.metrics.emplace_back(row_key("efficiency", i, rows.size()), r.echo.efficiency);
              if (!r.echo.echo_detected) {
                out.notes.push_back("no echo detected for storage time " + fmt(r.storage_time) + " s");
                out.status = 4;
              }
            }
            out.files.push_back({"efficiency.csv", table.str()});
            out.files.push_back({"plot.gp", plot_lines("efficiency.csv", "storage time (s)", "efficiency", "1:2")});
            return out;
          }};
}

struct BlochSetup {
  IonParameters ions;
  double bandwidth;
  std::size_t n_classes;
  EchoOptions options;
};

BlochSetup read_bloch(const Config& cfg) {
  BlochSetup b{read_ions(cfg), positive(cfg, "bloch.bandwidth_hz", 40e6),
               count(cfg, "bloch.n_classes", 401, 2), {}};
  b.options.dt = non_negative(cfg, "bloch.dt_s", 0.0);
  return b;
}

std::string scan_table(const EchoScanResult& scan, const std::string& name) {
  std::ostringstream os;
  os << "# scan=" << name << '\n' << "scan_value,echo_intensity,echo_amplitude\n";
  for (std::size_t i = 0; i < scan.scan_values.size(); ++i)
    os << io::exact(scan.scan_values[i]) << ',' << io::exact(scan.echo_intensity[i]) << ','
       << io::exact(std::sqrt(scan.echo_intensity[i])) << '\n';
  return os.str();
}

PreparedExperiment prepare_echo_decay(const Config& cfg) {
  const auto b = read_bloch(cfg);
  const double t1 = positive(cfg, "echo.t1_s", 1e-9);
  const double t2 = non_negative(cfg, "echo.t2_s", 2e-9);
  const double omega = positive(cfg, "echo.rabi_rad_s", std::numbers::pi / 2e-9);
  const auto taus = range(cfg, "echo.tau", 150e-9, 600e-9, 50e-9);
  if (taus.size() < 3) throw ConfigError("echo.tau_step_s", "need at least three delays to fit");
  if (taus.front() <= t1 + t2) throw ConfigError("echo.tau_start_s", "must exceed echo.t1_s + echo.t2_s");
  return {"echo_decay", [=] {
            Outcome out;
            const auto scan = echo_decay_scan(t1, t2, taus, omega, b.ions, b.bandwidth, b.n_classes, b.options);
            std::vector<double> amplitude;
            for (double i : scan.echo_intensity) amplitude.push_back(std::sqrt(i));
            const auto fit = fit_exponential(scan.scan_values, amplitude);
            out.files.push_back({"scan.csv", scan_table(scan, "tau_s")});
            out.files.push_back({"plot.gp", plot_lines("scan.csv", "tau (s)", "echo amplitude", "1:3")});
            out.metrics.emplace_back("decay_constant_s", fit.decay_constant);
            out.metrics.emplace_back("decay_std_error_s", fit.std_error);
            out.metrics.emplace_back("t2_s", 2.0 * fit.decay_constant);
            out.metrics.emplace_back("t2_std_error_s", 2.0 * fit.std_error);
            return out;
          }};
}

PreparedExperiment prepare_rabi_scan(const Config& cfg) {
  const auto b = read_bloch(cfg);
  const double omega = positive(cfg, "echo.rabi_rad_s", 4.49e7);
  const double t1 = positive(cfg, "echo.t1_s", 35e-9);
  const double tau = positive(cfg, "echo.tau_s", 400e-9);
  const auto t2s = range(cfg, "rabi.t2", 10e-9, 200e-9, 5e-9);
  if (tau <= t1 + t2s.back()) throw ConfigError("echo.tau_s", "must exceed echo.t1_s plus the longest rabi t2");
  return {"rabi_scan", [=] {
            Outcome out;
            const auto scan = rabi_scan(t1, t2s, tau, omega, b.ions, b.bandwidth, b.n_classes, b.options);
            out.files.push_back({"scan.csv", scan_table(scan, "t2_s")});
            out.files.push_back({"plot.gp", plot_lines("scan.csv", "t2 (s)", "echo intensity", "1:2")});
            const auto& y = scan.echo_intensity;
            std::optional<std::size_t> first;
            for (std::size_t i = 1; i + 1 < y.size() && !first; ++i) {
              if (y[i] >= y[i - 1] && y[i] > y[i + 1]) first = i;
            }
            out.metrics.emplace_back("rabi_rad_s", omega);
            out.metrics.emplace_back("rabi_cyclic_hz", omega / (2.0 * std::numbers::pi));
            out.metrics.emplace_back("pi_pulse_t2_analytic_s", std::numbers::pi / omega);
            if (first) {
              out.metrics.emplace_back("first_max_t2_s", scan.scan_values[*first]);
            } else {
              out.notes.push_back("no interior echo maximum in the scanned range");
              out.status = 4;
            }
            return out;
          }};
}

PreparedExperiment prepare_spectrum(const Config& cfg) {
  const auto grid = read_grid(cfg);
  const auto device = read_device(cfg);
  const auto burn_cfg = read_burn(cfg);
  const auto aom = read_aom(cfg);
  const double lo = cfg.number("analysis.window_lo_hz", -25e6);
  const double hi = cfg.number("analysis.window_hi_hz", 25e6);
  if (!(hi > lo)) throw ConfigError("analysis.window_hi_hz", "must exceed analysis.window_lo_hz");
  return {"spectrum", [=] {
            Outcome out;
            const auto seq = afc_burn_sequence(burn_cfg, device);
            auto spec = power_spectrum(seq, grid);
            if (aom.bandwidth > 0.0) spec = aom_filter(spec, aom.bandwidth, aom.center);
            out.files.push_back({"sequence.csv", render([&](auto& os) { io::write_sequence(os, seq); })});
            out.files.push_back({"spectrum.csv", render([&](auto& os) { io::write_spectrum(os, spec); })});
            out.files.push_back({"plot.gp", plot_lines("spectrum.csv", "frequency (Hz)", "|A|^2", "1:4")});
            out.metrics.emplace_back("total_power", spec.total_power());
            out.metrics.emplace_back("expected_fringe_spacing_hz", 1.0 / burn_cfg.pair_separation);
            try {
              out.metrics.emplace_back("fringe_spacing_hz", fringe_spacing(grid.frequencies(), spec.power(), lo, hi));
            } catch (const NotACombError& e) {
              out.notes.push_back(std::string("no fringes: ") + e.what());
              out.status = 4;
            }
            return out;
          }};
}

}  // namespace

PreparedExperiment prepare(const Config& cfg) {
  const auto name = cfg.text("experiment");
  PreparedExperiment p;
  if (name == "burn_and_probe") {
    p = prepare_burn_and_probe(cfg);
  } else if (name == "store_recall") {
    p = prepare_store_recall(cfg);
  } else if (name == "efficiency_sweep") {
    p = prepare_efficiency_sweep(cfg);
  } else if (name == "echo_decay") {
    p = prepare_echo_decay(cfg);
  } else if (name == "rabi_scan") {
    p = prepare_rabi_scan(cfg);
  } else if (name == "spectrum") {
    p = prepare_spectrum(cfg);
  } else {
    throw ConfigError("experiment", "unknown experiment '" + name + "'");
  }
  cfg.text("output.dir", kDefaultOutputDir);
  cfg.flag("output.plot", true);
  const auto unused = cfg.unused_keys();
  if (!unused.empty()) throw ConfigError(unused.front(), "unknown key for experiment " + name);
  return p;
}

}  // namespace afc::app
