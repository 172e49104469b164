#include "afc/io.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace afc::io {
namespace {

std::string fmt(double value, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::string g(double value) { return fmt(value, 12); }

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + ": '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("trailing characters in " + what + ": '" + text + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string exact(double value) { return fmt(value, 17); }

void write_profile(std::ostream& os, const InhomogeneousProfile& profile) {
  const auto& grid = profile.grid();
  os << "# span_hz=" << exact(grid.span()) << '\n';
  os << "# n_points=" << grid.size() << '\n';
  os << "# length_m=" << exact(profile.length()) << '\n';
  os << "detuning_hz,od\n";
  for (std::size_t k = 0; k < grid.size(); ++k) os << exact(grid.frequency(k)) << ',' << exact(profile.od()[k]) << '\n';
}

InhomogeneousProfile read_profile(std::istream& is) {
  std::map<std::string, std::string> header;
  std::vector<double> od;
  std::string line;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) header[trim(line.substr(1, eq - 1))] = trim(line.substr(eq + 1));
      continue;
    }
    if (line == "detuning_hz,od") continue;
    const auto cells = split_csv(line);
    if (cells.size() != 2) throw std::invalid_argument("profile row must have two columns: '" + line + "'");
    od.push_back(parse_double(cells[1], "profile od"));
  }
  for (const char* key : {"span_hz", "n_points", "length_m"}) {
    if (!header.count(key)) throw std::invalid_argument(std::string("profile header is missing ") + key);
  }
  const auto n = static_cast<std::size_t>(std::stoull(header["n_points"]));
  if (n != od.size()) throw std::invalid_argument("profile row count does not match n_points");
  return InhomogeneousProfile(SpectralGrid(parse_double(header["span_hz"], "span_hz"), n), std::move(od),
                              parse_double(header["length_m"], "length_m"));
}

void write_sequence(std::ostream& os, const Sequence& seq, const HeaderLines& header) {
  for (const auto& [key, value] : header) os << "# " << key << '=' << value << '\n';
  os << "# t_end_s=" << exact(seq.t_end()) << '\n';
  os << "# t_start_s,duration_s,peak_rabi_rad_s,carrier_offset_hz,phase_rad,shape[,rise_s]\n";
  for (const auto& p : seq.pulses()) {
    os << exact(p.t_start) << ',' << exact(p.duration) << ',' << exact(p.peak_rabi) << ',' << exact(p.carrier_offset)
       << ',' << exact(p.phase) << ',';
    if (p.shape == PulseShape::square) {
      os << "square\n";
    } else {
      os << "square_with_rise," << exact(p.rise_time) << '\n';
    }
  }
}

Sequence read_sequence(std::istream& is) {
  std::vector<Pulse> pulses;
  double t_end = -1.0;
  std::string line;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("t_end_s=");
      if (pos != std::string::npos) t_end = parse_double(trim(line.substr(pos + 8)), "t_end_s");
      continue;
    }
    const auto c = split_csv(line);
    if (c.size() < 6) throw std::invalid_argument("sequence row needs at least 6 columns: '" + line + "'");
    Pulse p;
    p.t_start = parse_double(c[0], "t_start_s");
    p.duration = parse_double(c[1], "duration_s");
    p.peak_rabi = parse_double(c[2], "peak_rabi_rad_s");
    p.carrier_offset = parse_double(c[3], "carrier_offset_hz");
    p.phase = parse_double(c[4], "phase_rad");
    const auto shape = trim(c[5]);
    if (shape == "square") {
      p.shape = PulseShape::square;
    } else if (shape == "square_with_rise") {
      p.shape = PulseShape::square_with_rise;
      p.rise_time = c.size() > 6 ? parse_double(c[6], "rise_s") : kDefaultRiseTime;
    } else {
      throw std::invalid_argument("unknown pulse shape '" + shape + "'");
    }
    pulses.push_back(p);
  }
  if (t_end < 0.0) t_end = pulses.empty() ? 0.0 : pulses.back().t_end();
  return Sequence(std::move(pulses), t_end);
}

void write_spectrum(std::ostream& os, const EnvelopeSpectrum& spec) {
  os << "# span_hz=" << exact(spec.grid.span()) << '\n';
  os << "# n_points=" << spec.grid.size() << '\n';
  os << "frequency_hz,re,im,power\n";
  for (std::size_t k = 0; k < spec.amplitude.size(); ++k) {
    const auto a = spec.amplitude[k];
    os << g(spec.grid.frequency(k)) << ',' << g(a.real()) << ',' << g(a.imag()) << ',' << g(std::norm(a)) << '\n';
  }
}

void write_absorption(std::ostream& os, const std::vector<double>& frequencies, const std::vector<double>& od) {
  os << "frequency_hz,od\n";
  for (std::size_t k = 0; k < frequencies.size(); ++k) os << g(frequencies[k]) << ',' << g(od[k]) << '\n';
}

void write_trace(std::ostream& os, const FieldTrace& trace) {
  os << "# dt_s=" << exact(trace.dt) << '\n';
  os << "t_s,re,im,power\n";
  for (std::size_t n = 0; n < trace.size(); ++n) {
    const auto s = trace.samples[n];
    os << g(trace.time(n)) << ',' << g(s.real()) << ',' << g(s.imag()) << ',' << g(std::norm(s)) << '\n';
  }
}

void write_echo_header(std::ostream& os) { os << "delta_f_hz,echo_time_s,efficiency,transmitted_fraction\n"; }

void write_echo_row(std::ostream& os, double delta_f_hz, const EchoResult& echo) {
  os << g(delta_f_hz) << ',' << g(echo.echo_time) << ',' << g(echo.efficiency) << ',' << g(echo.transmitted_fraction)
     << '\n';
}

void write_scan(std::ostream& os, const EchoScanResult& scan, const std::string& scan_name) {
  os << "# scan=" << scan_name << '\n';
  os << "scan_value,echo_intensity\n";
  for (std::size_t i = 0; i < scan.scan_values.size(); ++i)
    os << g(scan.scan_values[i]) << ',' << g(scan.echo_intensity[i]) << '\n';
}

void write_comb(std::ostream& os, const CombAnalysis& comb) {
  os << "spacing_hz=" << g(comb.spacing) << '\n';
  os << "mean_fwhm_hz=" << g(comb.mean_fwhm) << '\n';
  os << "finesse=" << g(comb.finesse) << '\n';
  os << "od_contrast=" << g(comb.od_contrast) << '\n';
  os << "background_od=" << g(comb.background_od) << '\n';
  os << "n_teeth=" << comb.teeth.size() << '\n';
  os << "center_hz,fwhm_hz,peak_od,prominence,complete\n";
  for (const auto& t : comb.teeth)
    os << g(t.center) << ',' << g(t.fwhm) << ',' << g(t.peak_od) << ',' << g(t.prominence) << ',' << (t.complete ? 1 : 0)
       << '\n';
}

void write_efficiency_table(std::ostream& os, const std::vector<StoragePoint>& rows) {
  os << "storage_time_s,efficiency,finesse,od_contrast\n";
  for (const auto& r : rows)
    os << g(r.storage_time) << ',' << g(r.echo.efficiency) << ',' << g(r.comb.finesse) << ',' << g(r.comb.od_contrast)
       << '\n';
}

}  // namespace afc::io
