// Text file formats. All files are UTF-8 with LF line endings and '#'-prefixed headers.

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "afc/analysis.hpp"
#include "afc/bloch.hpp"
#include "afc/field_trace.hpp"
#include "afc/memory.hpp"
#include "afc/sequencer.hpp"
#include "afc/spectral.hpp"
#include "afc/storage_scan.hpp"

namespace afc::io {

using HeaderLines = std::vector<std::pair<std::string, std::string>>;

// Shortest round-trip-safe rendering ("%.17g").
std::string exact(double value);

// `# span_hz=`, `# n_points=`, `# length_m=` then `detuning_hz,od` rows at 17 digits.
void write_profile(std::ostream& os, const InhomogeneousProfile& profile);
InhomogeneousProfile read_profile(std::istream& is);

// One pulse per row: t_start_s,duration_s,peak_rabi_rad_s,carrier_offset_hz,phase_rad,shape[,rise_s]
void write_sequence(std::ostream& os, const Sequence& seq, const HeaderLines& header = {});
Sequence read_sequence(std::istream& is);

// frequency_hz,re,im,power
void write_spectrum(std::ostream& os, const EnvelopeSpectrum& spec);
// frequency_hz,od
void write_absorption(std::ostream& os, const std::vector<double>& frequencies, const std::vector<double>& od);
// t_s,re,im,power
void write_trace(std::ostream& os, const FieldTrace& trace);

// delta_f_hz,echo_time_s,efficiency,transmitted_fraction
void write_echo_header(std::ostream& os);
void write_echo_row(std::ostream& os, double delta_f_hz, const EchoResult& echo);

// scan_value,echo_intensity
void write_scan(std::ostream& os, const EchoScanResult& scan, const std::string& scan_name);

// Key-value block followed by per-tooth rows center_hz,fwhm_hz,peak_od,prominence,complete.
void write_comb(std::ostream& os, const CombAnalysis& comb);

// storage_time_s,efficiency,finesse,od_contrast
void write_efficiency_table(std::ostream& os, const std::vector<StoragePoint>& rows);

}  // namespace afc::io
