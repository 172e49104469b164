// Named experiments built from a flat config.

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "afc/app/config.hpp"

namespace afc::app {

struct Artifact {
  std::string name;
  std::string content;
};

struct Outcome {
  std::vector<Artifact> files;
  // Key metrics in a fixed order; the sweep table uses them as columns.
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> notes;
  int status = 0;  // 0, or 4 when the analysis found no echo / no comb
};

struct PreparedExperiment {
  std::string name;
  std::function<Outcome()> execute;
};

inline constexpr const char* kDefaultOutputDir = "afc_out";

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"burn_and_probe", "store_recall", "echo_decay",
                                                 "rabi_scan",      "spectrum",     "efficiency_sweep"};
  return names;
}

// Reads and validates every key the experiment needs. Throws ConfigError.
PreparedExperiment prepare(const Config& cfg);

}  // namespace afc::app
