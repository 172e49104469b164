// Efficiency versus programmed storage time: burn, calibrate, recall, tabulate.

#pragma once

#include <vector>

#include "afc/analysis.hpp"
#include "afc/device.hpp"
#include "afc/memory.hpp"
#include "afc/sequencer.hpp"

namespace afc {

/// Storage experiment across burn periods. Each T builds the burn train, burns a
/// calibrated comb into the base profile and recalls a probe.
struct StorageScanConfig {
  BurnConfig burn;
  std::vector<double> storage_times;
  double target_contrast = 0.23;
  CalibrationOptions calibration;
  double aom_bandwidth = 0.0;  // 0 disables the AOM filter
  double aom_center = 0.0;
  Sequence probe;
  double probe_dt = 0.5e-9;
};

struct StoragePoint {
  double storage_time = 0.0;
  double kappa = 0.0;
  CombAnalysis comb;
  EchoResult echo;
};

std::vector<StoragePoint> efficiency_vs_storage(const InhomogeneousProfile& base, const IonParameters& ions,
                                                const StorageScanConfig& cfg,
                                                const DeviceModel& device = DeviceModel::reference());

}  // namespace afc
