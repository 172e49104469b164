#include "afc/storage_scan.hpp"

namespace afc {

std::vector<StoragePoint> efficiency_vs_storage(const InhomogeneousProfile& base, const IonParameters& ions,
                                                const StorageScanConfig& cfg, const DeviceModel& device) {
  CalibrationOptions calibration = cfg.calibration;
  if (!calibration.ions) calibration.ions = ions;
  const auto freqs = base.grid().frequencies();
  const auto input = envelope(cfg.probe, cfg.probe_dt);

  std::vector<StoragePoint> rows;
  rows.reserve(cfg.storage_times.size());
  for (double storage_time : cfg.storage_times) {
    BurnConfig burn_cfg = cfg.burn;
    burn_cfg.pair_separation = storage_time;
    const auto density = burn_density(afc_burn_sequence(burn_cfg, device), base.grid(), ions.gamma_h(),
                                      cfg.aom_bandwidth, cfg.aom_center);

    StoragePoint row;
    row.storage_time = storage_time;
    const auto model = calibrate_burn(base, density, cfg.target_contrast, calibration);
    row.kappa = model.kappa;
    const auto burned = burn(base, density, model);
    const auto depth = complex_depth(burned, ions);
    row.comb = analyze_comb(freqs, depth.absorption(), calibration.window_lo, calibration.window_hi);
    row.echo = store_recall(depth, input, storage_time);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace afc
