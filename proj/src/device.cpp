#include "afc/device.hpp"

#include <cmath>
#include <stdexcept>

namespace afc {

DeviceModel::DeviceModel(double mode_area_m2, double length_m, double coupling_in, double coupling_out,
                         double rabi_anchor_power_w, double rabi_anchor_rad_s, double rabi_anchor_area_m2)
    : mode_area_(mode_area_m2),
      length_(length_m),
      coupling_in_(coupling_in),
      coupling_out_(coupling_out),
      anchor_power_(rabi_anchor_power_w),
      anchor_rabi_(rabi_anchor_rad_s),
      anchor_area_(rabi_anchor_area_m2) {
  if (!(mode_area_m2 > 0.0)) throw std::invalid_argument("device mode area must be positive");
  if (!(length_m >= 0.0)) throw std::invalid_argument("device length must be non-negative");
  if (!(coupling_in > 0.0 && coupling_in <= 1.0)) throw std::invalid_argument("coupling_in must be in (0, 1]");
  if (!(coupling_out > 0.0 && coupling_out <= 1.0)) throw std::invalid_argument("coupling_out must be in (0, 1]");
  if (!(rabi_anchor_power_w > 0.0)) throw std::invalid_argument("Rabi anchor power must be positive");
  if (!(rabi_anchor_rad_s > 0.0)) throw std::invalid_argument("Rabi anchor frequency must be positive");
  if (!(rabi_anchor_area_m2 > 0.0)) throw std::invalid_argument("Rabi anchor area must be positive");
}

DeviceModel DeviceModel::reference() {
  return DeviceModel(0.07e-12, 0.8e-3, 1e-3, 1e-3, 1e-6, 4.49e7, 0.07e-12);
}

double DeviceModel::rabi_calibration() const noexcept {
  return anchor_rabi_ / std::sqrt(anchor_power_ / anchor_area_);
}

DeviceModel DeviceModel::with_mode_area(double mode_area_m2) const {
  DeviceModel out = *this;
  if (!(mode_area_m2 > 0.0)) throw std::invalid_argument("device mode area must be positive");
  out.mode_area_ = mode_area_m2;
  return out;
}

double in_waveguide_power(const DeviceModel& device, double input_power_w) {
  if (!(input_power_w >= 0.0)) throw std::invalid_argument("input power must be non-negative");
  return input_power_w * device.coupling_in();
}

double end_to_end_transmission(const DeviceModel& device) {
  return device.coupling_in() * device.coupling_out();
}

double rabi_from_power(const DeviceModel& device, double power_in_waveguide_w) {
  if (!(power_in_waveguide_w >= 0.0)) throw std::invalid_argument("power must be non-negative");
  // Ratios relative to the anchor keep the anchor exact and the sqrt-law exact under
  // power-of-two scaling.
  const double ratio = (power_in_waveguide_w / device.rabi_anchor_power()) *
                       (device.rabi_anchor_area() / device.mode_area());
  return device.rabi_anchor_rabi() * std::sqrt(ratio);
}

double power_for_rabi(const DeviceModel& device, double rabi_rad_s) {
  if (!(rabi_rad_s >= 0.0)) throw std::invalid_argument("Rabi frequency must be non-negative");
  const double r = rabi_rad_s / device.rabi_anchor_rabi();
  return r * r * device.rabi_anchor_power() * (device.mode_area() / device.rabi_anchor_area());
}

double equal_rabi_power_ratio(double area_a_m2, double area_b_m2) {
  if (!(area_a_m2 > 0.0) || !(area_b_m2 > 0.0)) throw std::invalid_argument("mode areas must be positive");
  return area_a_m2 / area_b_m2;
}

double pulse_area(double rabi_rad_s, double duration_s) { return rabi_rad_s * duration_s; }

double duration_for_area(double rabi_rad_s, double area_rad) {
  if (!(rabi_rad_s > 0.0)) throw std::invalid_argument("Rabi frequency must be positive");
  return area_rad / rabi_rad_s;
}

}  // namespace afc
