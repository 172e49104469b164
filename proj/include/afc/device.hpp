// Power and Rabi-frequency calibration chain of the waveguide device.

#pragma once

namespace afc {

/// Waveguide device with coupling losses and a Rabi-frequency anchor.
/// The drive scales as Omega = c_r * sqrt(P / A); c_r is fixed by one anchor point.
class DeviceModel {
 public:
  DeviceModel(double mode_area_m2, double length_m, double coupling_in, double coupling_out,
              double rabi_anchor_power_w, double rabi_anchor_rad_s, double rabi_anchor_area_m2);

  // 0.07 um^2 mode, 0.8 mm, 0.1 % couplers, 1 uW -> 4.49e7 rad/s.
  static DeviceModel reference();

  double mode_area() const noexcept { return mode_area_; }
  double length() const noexcept { return length_; }
  double coupling_in() const noexcept { return coupling_in_; }
  double coupling_out() const noexcept { return coupling_out_; }
  double rabi_anchor_power() const noexcept { return anchor_power_; }
  double rabi_anchor_rabi() const noexcept { return anchor_rabi_; }
  double rabi_anchor_area() const noexcept { return anchor_area_; }

  // c_r in rad/s per sqrt(W/m^2).
  double rabi_calibration() const noexcept;

  DeviceModel with_mode_area(double mode_area_m2) const;

 private:
  double mode_area_;
  double length_;
  double coupling_in_;
  double coupling_out_;
  double anchor_power_;
  double anchor_rabi_;
  double anchor_area_;
};

double in_waveguide_power(const DeviceModel& device, double input_power_w);
double end_to_end_transmission(const DeviceModel& device);

// Omega for a power in the waveguide, using the device's own mode area.
double rabi_from_power(const DeviceModel& device, double power_in_waveguide_w);
// Inverse of rabi_from_power.
double power_for_rabi(const DeviceModel& device, double rabi_rad_s);

// Power ratio P_a / P_b that gives equal Rabi frequency in mode areas a and b.
double equal_rabi_power_ratio(double area_a_m2, double area_b_m2);

// Pulse-area bookkeeping: theta = Omega * duration.
double pulse_area(double rabi_rad_s, double duration_s);
double duration_for_area(double rabi_rad_s, double area_rad);

}  // namespace afc
