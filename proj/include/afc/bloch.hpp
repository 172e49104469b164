// Two-level Bloch dynamics across inhomogeneous detuning classes.
//
// Per class (detuning d in Hz, complex drive W(t) = Omega(t) exp(i phi(t))):
//   du/dt = -Omega sin(phi) w - 2 pi d v - u/T2
//   dv/dt =  2 pi d u + Omega cos(phi) w - v/T2
//   dw/dt = -Omega cos(phi) v + Omega sin(phi) u - (w + 1)/T1
// integrated with fixed-step classical RK4. The radiated field is in quadrature with
// the ensemble coherence: E(t) = i * sum_k weight_k (u_k + i v_k) / sum_k weight_k.

#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "afc/field_trace.hpp"
#include "afc/sequencer.hpp"
#include "afc/spectral.hpp"

namespace afc {

struct BlochEnsembleState {
  std::vector<double> detunings;  // Hz
  std::vector<double> weights;
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> w;

  // All classes in the ground state (0, 0, -1).
  static BlochEnsembleState ground(std::vector<double> detunings, std::vector<double> weights = {});
  std::size_t size() const noexcept { return detunings.size(); }
  double norm(std::size_t k) const noexcept { return u[k] * u[k] + v[k] * v[k] + w[k] * w[k]; }
};

// n classes spread uniformly over [-bandwidth/2, +bandwidth/2], endpoints included.
std::vector<double> uniform_classes(double bandwidth, std::size_t n_classes);

struct EvolveResult {
  BlochEnsembleState state;
  FieldTrace field;                 // E(t) at n*dt, n = 0..ceil(t_final/dt)
  std::vector<double> mean_inversion;  // weighted mean w at the same times
};

// Largest dt evolve() accepts: min(1 / (10 max generalized Rabi), T2 / 100).
double max_bloch_step(const BlochEnsembleState& state, const Sequence& seq, const IonParameters& ions);

EvolveResult evolve(const BlochEnsembleState& initial, const Sequence& seq, const IonParameters& ions, double dt,
                    std::optional<double> t_final = std::nullopt);

struct EchoOptions {
  double dt = 0.0;  // 0 selects half the largest admissible step
  // Class weights from a profile instead of a flat distribution.
  std::optional<InhomogeneousProfile> profile;
};

struct EchoPoint {
  double intensity = 0.0;   // max |E|^2 over [1.5 tau, 2.5 tau]
  double echo_time = 0.0;   // time of that maximum
  FieldTrace field;
};

struct EchoScanResult {
  std::vector<double> scan_values;
  std::vector<double> echo_intensity;
};

inline constexpr std::size_t kMinEchoClasses = 201;

EchoPoint two_pulse_echo(double t1, double t2, double tau, double omega, const IonParameters& ions,
                         double bandwidth, std::size_t n_classes, const EchoOptions& options = {});

// Echo intensity versus rephasing-pulse duration at fixed t1 and tau.
EchoScanResult rabi_scan(double t1, const std::vector<double>& t2_values, double tau, double omega,
                         const IonParameters& ions, double bandwidth, std::size_t n_classes,
                         const EchoOptions& options = {});

// Echo intensity versus delay tau at fixed pulses.
EchoScanResult echo_decay_scan(double t1, double t2, const std::vector<double>& taus, double omega,
                               const IonParameters& ions, double bandwidth, std::size_t n_classes,
                               const EchoOptions& options = {});

// Class count whose rephasing revival (n-1)/bandwidth lies beyond the observation time.
std::size_t recommended_classes(double bandwidth, double observation_time);

}  // namespace afc
