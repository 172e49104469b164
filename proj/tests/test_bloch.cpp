#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "afc/analysis.hpp"
#include "afc/bloch.hpp"
#include "afc/diagnostics.hpp"
#include "oracles.hpp"

using namespace afc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;
const double kInf = std::numeric_limits<double>::infinity();
const IonParameters kNoDecay(kInf, kInf);

Sequence one_pulse(double duration, double rabi, double phase = 0.0, double t_end = 0.0) {
  Pulse p;
  p.duration = duration;
  p.peak_rabi = rabi;
  p.phase = phase;
  return Sequence({p}, std::max(t_end, duration));
}

int first_local_max(const EchoScanResult& s) {
  for (std::size_t i = 1; i + 1 < s.echo_intensity.size(); ++i) {
    if (s.echo_intensity[i] >= s.echo_intensity[i - 1] && s.echo_intensity[i] > s.echo_intensity[i + 1])
      return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

TEST_CASE("pi and 2 pi rotations on resonance") {
  const double omega = 2.0 * kPi * 5e6;
  const auto state = BlochEnsembleState::ground({0.0});
  const auto pi = evolve(state, one_pulse(kPi / omega, omega), kNoDecay, 1e-11);
  CHECK_THAT(pi.state.w[0], WithinAbs(1.0, 1e-6));
  const auto two_pi = evolve(state, one_pulse(2.0 * kPi / omega, omega), kNoDecay, 1e-11);
  CHECK_THAT(two_pi.state.w[0], WithinAbs(-1.0, 1e-6));
  CHECK_THAT(two_pi.state.u[0], WithinAbs(0.0, 1e-6));
}

TEST_CASE("detuned pulse matches the rotation-matrix oracle") {
  const double omega = 2.0 * kPi * 5e6;
  const double delta = 3e6;
  const double phase = 0.3;
  const auto seq = one_pulse(60e-9, omega, phase, 100e-9);
  const auto r = evolve(BlochEnsembleState::ground({delta}), seq, kNoDecay, 0.25e-9);
  double u = 0.0, v = 0.0, w = -1.0;
  oracle::rotate(u, v, w, -omega * std::cos(phase), -omega * std::sin(phase), 2.0 * kPi * delta, 60e-9);
  oracle::rotate(u, v, w, 0.0, 0.0, 2.0 * kPi * delta, 40e-9);
  CHECK_THAT(r.state.u[0], WithinAbs(u, 1e-6));
  CHECK_THAT(r.state.v[0], WithinAbs(v, 1e-6));
  CHECK_THAT(r.state.w[0], WithinAbs(w, 1e-6));
}

TEST_CASE("norm is conserved without decay and shrinks with it") {
  const auto seq = echo_sequence(5e-9, 10e-9, 100e-9, kPi / 10e-9);
  auto state = BlochEnsembleState::ground(uniform_classes(40e6, 41));
  const double fine = 0.05 * max_bloch_step(state, seq, kNoDecay);
  const auto r = evolve(state, seq, kNoDecay, fine, 250e-9);
  for (std::size_t k = 0; k < r.state.size(); ++k) REQUIRE_THAT(r.state.norm(k), WithinAbs(1.0, 1e-8));

  const IonParameters decay(300e-9, 1e-6);
  const auto d = evolve(state, seq, decay, max_bloch_step(state, seq, decay), 250e-9);
  for (std::size_t k = 0; k < d.state.size(); ++k) REQUIRE(d.state.norm(k) <= 1.0 + 1e-9);
}

TEST_CASE("symmetric classes with a real drive radiate a real field") {
  const auto seq = echo_sequence(5e-9, 10e-9, 100e-9, kPi / 10e-9);
  const auto state = BlochEnsembleState::ground(uniform_classes(40e6, 201));
  const auto r = evolve(state, seq, IonParameters(1e-6, 1e-5), 0.5 * max_bloch_step(state, seq, kNoDecay), 250e-9);
  double re = 0.0, im = 0.0;
  for (const auto& e : r.field.samples) {
    re = std::max(re, std::abs(e.real()));
    im = std::max(im, std::abs(e.imag()));
  }
  CHECK(im / re < 1e-6);
}

TEST_CASE("step and ensemble validation") {
  const auto seq = one_pulse(10e-9, 1e8);
  const auto state = BlochEnsembleState::ground({0.0, 1e6});
  CHECK_THROWS_AS(evolve(state, seq, kNoDecay, 2.0 * max_bloch_step(state, seq, kNoDecay)), std::invalid_argument);
  CHECK_THROWS_AS(BlochEnsembleState::ground({}), std::invalid_argument);
  CHECK_THROWS_AS(two_pulse_echo(1e-9, 2e-9, 100e-9, 1e9, kNoDecay, 10e6, 101), std::invalid_argument);
  CHECK(recommended_classes(10e6, 1e-6) >= kMinEchoClasses);
  CHECK(static_cast<double>(recommended_classes(200e6, 2e-6) - 1) / 200e6 > 2e-6);
}

TEST_CASE("hard-pulse echo appears at 2 tau") {
  const double t1 = 0.2e-9, t2 = 0.4e-9, tau = 100e-9;
  const auto p = two_pulse_echo(t1, t2, tau, kPi / t2, kNoDecay, 40e6, 201);
  CHECK(std::abs(p.echo_time - 2.0 * tau) < t1 + t2);
  CHECK(p.intensity > 0.5);  // near-perfect rephasing of a thin ensemble
}

TEST_CASE("echo amplitude decays as exp(-2 tau / T2)") {
  const IonParameters ions(700e-9, 1e-3);
  std::vector<double> taus;
  for (double t = 175e-9; t <= 1400e-9; t += 175e-9) taus.push_back(t);
  const auto scan = echo_decay_scan(0.2e-9, 0.4e-9, taus, kPi / 0.4e-9, ions, 40e6, 201);
  std::vector<double> amp;
  for (double i : scan.echo_intensity) amp.push_back(std::sqrt(i));
  const auto fit = fit_exponential(scan.scan_values, amp);
  CHECK_THAT(fit.decay_constant, WithinRel(350e-9, 0.02));
}

TEST_CASE("rephasing-pulse area law on a narrow line") {
  std::vector<double> t2s;
  for (double t = 5e-9; t <= 100.01e-9; t += 2.5e-9) t2s.push_back(t);
  const double omega = 4.49e7;
  const auto a = rabi_scan(35e-9, t2s, 400e-9, omega, kNoDecay, 1e6, 401);
  const auto b = rabi_scan(17.5e-9, t2s, 400e-9, 2.0 * omega, kNoDecay, 1e6, 401);
  const int ia = first_local_max(a);
  const int ib = first_local_max(b);
  REQUIRE(ia > 0);
  REQUIRE(ib > 0);
  CHECK(std::abs(t2s[ia] - kPi / omega) <= 2.5e-9);
  CHECK(std::abs(t2s[ib] - 0.5 * t2s[ia]) <= 2.5e-9);
}

TEST_CASE("no rephasing pulse, no echo") {
  const auto with = two_pulse_echo(35e-9, 70e-9, 400e-9, 4.49e7, kNoDecay, 100e6, 401);
  const auto without = two_pulse_echo(35e-9, 0.0, 400e-9, 4.49e7, kNoDecay, 100e6, 401);
  // Only the free-induction tail of the first pulse reaches the window: it is largest at the
  // window's opening edge and far below the echo.
  CHECK(without.echo_time < 1.5 * 400e-9 + 1e-9);
  CHECK(without.intensity < 1e-3 * with.intensity);
  CHECK(std::abs(with.echo_time - 2.0 * 400e-9) < 70e-9);
}

TEST_CASE("echo intensity is converged in dt") {
  const IonParameters ions(700e-9, 1e-4);
  const auto coarse = two_pulse_echo(35e-9, 70e-9, 300e-9, 4.49e7, ions, 100e6, 401);
  EchoOptions fine;
  const auto state = BlochEnsembleState::ground(uniform_classes(100e6, 401));
  fine.dt = 0.25 * max_bloch_step(state, echo_sequence(35e-9, 70e-9, 300e-9, 4.49e7), ions);
  const auto refined = two_pulse_echo(35e-9, 70e-9, 300e-9, 4.49e7, ions, 100e6, 401, fine);
  CHECK_THAT(refined.intensity, WithinRel(coarse.intensity, 0.005));
}

TEST_CASE("class revival inside the window warns") {
  int warnings = 0;
  ScopedWarningSink sink([&](std::string_view) { ++warnings; });
  two_pulse_echo(1e-9, 2e-9, 200e-9, kPi / 2e-9, kNoDecay, 2e9, 201);
  CHECK(warnings >= 1);
}
