#pragma once

// Self-check suite behind `qkr verify`: analytic identities of the kicked
// rotor plus agreement with the dense Bessel-matrix propagator. Generic over
// the propagator so that faulty implementations can be fed through it.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "qkr/dense_oracle.hpp"
#include "qkr/propagator.hpp"
#include "qkr/pulse_train.hpp"
#include "qkr/state.hpp"

namespace qkr::verify {

struct Check {
  std::string name;
  std::string expected;
  double actual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct Report {
  std::vector<Check> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }

  void print(std::ostream& os) const {
    char line[256];
    std::snprintf(line, sizeof line, "%-28s %-30s %-14s %-10s %s\n", "check", "expected", "actual", "tolerance",
                  "result");
    os << line;
    for (const auto& c : checks) {
      std::snprintf(line, sizeof line, "%-28s %-30s %-14.6g %-10.1e %s\n", c.name.c_str(), c.expected.c_str(),
                    c.actual, c.tolerance, c.passed ? "PASS" : "FAIL");
      os << line;
    }
  }
};

// Random unit state supported on |n| <= band; the rest of the ladder is empty.
inline QuantumState random_band_state(std::mt19937_64& rng, int n_max, int band, double beta = 0.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> amps(2 * static_cast<std::size_t>(n_max));
  for (int n = -band; n <= band; ++n) amps[static_cast<std::size_t>(n + n_max)] = {g(rng), g(rng)};
  return QuantumState(std::move(amps), beta);
}

template <typename Propagator>
Check anti_resonance(const Propagator& prop) {
  double worst = 1.0;
  for (double phi : {0.5, 1.0, 2.0, 3.0}) {
    const auto start = QuantumState::plane_wave(0, 0.0, 64);
    const auto end = run(start, periodic_train(2, anti_resonance_period, phi), false, prop).final_state;
    worst = std::min(worst, fidelity(start, end));
  }
  return {"anti_resonance_fidelity", ">= 1 - 1e-10", worst, 1e-10, worst >= 1.0 - 1e-10};
}

template <typename Propagator>
Check resonance_growth(const Propagator& prop) {
  double worst = 0.0;
  const double phi = 1.0;
  for (int n = 1; n <= 10; ++n) {
    const auto s = run(QuantumState::plane_wave(0, 0.0, 128), periodic_train(n, resonance_period, phi), false, prop)
                       .final_state;
    const double expected = (n * phi) * (n * phi) / 4.0;
    worst = std::max(worst, std::abs(kinetic_energy(s) - expected) / expected);
  }
  return {"resonance_energy_growth", "E_N = (N phi)^2 / 4", worst, 1e-6, worst <= 1e-6};
}

// At kbar = 4 pi a drift is a rigid translation theta -> theta - 4 pi beta, so
// N kicks compose into one kick exp(i phi |S| cos(theta + chi)) with
// S = sum_k exp(-i k 4 pi beta) = |S| e^{i chi}; c_n = i^n J_n(phi |S|) e^{i n chi}.
template <typename Propagator>
Check resonance_translation(const Propagator& prop) {
  const double beta = 0.03;  // keeps |S| well away from 0
  const double phi = 1.0;
  const int kicks = 5;
  const int n_max = 64;
  const double a = resonance_period * beta;
  Complex sum = 0.0;
  for (int k = 0; k < kicks; ++k) sum += std::polar(1.0, -k * a);
  const double z = phi * std::abs(sum);
  const double chi = std::arg(sum);
  std::vector<Complex> amps(2 * static_cast<std::size_t>(n_max));
  for (int n = -n_max; n < n_max; ++n) {
    amps[static_cast<std::size_t>(n + n_max)] = i_power(n) * bessel_j(n, z) * std::polar(1.0, n * chi);
  }
  const QuantumState expected(std::move(amps), beta);
  const auto got = run(QuantumState::plane_wave(0, beta, n_max), periodic_train(kicks, resonance_period, phi), false, prop)
                       .final_state;
  const double f = fidelity(expected, got);
  return {"resonance_translation", "fidelity >= 1 - 1e-10", f, 1e-10, f >= 1.0 - 1e-10};
}

template <typename Propagator>
Check single_kick_bessel(const Propagator& prop) {
  double worst = 0.0;
  for (double phi : {1.0, 2.0, 2.405}) {
    const auto s = prop.kick(QuantumState::plane_wave(0, 0.0, 64), phi);
    for (int n = s.min_order(); n <= s.max_order(); ++n) {
      const double j = bessel_j(n, phi);
      worst = std::max(worst, std::abs(s.population(n) - j * j));
    }
  }
  return {"single_kick_bessel", "|c_n|^2 = J_n(phi)^2", worst, 1e-10, worst <= 1e-10};
}

template <typename Propagator>
Check bessel_zero(const Propagator& prop) {
  const double p0 = prop.kick(QuantumState::plane_wave(0, 0.0, 64), 2.405).population(0);
  return {"first_bessel_zero", "|c_0|^2 < 1e-6 at phi=2.405", p0, 1e-6, p0 < 1e-6};
}

// 100 independent trials: random state on |n| <= 8, one kick + drift, n_max = 32.
template <typename Propagator>
Check dense_equivalence(const Propagator& prop, unsigned seed = 20240611) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phi_dist(0.0, 5.0);
  std::uniform_real_distribution<double> tau_dist(0.0, 4.0 * std::numbers::pi);
  std::uniform_real_distribution<double> beta_dist(-0.5, 0.5);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double beta = trial % 2 == 0 ? 0.0 : beta_dist(rng);
    const auto s = random_band_state(rng, 32, 8, beta);
    const double phi = phi_dist(rng);
    const double tau = tau_dist(rng);
    const auto dense = dense_step_amplitudes(s, phi, tau);
    const auto spectral = prop.drift(prop.kick(s, phi), tau);
    for (std::size_t k = 0; k < dense.size(); ++k) worst = std::max(worst, std::abs(dense[k] - spectral.amplitudes()[k]));
  }
  return {"dense_equivalence", "max |dc| <= 1e-10", worst, 1e-10, worst <= 1e-10};
}

template <typename Propagator>
Check loschmidt_return(const Propagator& prop) {
  const auto traj = run(QuantumState::plane_wave(0, 0.0, 128), loschmidt_train(10, 2.0, 2.5), false, prop);
  const double p0 = traj.final_state.population(0);
  return {"loschmidt_echo_return", "P_0 = 1 (beta = 0)", p0, 1e-10, std::abs(p0 - 1.0) <= 1e-10};
}

template <typename Propagator = SpectralPropagator>
Report run_all(const Propagator& prop = {}) {
  Report r;
  r.checks.push_back(anti_resonance(prop));
  r.checks.push_back(resonance_growth(prop));
  r.checks.push_back(resonance_translation(prop));
  r.checks.push_back(single_kick_bessel(prop));
  r.checks.push_back(bessel_zero(prop));
  r.checks.push_back(dense_equivalence(prop));
  r.checks.push_back(loschmidt_return(prop));
  return r;
}

}  // namespace qkr::verify
