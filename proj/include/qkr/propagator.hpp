#pragma once

// Split-operator propagation of the delta-kicked rotor in scaled units.
//
//   kick : psi(theta) -> exp(+i phi_d cos theta) psi(theta)   (diagonal in position)
//   drift: c_n        -> exp(-i tau (n + beta)^2 / 2) c_n     (diagonal in momentum)
//
// The +i sign follows from the attractive -V0 cos(k_L x) potential and forward
// evolution exp(-i V t / hbar). Populations do not depend on the choice.
// tau is the scaled period kbar = 8 omega_R T.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "qkr/errors.hpp"
#include "qkr/fft.hpp"
#include "qkr/state.hpp"

namespace qkr {

// Population allowed in the two outermost orders of either edge after a kick.
inline constexpr double aliasing_threshold = 1e-8;

struct EdgePopulation {
  double lower = 0.0;
  double upper = 0.0;
};

inline EdgePopulation edge_population(const QuantumState& state, int width = 2) {
  const auto amps = state.amplitudes();
  EdgePopulation e;
  for (int k = 0; k < width; ++k) {
    e.lower += std::norm(amps[static_cast<std::size_t>(k)]);
    e.upper += std::norm(amps[amps.size() - 1 - static_cast<std::size_t>(k)]);
  }
  return e;
}

inline void check_aliasing(const QuantumState& state) {
  const auto e = edge_population(state);
  const double worst = std::max(e.lower, e.upper);
  if (worst > aliasing_threshold) {
    throw AliasingError("momentum ladder edge population " + std::to_string(worst) +
                            " exceeds 1e-8; increase n_max (currently " +
                            std::to_string(state.n_max()) + ")",
                        worst);
  }
}

// The position grid has exactly 2 n_max points theta_j = 2 pi j / (2 n_max).
// A backward FFT over index k = n + n_max yields (-1)^j psi(theta_j); the sign
// pattern is undone by the forward FFT, so no explicit shift is needed.
inline QuantumState apply_kick(QuantumState state, double phi_d) {
  if (!std::isfinite(phi_d)) throw DomainError("apply_kick: kick strength must be finite");
  if (phi_d == 0.0) return state;
  auto amps = state.mutable_amplitudes();
  const std::size_t len = amps.size();
  fft::backward(amps);
  const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(len);
  const double inv_len = 1.0 / static_cast<double>(len);
  for (std::size_t j = 0; j < len; ++j) {
    const double arg = phi_d * std::cos(dtheta * static_cast<double>(j));
    amps[j] *= Complex(std::cos(arg), std::sin(arg)) * inv_len;
  }
  fft::forward(amps);
  check_aliasing(state);
  return state;
}

inline QuantumState free_evolve(QuantumState state, double tau) {
  if (!std::isfinite(tau) || tau < 0.0) {
    throw DomainError("free_evolve: scaled time must be finite and non-negative");
  }
  if (tau == 0.0) return state;
  auto amps = state.mutable_amplitudes();
  const double beta = state.beta();
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const double q = state.order_at(k) + beta;
    const double arg = -0.5 * tau * q * q;
    amps[k] *= Complex(std::cos(arg), std::sin(arg));
  }
  return state;
}

inline void require_same_grid(const QuantumState& a, const QuantumState& b, const char* who) {
  if (a.n_max() != b.n_max() || a.beta() != b.beta()) {
    throw ShapeError(std::string(who) + ": states differ in grid size or quasimomentum");
  }
}

inline Complex overlap(const QuantumState& a, const QuantumState& b) {
  require_same_grid(a, b, "overlap");
  Complex s = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t k = 0; k < x.size(); ++k) s += std::conj(x[k]) * y[k];
  return s;
}

// |<a|b>|^2
inline double fidelity(const QuantumState& a, const QuantumState& b) {
  return std::min(1.0, std::norm(overlap(a, b)));
}

// sum_n |c_n|^2 (n + beta)^2 / 2 in scaled units (two-photon recoil momentum).
inline double kinetic_energy(const QuantumState& state) {
  double e = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const double q = state.order_at(k) + state.beta();
    e += std::norm(amps[k]) * q * q;
  }
  return 0.5 * e;
}

// Default propagator policy; anything with the same two members can be
// substituted where code is generic over the propagator (see verify.hpp).
struct SpectralPropagator {
  QuantumState kick(QuantumState s, double phi_d) const { return apply_kick(std::move(s), phi_d); }
  QuantumState drift(QuantumState s, double tau) const { return free_evolve(std::move(s), tau); }
};

}  // namespace qkr
