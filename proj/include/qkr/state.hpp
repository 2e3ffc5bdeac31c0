#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qkr/errors.hpp"

namespace qkr {

using Complex = std::complex<double>;

// Matter-wave state on the momentum ladder p = (n + beta) 2 hbar k_L,
// n in [-n_max, n_max - 1]. Amplitude index k holds order n = k - n_max.
//
// One ladder step is two single-photon recoils; reported momenta use
// p_recoils = 2 (n + beta).
class QuantumState {
 public:
  static constexpr int default_n_max = 128;

  // Normalises the given amplitudes. Length must be even and positive.
  QuantumState(std::vector<Complex> amplitudes, double beta)
      : amplitudes_(std::move(amplitudes)), beta_(beta) {
    if (amplitudes_.empty() || amplitudes_.size() % 2 != 0) {
      throw ShapeError("QuantumState: amplitude count must be even and positive");
    }
    check_beta(beta_);
    const double norm2 = norm_squared();
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
      throw DomainError("QuantumState: amplitudes must have finite, non-zero norm");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& c : amplitudes_) c *= scale;
  }

  static QuantumState plane_wave(int order, double beta, int n_max = default_n_max) {
    if (n_max <= 0) throw RangeError("plane_wave: n_max must be positive");
    if (order < -n_max || order >= n_max) {
      throw RangeError("plane_wave: order " + std::to_string(order) + " outside [" +
                       std::to_string(-n_max) + ", " + std::to_string(n_max) + ")");
    }
    std::vector<Complex> amps(2 * static_cast<std::size_t>(n_max));
    amps[static_cast<std::size_t>(order + n_max)] = 1.0;
    return QuantumState(std::move(amps), beta);
  }

  int n_max() const noexcept { return static_cast<int>(amplitudes_.size() / 2); }
  int min_order() const noexcept { return -n_max(); }
  int max_order() const noexcept { return n_max() - 1; }
  std::size_t size() const noexcept { return amplitudes_.size(); }
  double beta() const noexcept { return beta_; }

  bool contains(int order) const noexcept { return order >= min_order() && order <= max_order(); }

  std::size_t index_of(int order) const {
    if (!contains(order)) throw RangeError("QuantumState: order " + std::to_string(order) + " outside grid");
    return static_cast<std::size_t>(order + n_max());
  }

  int order_at(std::size_t index) const noexcept { return static_cast<int>(index) - n_max(); }

  Complex amplitude(int order) const { return amplitudes_[index_of(order)]; }
  double population(int order) const { return std::norm(amplitude(order)); }

  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }

  // Raw access for the operators. Callers must keep the state unit-normalised.
  std::span<Complex> mutable_amplitudes() noexcept { return amplitudes_; }

  double norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& c : amplitudes_) s += std::norm(c);
    return s;
  }

  std::vector<double> populations() const {
    std::vector<double> out(amplitudes_.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::norm(amplitudes_[k]);
    return out;
  }

  // Momentum of order n in single-photon recoils.
  double momentum_recoils(int order) const noexcept { return 2.0 * (order + beta_); }

 private:
  static void check_beta(double beta) {
    if (!(beta >= -0.5 && beta < 0.5)) {
      throw RangeError("QuantumState: quasimomentum must lie in [-0.5, 0.5)");
    }
  }

  std::vector<Complex> amplitudes_;
  double beta_;
};

}  // namespace qkr
