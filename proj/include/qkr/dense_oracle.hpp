#pragma once

// Reference propagator built from the explicit Jacobi–Anger kick matrix
// K_mn = i^(m-n) J_(m-n)(phi_d), truncated to the grid. O(n_max^2) per step.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "qkr/errors.hpp"
#include "qkr/propagator.hpp"
#include "qkr/state.hpp"

namespace qkr {

inline constexpr int dense_oracle_max_n_max = 64;

// J_n(x) for any integer n and real x.
inline double bessel_j(int n, double x) {
  double sign = 1.0;
  if (n < 0) {
    n = -n;
    if (n % 2 != 0) sign = -sign;
  }
  if (x < 0.0) {
    x = -x;
    if (n % 2 != 0) sign = -sign;
  }
  return sign * std::cyl_bessel_j(static_cast<double>(n), x);
}

// i^d for integer d.
inline Complex i_power(int d) {
  switch (((d % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Row-major (2 n_max) x (2 n_max) kick matrix.
class KickMatrix {
 public:
  KickMatrix(double phi_d, int n_max) : dim_(2 * static_cast<std::size_t>(n_max)), data_(dim_ * dim_) {
    if (n_max > dense_oracle_max_n_max) {
      throw OracleSizeError("dense oracle refuses n_max > 64");
    }
    const int span = 2 * n_max;
    std::vector<Complex> by_offset(2 * static_cast<std::size_t>(span) - 1);
    for (int d = -(span - 1); d <= span - 1; ++d) {
      by_offset[static_cast<std::size_t>(d + span - 1)] = i_power(d) * bessel_j(d, phi_d);
    }
    for (std::size_t m = 0; m < dim_; ++m) {
      for (std::size_t n = 0; n < dim_; ++n) {
        const int d = static_cast<int>(m) - static_cast<int>(n);
        data_[m * dim_ + n] = by_offset[static_cast<std::size_t>(d + span - 1)];
      }
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  Complex operator()(std::size_t m, std::size_t n) const { return data_[m * dim_ + n]; }

  double column_norm_squared(std::size_t n) const {
    double s = 0.0;
    for (std::size_t m = 0; m < dim_; ++m) s += std::norm((*this)(m, n));
    return s;
  }

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

// Kick by matrix product, then the diagonal drift. Output is deliberately not
// renormalised so that truncation loss stays visible.
inline std::vector<Complex> dense_step_amplitudes(const QuantumState& state, double phi_d, double tau) {
  if (state.n_max() > dense_oracle_max_n_max) {
    throw OracleSizeError("dense oracle refuses n_max > 64");
  }
  if (!std::isfinite(tau) || tau < 0.0) throw DomainError("dense oracle: tau must be finite and non-negative");
  const KickMatrix kick(phi_d, state.n_max());
  const auto in = state.amplitudes();
  std::vector<Complex> out(in.size());
  for (std::size_t m = 0; m < out.size(); ++m) {
    Complex s = 0.0;
    for (std::size_t n = 0; n < in.size(); ++n) s += kick(m, n) * in[n];
    const double q = state.order_at(m) + state.beta();
    const double arg = -0.5 * tau * q * q;
    out[m] = s * Complex(std::cos(arg), std::sin(arg));
  }
  return out;
}

inline QuantumState dense_step_oracle(const QuantumState& state, double phi_d, double tau) {
  return QuantumState(dense_step_amplitudes(state, phi_d, tau), state.beta());
}

}  // namespace qkr
