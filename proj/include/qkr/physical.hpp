#pragma once

// Conversions between laboratory quantities and the dimensionless kick
// strength / scaled period used by the simulator. The simulator itself never
// touches SI units.

#include <cmath>
#include <numbers>
#include <optional>

#include "qkr/errors.hpp"

namespace qkr {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;          // J s (exact since 2019 SI)
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg, CODATA 2018
inline constexpr double rb87_mass = 86.909180520 * atomic_mass_unit;
}  // namespace constants

// omega_R = hbar k_L^2 / (2 m), k_L = 2 pi / lambda.
inline double recoil_frequency(double wavelength, double mass) {
  if (!(wavelength > 0.0) || !(mass > 0.0)) {
    throw DomainError("recoil_frequency: wavelength and mass must be positive");
  }
  const double k = 2.0 * std::numbers::pi / wavelength;
  return constants::hbar * k * k / (2.0 * mass);
}

// Omega = d E / (2 hbar).
inline double rabi_frequency(double dipole_moment, double field_amplitude) {
  return dipole_moment * field_amplitude / (2.0 * constants::hbar);
}

// phi_d = tau_p Omega^2 / (4 Delta). Resonant light (Delta = 0) is not modelled.
inline double kick_strength(double pulse_duration, double rabi, double detuning) {
  if (detuning == 0.0 || !std::isfinite(detuning)) {
    throw DomainError("kick_strength: detuning must be finite and non-zero");
  }
  return pulse_duration * rabi * rabi / (4.0 * detuning);
}

// kbar = 8 omega_R T.
inline double scaled_period(double period, double recoil) {
  if (!(period >= 0.0)) throw DomainError("scaled_period: period must be non-negative");
  return 8.0 * recoil * period;
}

// Inverse of scaled_period.
inline double period_for_scaled(double kbar, double recoil) {
  if (!(kbar >= 0.0)) throw DomainError("period_for_scaled: kbar must be non-negative");
  if (!(recoil > 0.0)) throw DomainError("period_for_scaled: recoil frequency must be positive");
  return kbar / (8.0 * recoil);
}

// Laboratory parameter set. Fields are optional; derive() fills whatever can be
// computed from what is present and never overwrites a supplied value.
struct PhysicalParams {
  std::optional<double> wavelength;          // m
  std::optional<double> atom_mass;           // kg
  std::optional<double> recoil_frequency;    // rad/s
  std::optional<double> wave_number;         // rad/m
  std::optional<double> pulse_duration;      // s
  std::optional<double> rabi_frequency;      // rad/s
  std::optional<double> detuning;            // rad/s
  std::optional<double> laser_frequency;     // rad/s
  std::optional<double> resonance_frequency; // rad/s
  std::optional<double> dipole_moment;       // C m
  std::optional<double> field_amplitude;     // V/m
  std::optional<double> kick_period;         // s

  PhysicalParams& derive() {
    if (wavelength && !wave_number) {
      if (!(*wavelength > 0.0)) throw DomainError("PhysicalParams: wavelength must be positive");
      wave_number = 2.0 * std::numbers::pi / *wavelength;
    }
    if (wave_number && atom_mass && !recoil_frequency) {
      if (!(*atom_mass > 0.0)) throw DomainError("PhysicalParams: mass must be positive");
      recoil_frequency = constants::hbar * *wave_number * *wave_number / (2.0 * *atom_mass);
    }
    if (laser_frequency && resonance_frequency && !detuning) {
      detuning = *laser_frequency - *resonance_frequency;
    }
    if (dipole_moment && field_amplitude && !rabi_frequency) {
      rabi_frequency = qkr::rabi_frequency(*dipole_moment, *field_amplitude);
    }
    return *this;
  }

  std::optional<double> phi_d() const {
    if (!pulse_duration || !rabi_frequency || !detuning) return std::nullopt;
    return kick_strength(*pulse_duration, *rabi_frequency, *detuning);
  }

  std::optional<double> kbar() const {
    if (!kick_period || !recoil_frequency) return std::nullopt;
    return scaled_period(*kick_period, *recoil_frequency);
  }

  // V_0 = hbar phi_d
  std::optional<double> potential_depth() const {
    auto phi = phi_d();
    if (!phi) return std::nullopt;
    return constants::hbar * *phi;
  }
};

}  // namespace qkr
