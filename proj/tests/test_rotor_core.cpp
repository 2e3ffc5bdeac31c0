#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "bessel_oracle.hpp"
#include "qkr/propagator.hpp"
#include "qkr/pulse_train.hpp"
#include "qkr/verify.hpp"

using namespace qkr;
using qkr::test::bessel_j_quadrature;

namespace {
constexpr double pi = std::numbers::pi;

QuantumState random_state(std::mt19937_64& rng, int n_max, int band, double beta) {
  return verify::random_band_state(rng, n_max, band, beta);
}
}  // namespace

TEST(PlaneWave, UnitAmplitudeAtOrder) {
  const auto s = QuantumState::plane_wave(0, 0.0, 64);
  EXPECT_EQ(s.size(), 128u);
  EXPECT_EQ(s.amplitude(0), Complex(1.0, 0.0));
  EXPECT_EQ(s.norm_squared(), 1.0);
  for (int n = s.min_order(); n <= s.max_order(); ++n) {
    if (n != 0) {
      EXPECT_EQ(s.population(n), 0.0);
    }
  }
}

TEST(PlaneWave, StoresQuasimomentum) {
  const auto s = QuantumState::plane_wave(0, 0.25, 64);
  EXPECT_EQ(s.beta(), 0.25);
  EXPECT_EQ(s.population(0), 1.0);
  EXPECT_DOUBLE_EQ(s.momentum_recoils(1), 2.5);
}

TEST(PlaneWave, RejectsOrdersOffTheGrid) {
  EXPECT_THROW(QuantumState::plane_wave(64, 0.0, 64), RangeError);
  EXPECT_THROW(QuantumState::plane_wave(-65, 0.0, 64), RangeError);
  EXPECT_NO_THROW(QuantumState::plane_wave(-64, 0.0, 64));
  EXPECT_THROW(QuantumState::plane_wave(0, 0.5, 64), RangeError);
}

TEST(QuantumState, ConstructorNormalises) {
  QuantumState s({{3.0, 0.0}, {0.0, 4.0}}, 0.0);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
  EXPECT_THROW(QuantumState({{0.0, 0.0}, {0.0, 0.0}}, 0.0), DomainError);
  EXPECT_THROW(QuantumState({{1.0, 0.0}}, 0.0), ShapeError);
}

TEST(ApplyKick, ZeroStrengthIsIdentity) {
  std::mt19937_64 rng(1);
  const auto s = random_state(rng, 32, 8, 0.1);
  const auto k = apply_kick(s, 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(k.amplitudes()[i], s.amplitudes()[i]);
}

TEST(ApplyKick, PopulationsAreBesselSquares) {
  for (double phi : {0.3, 1.0, 2.0, 4.5}) {
    const auto s = apply_kick(QuantumState::plane_wave(0, 0.0, 64), phi);
    for (int n = -20; n <= 20; ++n) {
      const double j = bessel_j_quadrature(n, phi);
      EXPECT_NEAR(s.population(n), j * j, 1e-12) << "phi=" << phi << " n=" << n;
    }
  }
}

TEST(ApplyKick, CentralPopulationFrozenValues) {
  // J_0(2)^2 and J_0(2.405)^2 from the quadrature oracle (scipy agrees: 0.0501270809844695, 8.2e-9).
  const double j0 = bessel_j_quadrature(0, 2.0);
  EXPECT_NEAR(j0 * j0, 0.050127080984469545, 1e-14);
  EXPECT_NEAR(apply_kick(QuantumState::plane_wave(0, 0.0, 64), 2.0).population(0), 0.05012708098446957, 1e-12);
  EXPECT_LT(apply_kick(QuantumState::plane_wave(0, 0.0, 64), 2.405).population(0), 1e-6);
}

TEST(ApplyKick, AmplitudePhasesFollowJacobiAnger) {
  // c_n = i^n J_n(phi) for the +i phi cos(theta) convention.
  const auto s = apply_kick(QuantumState::plane_wave(0, 0.0, 64), 1.7);
  for (int n = -10; n <= 10; ++n) {
    const Complex expect = std::pow(Complex(0.0, 1.0), n) * bessel_j_quadrature(n, 1.7);
    EXPECT_NEAR(std::abs(s.amplitude(n) - expect), 0.0, 1e-12);
  }
}

TEST(ApplyKick, AliasingGuardFires) {
  // phi = 20 spreads population to |n| ~ 20, beyond a 16-order ladder.
  EXPECT_THROW(apply_kick(QuantumState::plane_wave(0, 0.0, 16), 20.0), AliasingError);
  EXPECT_NO_THROW(apply_kick(QuantumState::plane_wave(0, 0.0, 64), 20.0));
  EXPECT_THROW(apply_kick(QuantumState::plane_wave(0, 0.0, 16), std::nan("")), DomainError);
}

TEST(FreeEvolve, ResonanceIsIdentity) {
  std::mt19937_64 rng(2);
  const auto s = random_state(rng, 32, 20, 0.0);
  const auto d = free_evolve(s, 4 * pi);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(std::abs(d.amplitudes()[i] - s.amplitudes()[i]), 0.0, 1e-12);
}

TEST(FreeEvolve, AntiResonanceAndSixPiAreParityFlips) {
  std::mt19937_64 rng(3);
  const auto s = random_state(rng, 32, 20, 0.0);
  for (double tau : {2 * pi, 6 * pi}) {
    const auto d = free_evolve(s, tau);
    for (int n = -20; n <= 20; ++n) {
      const Complex expect = (n % 2 == 0 ? 1.0 : -1.0) * s.amplitude(n);
      EXPECT_NEAR(std::abs(d.amplitude(n) - expect), 0.0, 1e-11) << "tau=" << tau << " n=" << n;
    }
  }
}

TEST(FreeEvolve, PreservesPopulationsAndRejectsBadTimes) {
  std::mt19937_64 rng(4);
  const auto s = random_state(rng, 32, 10, -0.3);
  const auto d = free_evolve(s, 1.234);
  for (int n = -10; n <= 10; ++n) EXPECT_NEAR(d.population(n), s.population(n), 1e-15);
  EXPECT_THROW(free_evolve(s, -1.0), DomainError);
  EXPECT_THROW(free_evolve(s, INFINITY), DomainError);
}

TEST(Fidelity, SelfOrthogonalAndMismatch) {
  const auto a = QuantumState::plane_wave(0, 0.0, 32);
  const auto b = QuantumState::plane_wave(1, 0.0, 32);
  EXPECT_DOUBLE_EQ(fidelity(a, a), 1.0);
  EXPECT_EQ(fidelity(a, b), 0.0);
  EXPECT_THROW(fidelity(a, QuantumState::plane_wave(0, 0.1, 32)), ShapeError);
  EXPECT_THROW(fidelity(a, QuantumState::plane_wave(0, 0.0, 64)), ShapeError);
}

TEST(Fidelity, AntiResonantDoubleKickReturns) {
  const auto start = QuantumState::plane_wave(0, 0.0, 64);
  const auto end = apply_kick(free_evolve(apply_kick(start, 2.0), 2 * pi), 2.0);
  EXPECT_GE(fidelity(start, end), 1.0 - 1e-10);
}

TEST(KineticEnergy, PlaneWaves) {
  EXPECT_EQ(kinetic_energy(QuantumState::plane_wave(0, 0.0, 64)), 0.0);
  EXPECT_DOUBLE_EQ(kinetic_energy(QuantumState::plane_wave(3, 0.0, 64)), 4.5);
  EXPECT_DOUBLE_EQ(kinetic_energy(QuantumState::plane_wave(0, 0.25, 64)), 0.03125);
}

TEST(KineticEnergy, ResonantGrowthMatchesBesselSum) {
  const double phi = 1.3;
  for (int kicks = 1; kicks <= 6; ++kicks) {
    const double z = kicks * phi;
    double oracle = 0.0;
    for (int n = -60; n <= 60; ++n) {
      const double j = bessel_j_quadrature(n, z);
      oracle += n * n * j * j / 2.0;
    }
    ASSERT_NEAR(oracle, z * z / 4.0, 1e-10);  // sum n^2 J_n(z)^2 = z^2 / 2
    const auto s = run(QuantumState::plane_wave(0, 0.0, 128), periodic_train(kicks, 4 * pi, phi)).final_state;
    EXPECT_NEAR(kinetic_energy(s), oracle, oracle * 1e-9);
  }
}

// ---- properties ----------------------------------------------------------

TEST(RotorProperties, NormPreservedOverThousandMixedSteps) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> phi(0.0, 1.5), tau(0.0, 4 * pi), beta(-0.5, 0.5);
  auto s = QuantumState::plane_wave(0, beta(rng), 128);
  for (int i = 0; i < 500; ++i) {
    s = apply_kick(std::move(s), phi(rng));
    s = free_evolve(std::move(s), tau(rng));
  }
  EXPECT_LE(std::abs(s.norm_squared() - 1.0), 1e-10);
}

TEST(RotorProperties, OperatorsPreserveOverlaps) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> phi(0.0, 5.0), tau(0.0, 4 * pi), beta(-0.5, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    const double b = beta(rng);
    const auto a = random_state(rng, 64, 10, b);
    const auto c = random_state(rng, 64, 10, b);
    const double f0 = fidelity(a, c);
    const double p = phi(rng), t = tau(rng);
    EXPECT_NEAR(fidelity(apply_kick(a, p), apply_kick(c, p)), f0, 1e-10);
    EXPECT_NEAR(fidelity(free_evolve(a, t), free_evolve(c, t)), f0, 1e-10);
  }
}

TEST(RotorProperties, QuasimomentumIsBitExact) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> beta(-0.5, 0.5);
  for (int trial = 0; trial < 20; ++trial) {
    const double b = beta(rng);
    auto s = QuantumState::plane_wave(0, b, 64);
    s = free_evolve(apply_kick(std::move(s), 1.7), 3.3);
    EXPECT_EQ(s.beta(), b);
  }
}

TEST(RotorProperties, ParitySymmetryAtZeroQuasimomentum) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> phi(0.0, 3.0), tau(0.0, 4 * pi);
  auto s = QuantumState::plane_wave(0, 0.0, 128);
  for (int step = 0; step < 30; ++step) {
    s = free_evolve(apply_kick(std::move(s), phi(rng)), tau(rng));
    for (int n = 1; n < 128; ++n) ASSERT_NEAR(std::abs(s.amplitude(n)), std::abs(s.amplitude(-n)), 1e-10);
  }
}

TEST(RotorProperties, ResonantKicksCompose) {
  for (int kicks : {2, 3, 5, 8}) {
    const double phi = 0.9;
    const auto many = run(QuantumState::plane_wave(0, 0.0, 128), periodic_train(kicks, 4 * pi, phi)).final_state;
    const auto one = apply_kick(QuantumState::plane_wave(0, 0.0, 128), kicks * phi);
    for (int n = -128; n < 128; ++n) ASSERT_NEAR(many.population(n), one.population(n), 1e-10);
  }
}

TEST(RotorProperties, StatesMoveAcrossThreads) {
  auto s = QuantumState::plane_wave(0, 0.2, 64);
  std::thread t([&s] { s = apply_kick(std::move(s), 1.0); });
  t.join();
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
}
