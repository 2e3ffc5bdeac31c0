#pragma once

// Incoherent quasimomentum ensemble standing in for the finite momentum width
// of the condensate. Member j carries beta_j = -1/2 + (j + 1/2)/M, so with M odd
// the middle member sits exactly at beta = 0, and the deposit points
// p = 2 (n + beta_j) of all members tile a uniform grid of spacing 2/M
// (single-photon recoils). Each grid point is fed by exactly one (n, j) pair.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "qkr/errors.hpp"
#include "qkr/pulse_train.hpp"
#include "qkr/state.hpp"

namespace qkr {

class InitialEnsemble {
 public:
  // Gaussian weights exp(-(2 beta)^2 / (2 sigma_p^2)); sigma_p in single-photon
  // recoils. sigma_p = 0 puts all weight on beta = 0.
  static InitialEnsemble gaussian(double sigma_p, int members) {
    check_members(members);
    if (!(sigma_p >= 0.0) || !std::isfinite(sigma_p)) {
      throw ArgumentError("InitialEnsemble: sigma_p must be finite and non-negative");
    }
    std::vector<double> w(static_cast<std::size_t>(members));
    for (int j = 0; j < members; ++j) {
      const double p = 2.0 * lattice_beta(j, members);
      w[static_cast<std::size_t>(j)] = sigma_p > 0.0 ? std::exp(-p * p / (2.0 * sigma_p * sigma_p))
                                                     : (j == (members - 1) / 2 ? 1.0 : 0.0);
    }
    InitialEnsemble e = from_weights(std::move(w));
    e.sigma_p_ = sigma_p;
    return e;
  }

  // Arbitrary non-negative weights on the M-member lattice; normalised here.
  static InitialEnsemble from_weights(std::vector<double> weights) {
    const int members = static_cast<int>(weights.size());
    check_members(members);
    double total = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw ArgumentError("InitialEnsemble: weights must be finite and >= 0");
      total += w;
    }
    if (!(total > 0.0)) throw ArgumentError("InitialEnsemble: weights sum to zero");
    for (double& w : weights) w /= total;
    InitialEnsemble e;
    e.weights_ = std::move(weights);
    e.betas_.resize(e.weights_.size());
    for (int j = 0; j < members; ++j) e.betas_[static_cast<std::size_t>(j)] = lattice_beta(j, members);
    return e;
  }

  static double lattice_beta(int j, int members) {
    return static_cast<double>(2 * j + 1 - members) / (2.0 * members);
  }

  int members() const noexcept { return static_cast<int>(weights_.size()); }
  int center_index() const noexcept { return (members() - 1) / 2; }
  double sigma_p() const noexcept { return sigma_p_; }
  const std::vector<double>& betas() const noexcept { return betas_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  InitialEnsemble() = default;

  static void check_members(int members) {
    if (members < 1 || members % 2 == 0) {
      throw ArgumentError("InitialEnsemble: member count must be odd and >= 1, got " + std::to_string(members));
    }
  }

  double sigma_p_ = 0.0;
  std::vector<double> betas_;
  std::vector<double> weights_;
};

enum class Normalization { raw, wp };

// Density on the uniform grid p_k = (k - origin) * 2 / M, single-photon recoils.
struct MomentumDistribution {
  int members = 1;
  std::ptrdiff_t origin = 0;
  std::vector<double> density;
  Normalization mode = Normalization::raw;
  std::vector<std::string> warnings;

  double spacing() const noexcept { return 2.0 / members; }
  std::size_t size() const noexcept { return density.size(); }
  std::size_t zero_index() const noexcept { return static_cast<std::size_t>(origin); }
  std::ptrdiff_t offset(std::size_t k) const noexcept { return static_cast<std::ptrdiff_t>(k) - origin; }
  double momentum(std::size_t k) const noexcept { return static_cast<double>(offset(k)) * spacing(); }

  double integral() const noexcept {
    double s = 0.0;
    for (double d : density) s += d;
    return s * spacing();
  }

  bool same_grid(const MomentumDistribution& other) const noexcept {
    return members == other.members && origin == other.origin && density.size() == other.density.size();
  }
};

inline MomentumDistribution empty_distribution(int members, int n_max) {
  MomentumDistribution d;
  d.members = members;
  d.origin = static_cast<std::ptrdiff_t>(n_max) * members + (members - 1) / 2;
  d.density.assign(2 * static_cast<std::size_t>(n_max) * static_cast<std::size_t>(members), 0.0);
  return d;
}

struct EnsembleRun {
  MomentumDistribution final;
  std::vector<MomentumDistribution> per_kick;  // filled only when recording
};

struct EnsembleOptions {
  int n_max = QuantumState::default_n_max;
  bool record = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

// Evolves plane_wave(0, beta_j) through the train for every member with
// non-zero weight and deposits w_j |c_n|^2 / dp at p = 2 (n + beta_j).
// Workers write disjoint grid points, so the result does not depend on the
// thread count.
inline EnsembleRun ensemble_distribution(const PulseTrain& train, const InitialEnsemble& ens,
                                         const EnsembleOptions& opt = {}) {
  const int m = ens.members();
  const int n_max = opt.n_max;
  if (n_max < 1) throw ArgumentError("ensemble_distribution: n_max must be positive");
  const std::size_t ladder = 2 * static_cast<std::size_t>(n_max);
  const std::size_t kicks = train.kick_count();
  const double inv_dp = m / 2.0;

  EnsembleRun out;
  out.final = empty_distribution(m, n_max);
  if (opt.record) out.per_kick.assign(kicks, out.final);

  // Ladder index k (order n = k - n_max) of member j maps to grid index k*M + j.
  auto deposit = [&](std::vector<double>& dst, std::size_t j, double w, const std::vector<double>& pops) {
    for (std::size_t k = 0; k < ladder; ++k) dst[k * static_cast<std::size_t>(m) + j] = w * pops[k] * inv_dp;
  };

  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(m));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < static_cast<std::size_t>(m); j = next++) {
      const double w = ens.weights()[j];
      if (w == 0.0) continue;
      try {
        try {
          auto traj = run(QuantumState::plane_wave(0, ens.betas()[j], n_max), train, opt.record);
          deposit(out.final.density, j, w, traj.final_state.populations());
          for (std::size_t s = 0; s < traj.snapshots.size(); ++s) deposit(out.per_kick[s].density, j, w, traj.snapshots[s]);
        } catch (const AliasingError& e) {
          throw e.with_member(j);
        }
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };

  const unsigned workers = std::min<unsigned>(resolve_threads(opt.threads), static_cast<unsigned>(m));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

inline MomentumDistribution initial_distribution(const InitialEnsemble& ens, int n_max = QuantumState::default_n_max) {
  return ensemble_distribution(PulseTrain{}, ens, {.n_max = n_max, .record = false, .threads = 1}).final;
}

}  // namespace qkr
