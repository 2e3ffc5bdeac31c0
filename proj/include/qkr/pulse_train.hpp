#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qkr/errors.hpp"
#include "qkr/propagator.hpp"
#include "qkr/state.hpp"

namespace qkr {

inline constexpr double resonance_period = 4.0 * std::numbers::pi;
inline constexpr double anti_resonance_period = 2.0 * std::numbers::pi;
inline constexpr double loschmidt_wait = 6.0 * std::numbers::pi;

struct Kick {
  double phi_d = 0.0;
  bool operator==(const Kick&) const = default;
};

struct Drift {
  double tau = 0.0;
  bool operator==(const Drift&) const = default;
};

using PulseEvent = std::variant<Kick, Drift>;

// How the 6 pi wait of the Loschmidt train sits between the two halves.
//   replace: the wait is the whole gap between kick N/2 and kick N/2+1.
//   append:  the wait follows a regular (4 pi + eps) period.
enum class MidpointMode { replace, append };

inline std::string to_string(MidpointMode m) { return m == MidpointMode::replace ? "replace" : "append"; }

inline MidpointMode parse_midpoint_mode(const std::string& s) {
  if (s == "replace") return MidpointMode::replace;
  if (s == "append") return MidpointMode::append;
  throw ArgumentError("midpoint mode must be 'replace' or 'append', got '" + s + "'");
}

// Immutable, ordered list of kick and drift events in scaled time.
class PulseTrain {
 public:
  PulseTrain() = default;
  PulseTrain(std::vector<PulseEvent> events, std::string label) : events_(std::move(events)), label_(std::move(label)) {
    for (const auto& e : events_) {
      if (const auto* k = std::get_if<Kick>(&e); k && !std::isfinite(k->phi_d)) {
        throw ArgumentError("PulseTrain: kick strength must be finite");
      }
      if (const auto* d = std::get_if<Drift>(&e); d && !(std::isfinite(d->tau) && d->tau >= 0.0)) {
        throw ArgumentError("PulseTrain: drift duration must be finite and non-negative");
      }
    }
  }

  const std::vector<PulseEvent>& events() const noexcept { return events_; }
  const std::string& label() const noexcept { return label_; }
  bool empty() const noexcept { return events_.empty(); }

  std::size_t kick_count() const noexcept {
    std::size_t n = 0;
    for (const auto& e : events_) n += std::holds_alternative<Kick>(e);
    return n;
  }

  double total_duration() const noexcept {
    double t = 0.0;
    for (const auto& e : events_) {
      if (const auto* d = std::get_if<Drift>(&e)) t += d->tau;
    }
    return t;
  }

  bool operator==(const PulseTrain&) const = default;

 private:
  std::vector<PulseEvent> events_;
  std::string label_;
};

inline PulseTrain periodic_train(int kicks, double kbar, double phi_d) {
  if (kicks < 1) throw ArgumentError("periodic_train: need at least one kick");
  std::vector<PulseEvent> ev;
  ev.reserve(2 * static_cast<std::size_t>(kicks) - 1);
  ev.emplace_back(Kick{phi_d});
  for (int i = 1; i < kicks; ++i) {
    ev.emplace_back(Drift{kbar});
    ev.emplace_back(Kick{phi_d});
  }
  return PulseTrain(std::move(ev), "periodic N=" + std::to_string(kicks));
}

// N/2 kicks spaced 4 pi + eps, the 6 pi wait, N/2 kicks spaced 4 pi - eps.
inline PulseTrain loschmidt_train(int kicks, double epsilon, double phi_d,
                                  MidpointMode midpoint = MidpointMode::replace) {
  if (kicks < 2 || kicks % 2 != 0) {
    throw ArgumentError("loschmidt_train: N must be even and >= 2, got " + std::to_string(kicks));
  }
  if (!std::isfinite(epsilon)) throw ArgumentError("loschmidt_train: epsilon must be finite");
  const double forward = resonance_period + epsilon;
  const double backward = resonance_period - epsilon;
  if (backward < 0.0) throw ArgumentError("loschmidt_train: 4 pi - epsilon must be non-negative");
  const int half = kicks / 2;
  std::vector<PulseEvent> ev;
  ev.emplace_back(Kick{phi_d});
  for (int i = 1; i < half; ++i) {
    ev.emplace_back(Drift{forward});
    ev.emplace_back(Kick{phi_d});
  }
  const double gap = midpoint == MidpointMode::replace ? loschmidt_wait : forward + loschmidt_wait;
  ev.emplace_back(Drift{gap});
  ev.emplace_back(Kick{phi_d});
  for (int i = 1; i < half; ++i) {
    ev.emplace_back(Drift{backward});
    ev.emplace_back(Kick{phi_d});
  }
  return PulseTrain(std::move(ev), "loschmidt N=" + std::to_string(kicks) + " midpoint=" + to_string(midpoint));
}

struct Trajectory {
  QuantumState final_state;
  // Populations (indexed like the amplitudes) right after each kick.
  std::vector<std::vector<double>> snapshots;
};

template <typename Propagator = SpectralPropagator>
Trajectory run(QuantumState state, const PulseTrain& train, bool record = false, const Propagator& prop = {}) {
  std::vector<std::vector<double>> snaps;
  if (record) snaps.reserve(train.kick_count());
  const auto& events = train.events();
  for (std::size_t i = 0; i < events.size(); ++i) {
    try {
      if (const auto* k = std::get_if<Kick>(&events[i])) {
        state = prop.kick(std::move(state), k->phi_d);
        if (record) snaps.push_back(state.populations());
      } else {
        state = prop.drift(std::move(state), std::get<Drift>(events[i]).tau);
      }
    } catch (const AliasingError& e) {
      throw e.with_event(i);
    }
  }
  return Trajectory{std::move(state), std::move(snaps)};
}

}  // namespace qkr
