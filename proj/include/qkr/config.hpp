#pragma once

// Run configuration shared by the CLI subcommands. Precedence: command-line
// flags > JSON config file > built-in defaults.

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qkr/analysis.hpp"
#include "qkr/csv.hpp"
#include "qkr/errors.hpp"
#include "qkr/pulse_train.hpp"

namespace qkr {

enum class P0Source { convolved, raw };

inline std::string to_string(P0Source s) { return s == P0Source::convolved ? "convolved" : "raw"; }

inline P0Source parse_p0_source(const std::string& s) {
  if (s == "convolved") return P0Source::convolved;
  if (s == "raw") return P0Source::raw;
  throw ArgumentError("p0 source must be 'convolved' or 'raw', got '" + s + "'");
}

struct RunConfig {
  int kicks = 10;
  std::vector<double> epsilons{1.0};
  double phi = 2.0;
  double sigma_bec = 0.05;               // single-photon recoils
  std::optional<double> resolution;      // unset: calibrated to the 0.43 recoil initial width
  int members = 201;
  int n_max = 128;
  MidpointMode midpoint = MidpointMode::replace;
  OrderMetric metric = OrderMetric::height;
  P0Source p0_source = P0Source::convolved;
  std::string output;                    // empty: stdout
  unsigned threads = 0;                  // not part of the recorded config

  // Echo-type runs need an even kick count.
  void validate(bool echo_run = true) const {
    if (echo_run && (kicks < 2 || kicks % 2 != 0)) throw ArgumentError("--kicks must be even and >= 2");
    if (!echo_run && kicks < 1) throw ArgumentError("--kicks must be >= 1");
    if (epsilons.empty()) throw ArgumentError("at least one --epsilon is required");
    for (double e : epsilons) {
      if (!std::isfinite(e)) throw ArgumentError("--epsilon must be finite");
    }
    if (!std::isfinite(phi)) throw ArgumentError("--phi must be finite");
    if (!(sigma_bec >= 0.0) || !std::isfinite(sigma_bec)) throw ArgumentError("--sigma-bec must be >= 0");
    if (resolution && (!(*resolution >= 0.0) || !std::isfinite(*resolution))) {
      throw ArgumentError("--resolution must be >= 0");
    }
    if (members < 1 || members % 2 == 0) throw ArgumentError("--members must be odd and >= 1");
    if (n_max < 16 || n_max > 4096) throw ArgumentError("--nmax must lie in [16, 4096]");
  }

  // Applies a flat JSON object on top of the current values.
  void merge_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ArgumentError("config file must contain a JSON object");
    try {
      for (const auto& [key, value] : j.items()) {
        if (key == "kicks") kicks = value.get<int>();
        else if (key == "epsilon") epsilons = value.is_array() ? value.get<std::vector<double>>() : std::vector<double>{value.get<double>()};
        else if (key == "phi") phi = value.get<double>();
        else if (key == "sigma_bec") sigma_bec = value.get<double>();
        else if (key == "resolution") {
          if (value.is_string() && value.get<std::string>() == "calibrated") resolution.reset();
          else resolution = value.get<double>();
        }
        else if (key == "members") members = value.get<int>();
        else if (key == "nmax") n_max = value.get<int>();
        else if (key == "midpoint_mode") midpoint = parse_midpoint_mode(value.get<std::string>());
        else if (key == "metric") metric = parse_order_metric(value.get<std::string>());
        else if (key == "p0_source") p0_source = parse_p0_source(value.get<std::string>());
        else if (key == "output") output = value.get<std::string>();
        else throw ArgumentError("unknown config key '" + key + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw ArgumentError(std::string("config file: ") + e.what());
    }
  }

  void merge_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ArgumentError("config file '" + path + "': " + e.what());
    }
    merge_json(j);
  }

  // Effective configuration as metadata lines (threads excluded so output is
  // independent of the worker count).
  void write_metadata(csv::Document& doc, double effective_resolution) const {
    doc.meta("config.kicks", std::to_string(kicks));
    std::string eps;
    for (std::size_t i = 0; i < epsilons.size(); ++i) eps += (i ? ";" : "") + csv::number(epsilons[i]);
    doc.meta("config.epsilon", eps);
    doc.meta("config.phi", phi);
    doc.meta("config.sigma_bec", sigma_bec);
    doc.meta("config.resolution", resolution ? "fixed" : "calibrated");
    doc.meta("config.sigma_res", effective_resolution);
    doc.meta("config.members", std::to_string(members));
    doc.meta("config.nmax", std::to_string(n_max));
    doc.meta("config.midpoint_mode", to_string(midpoint));
    doc.meta("config.metric", to_string(metric));
    doc.meta("config.p0_source", to_string(p0_source));
  }
};

}  // namespace qkr
