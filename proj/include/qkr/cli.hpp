#pragma once

// `qkr` command-line front end: echo, p0-sequence, fwhm-sweep, verify.
// Exit codes: 0 success, 2 usage error, 3 numerical guard, 4 verification failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qkr/commands.hpp"
#include "qkr/config.hpp"
#include "qkr/errors.hpp"
#include "qkr/verify.hpp"
#include "qkr/version.hpp"

namespace qkr::cli {

enum ExitCode : int { ok = 0, usage = 2, numerical = 3, verification = 4 };

// QKR_THREADS caps the worker count; unset or invalid means hardware concurrency.
inline unsigned threads_from_env() {
  const char* v = std::getenv("QKR_THREADS");
  if (!v || !*v) return 0;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) return 0;
  return static_cast<unsigned>(n);
}

namespace detail {

struct Flags {
  std::optional<int> kicks;
  std::vector<double> epsilons;
  std::optional<double> phi;
  std::optional<double> sigma_bec;
  std::optional<double> resolution;
  std::optional<int> members;
  std::optional<int> n_max;
  std::optional<std::string> midpoint;
  std::optional<std::string> metric;
  std::optional<std::string> p0_source;
  std::optional<std::string> output;
  std::optional<std::string> config;
};

inline void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--kicks", f.kicks, "Total number of kicks N");
  cmd->add_option("--epsilon", f.epsilons, "Detuning from 4 pi in scaled time (repeatable for sweeps)")
      ->delimiter(',');
  cmd->add_option("--phi", f.phi, "Kick strength phi_d");
  cmd->add_option("--sigma-bec", f.sigma_bec, "Initial momentum sigma in recoils");
  cmd->add_option("--resolution", f.resolution, "Resolution sigma in recoils (default: calibrated to 0.43)");
  cmd->add_option("--members", f.members, "Quasimomentum ensemble size M (odd)");
  cmd->add_option("--nmax", f.n_max, "Momentum ladder half-size");
  cmd->add_option("--midpoint-mode", f.midpoint, "replace|append");
  cmd->add_option("--metric", f.metric, "Order height metric: height|integrated");
  cmd->add_option("--p0-source", f.p0_source, "P(0) from the convolved|raw distribution");
  cmd->add_option("--output", f.output, "Output CSV path (default stdout)");
  cmd->add_option("--config", f.config, "JSON config file");
}

inline RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  if (f.config) cfg.merge_file(*f.config);
  if (f.kicks) cfg.kicks = *f.kicks;
  if (!f.epsilons.empty()) cfg.epsilons = f.epsilons;
  if (f.phi) cfg.phi = *f.phi;
  if (f.sigma_bec) cfg.sigma_bec = *f.sigma_bec;
  if (f.resolution) cfg.resolution = *f.resolution;
  if (f.members) cfg.members = *f.members;
  if (f.n_max) cfg.n_max = *f.n_max;
  if (f.midpoint) cfg.midpoint = parse_midpoint_mode(*f.midpoint);
  if (f.metric) cfg.metric = parse_order_metric(*f.metric);
  if (f.p0_source) cfg.p0_source = parse_p0_source(*f.p0_source);
  if (f.output) cfg.output = *f.output;
  cfg.threads = threads_from_env();
  return cfg;
}

inline void emit(const RunConfig& cfg, const commands::Output& result, std::ostream& out, std::ostream& err) {
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  if (cfg.output.empty()) {
    out << result.csv;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
  if (!file) throw ArgumentError("cannot open output file '" + cfg.output + "'");
  file << result.csv;
}

}  // namespace detail

inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Quantum delta-kicked rotor: Loschmidt echo simulator"};
  app.set_version_flag("--version", std::string(version));
  app.require_subcommand(1);

  detail::Flags echo_flags, p0_flags, sweep_flags;
  auto* echo = app.add_subcommand("echo", "Momentum distribution after the Loschmidt train");
  detail::add_run_flags(echo, echo_flags);
  auto* p0 = app.add_subcommand("p0-sequence", "P(0) after every kick of the Loschmidt train");
  detail::add_run_flags(p0, p0_flags);
  auto* sweep = app.add_subcommand("fwhm-sweep", "Central-peak FWHM over a list of epsilon values");
  detail::add_run_flags(sweep, sweep_flags);
  auto* verify_cmd = app.add_subcommand("verify", "Run the built-in oracle and identity checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage;
  }

  try {
    if (verify_cmd->parsed()) {
      const auto report = verify::run_all();
      report.print(out);
      return report.all_passed() ? ok : verification;
    }
    if (echo->parsed()) {
      const auto cfg = detail::resolve(echo_flags);
      detail::emit(cfg, commands::echo(cfg), out, err);
    } else if (p0->parsed()) {
      const auto cfg = detail::resolve(p0_flags);
      detail::emit(cfg, commands::p0_sequence(cfg), out, err);
    } else if (sweep->parsed()) {
      const auto cfg = detail::resolve(sweep_flags);
      detail::emit(cfg, commands::fwhm_sweep(cfg), out, err);
    }
  } catch (const AliasingError& e) {
    err << "numerical guard: " << e.what() << '\n';
    return numerical;
  } catch (const AnalysisError& e) {
    err << "numerical guard: " << e.what() << '\n';
    return numerical;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << '\n';
    return usage;
  }
  return ok;
}

}  // namespace qkr::cli
