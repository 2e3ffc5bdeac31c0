#pragma once

// The three experiment families behind the CLI. Each returns the complete CSV
// text; writing it out is the caller's business.

#include <string>
#include <vector>

#include "qkr/analysis.hpp"
#include "qkr/config.hpp"
#include "qkr/csv.hpp"
#include "qkr/ensemble.hpp"
#include "qkr/pulse_train.hpp"
#include "qkr/version.hpp"

namespace qkr::commands {

// Rows of an echo CSV cover the grid points between the outermost samples whose
// raw or convolved density reaches this value.
inline constexpr double echo_row_floor = 1e-15;

struct Setup {
  InitialEnsemble ensemble;
  MomentumDistribution initial;
  double sigma_res = 0.0;
  std::vector<std::string> warnings;
};

inline Setup prepare(const RunConfig& cfg) {
  auto ens = InitialEnsemble::gaussian(cfg.sigma_bec, cfg.members);
  auto initial = initial_distribution(ens, cfg.n_max);
  Setup s{std::move(ens), std::move(initial), 0.0, {}};
  if (cfg.resolution) {
    s.sigma_res = *cfg.resolution;
  } else {
    auto cal = calibrate_resolution(s.initial);
    s.sigma_res = cal.sigma_res;
    s.warnings = std::move(cal.warnings);
  }
  return s;
}

inline void preamble(csv::Document& doc, const std::string& command, const RunConfig& cfg, const Setup& setup) {
  doc.comment(std::string("qkr ") + version + " " + command);
  doc.comment("units: p in single-photon recoils (hbar k_L); ladder order n sits at p = 2 (n + beta);");
  doc.comment("units: epsilon and drift times in scaled period kbar = 8 omega_R T; phi dimensionless");
  cfg.write_metadata(doc, setup.sigma_res);
}

inline const MomentumDistribution& p0_input(const RunConfig& cfg, const MomentumDistribution& raw,
                                            const MomentumDistribution& convolved) {
  return cfg.p0_source == P0Source::convolved ? convolved : raw;
}

struct Output {
  std::string csv;
  std::vector<std::string> warnings;
};

inline Output echo(const RunConfig& cfg) {
  cfg.validate(true);
  if (cfg.epsilons.size() != 1) throw ArgumentError("echo takes exactly one --epsilon");
  const Setup setup = prepare(cfg);
  const auto train = loschmidt_train(cfg.kicks, cfg.epsilons.front(), cfg.phi, cfg.midpoint);
  const auto final = ensemble_distribution(train, setup.ensemble, {cfg.n_max, false, cfg.threads}).final;
  const auto wp = normalize_W(final, setup.initial);
  const auto conv = convolve_resolution(final, setup.sigma_res);
  const auto conv_initial = convolve_resolution(setup.initial, setup.sigma_res);

  Output out{{}, setup.warnings};
  out.warnings.insert(out.warnings.end(), conv.warnings.begin(), conv.warnings.end());

  csv::Document doc;
  preamble(doc, "echo", cfg, setup);
  doc.meta("result.fwhm_raw", fwhm_central_peak(final));
  doc.meta("result.fwhm_convolved", fwhm_central_peak(conv));
  doc.meta("result.initial_fwhm_raw", fwhm_central_peak(setup.initial));
  doc.meta("result.initial_fwhm_convolved", fwhm_central_peak(conv_initial));
  doc.meta("result.p0_fraction", p0_fraction(p0_input(cfg, final, conv), cfg.metric));
  doc.meta("result.wp_at_zero", wp.density[wp.zero_index()]);
  doc.comment("rows: grid points between the outermost samples with density >= 1e-15");
  doc.header({"p_recoils", "density_raw", "density_Wp", "density_convolved"});

  std::size_t first = final.size(), last = 0;
  for (std::size_t k = 0; k < final.size(); ++k) {
    if (final.density[k] >= echo_row_floor || conv.density[k] >= echo_row_floor) {
      first = std::min(first, k);
      last = k;
    }
  }
  for (std::size_t k = first; k <= last && first < final.size(); ++k) {
    doc.row({final.momentum(k), final.density[k], wp.density[k], conv.density[k]});
  }
  out.csv = doc.str();
  return out;
}

inline Output p0_sequence(const RunConfig& cfg) {
  cfg.validate(true);
  if (cfg.epsilons.size() != 1) throw ArgumentError("p0-sequence takes exactly one --epsilon");
  const Setup setup = prepare(cfg);
  const auto train = loschmidt_train(cfg.kicks, cfg.epsilons.front(), cfg.phi, cfg.midpoint);
  const auto result = ensemble_distribution(train, setup.ensemble, {cfg.n_max, true, cfg.threads});

  Output out{{}, setup.warnings};
  csv::Document doc;
  preamble(doc, "p0-sequence", cfg, setup);
  doc.header({"kick_index", "p0_fraction"});
  for (std::size_t i = 0; i < result.per_kick.size(); ++i) {
    const auto& raw = result.per_kick[i];
    const auto conv = convolve_resolution(raw, setup.sigma_res);
    doc.row({static_cast<double>(i + 1), p0_fraction(p0_input(cfg, raw, conv), cfg.metric)});
  }
  out.csv = doc.str();
  return out;
}

inline Output fwhm_sweep(const RunConfig& cfg) {
  cfg.validate(true);
  const Setup setup = prepare(cfg);
  Output out{{}, setup.warnings};
  csv::Document doc;
  preamble(doc, "fwhm-sweep", cfg, setup);
  doc.header({"epsilon", "fwhm_convolved", "fwhm_unconvolved", "p0_fraction"});
  for (double eps : cfg.epsilons) {
    const auto train = loschmidt_train(cfg.kicks, eps, cfg.phi, cfg.midpoint);
    const auto final = ensemble_distribution(train, setup.ensemble, {cfg.n_max, false, cfg.threads}).final;
    const auto conv = convolve_resolution(final, setup.sigma_res);
    doc.row({eps, fwhm_central_peak(conv), fwhm_central_peak(final), p0_fraction(p0_input(cfg, final, conv), cfg.metric)});
  }
  out.csv = doc.str();
  return out;
}

}  // namespace qkr::commands
