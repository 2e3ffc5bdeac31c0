#pragma once

// Observables on combined momentum distributions: W_p normalisation,
// instrument-resolution convolution, central-peak FWHM and the zero-order
// height fraction P(0).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qkr/ensemble.hpp"
#include "qkr/errors.hpp"

namespace qkr {

// FWHM = 2 sqrt(2 ln 2) sigma for a Gaussian.
inline const double fwhm_per_sigma = 2.0 * std::sqrt(2.0 * std::numbers::ln2);

// Measured initial width the resolution model is calibrated against (recoils).
inline constexpr double reference_initial_sigma = 0.43;

inline MomentumDistribution normalize_W(const MomentumDistribution& dist, const MomentumDistribution& initial) {
  if (!dist.same_grid(initial)) throw ShapeError("normalize_W: distributions are on different grids");
  const double centre = initial.density[initial.zero_index()];
  if (!(centre > 0.0)) throw DomainError("normalize_W: initial density at p = 0 is zero");
  MomentumDistribution out = dist;
  for (double& d : out.density) d /= centre;
  out.mode = Normalization::wp;
  return out;
}

// Discrete convolution with a unit-sum Gaussian sampled on the grid and
// truncated at +-5 sigma_res.
inline MomentumDistribution convolve_resolution(const MomentumDistribution& dist, double sigma_res) {
  if (!(sigma_res >= 0.0) || !std::isfinite(sigma_res)) {
    throw DomainError("convolve_resolution: sigma_res must be finite and non-negative");
  }
  if (sigma_res == 0.0) return dist;
  const double dp = dist.spacing();
  MomentumDistribution out = dist;
  if (sigma_res < 0.5 * dp) {
    out.warnings.push_back("resolution kernel under-resolved: sigma_res " + std::to_string(sigma_res) +
                           " < half the grid spacing " + std::to_string(0.5 * dp));
  }
  const auto half = static_cast<std::ptrdiff_t>(std::floor(5.0 * sigma_res / dp));
  std::vector<double> kernel(static_cast<std::size_t>(2 * half + 1));
  double ksum = 0.0;
  for (std::ptrdiff_t i = -half; i <= half; ++i) {
    const double x = static_cast<double>(i) * dp / sigma_res;
    ksum += kernel[static_cast<std::size_t>(i + half)] = std::exp(-0.5 * x * x);
  }
  for (double& k : kernel) k /= ksum;

  const auto n = static_cast<std::ptrdiff_t>(dist.density.size());
  std::fill(out.density.begin(), out.density.end(), 0.0);
  for (std::ptrdiff_t src = 0; src < n; ++src) {
    const double v = dist.density[static_cast<std::size_t>(src)];
    if (v == 0.0) continue;
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(-half, -src);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(half, n - 1 - src);
    for (std::ptrdiff_t i = lo; i <= hi; ++i) {
      out.density[static_cast<std::size_t>(src + i)] += v * kernel[static_cast<std::size_t>(i + half)];
    }
  }
  return out;
}

// Width of the central lobe. The peak is the largest density with |p| < 1
// recoil; each side walks outward to the first sample below half maximum and
// interpolates linearly. Side-lobes beyond the first crossing are ignored.
inline double fwhm_central_peak(const MomentumDistribution& dist) {
  const double dp = dist.spacing();
  const auto n = static_cast<std::ptrdiff_t>(dist.density.size());
  std::ptrdiff_t peak = -1;
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    if (std::abs(dist.momentum(static_cast<std::size_t>(k))) >= 1.0) continue;
    if (peak < 0 || dist.density[static_cast<std::size_t>(k)] > dist.density[static_cast<std::size_t>(peak)]) peak = k;
  }
  if (peak < 0 || !(dist.density[static_cast<std::size_t>(peak)] > 0.0)) {
    throw AnalysisError("fwhm_central_peak: no central peak within |p| < 1 recoil");
  }
  const auto at = [&](std::ptrdiff_t k) { return dist.density[static_cast<std::size_t>(k)]; };
  const double half_max = 0.5 * at(peak);
  const auto reach = static_cast<std::ptrdiff_t>(std::floor(1.0 / dp + 1e-9));

  auto crossing = [&](std::ptrdiff_t step) {
    for (std::ptrdiff_t i = 1; i <= reach; ++i) {
      const std::ptrdiff_t k = peak + step * i;
      if (k < 0 || k >= n) break;
      if (at(k) < half_max) {
        const std::ptrdiff_t inner = k - step;
        const double frac = (at(inner) - half_max) / (at(inner) - at(k));
        return dist.momentum(static_cast<std::size_t>(inner)) + static_cast<double>(step) * frac * dp;
      }
    }
    throw AnalysisError("fwhm_central_peak: no half-maximum crossing within 1 recoil of the peak");
  };
  const double right = crossing(+1);
  const double left = crossing(-1);
  return right - left;
}

inline double measured_sigma(const MomentumDistribution& dist) { return fwhm_central_peak(dist) / fwhm_per_sigma; }

// Height of each diffraction order: the maximum (height) or the integral
// (integrated) of the density within p in [2n - 0.5, 2n + 0.5] recoils.
enum class OrderMetric { height, integrated };

inline std::string to_string(OrderMetric m) { return m == OrderMetric::height ? "height" : "integrated"; }

inline OrderMetric parse_order_metric(const std::string& s) {
  if (s == "height") return OrderMetric::height;
  if (s == "integrated") return OrderMetric::integrated;
  throw ArgumentError("metric must be 'height' or 'integrated', got '" + s + "'");
}

struct OrderHeights {
  int min_order = 0;
  std::vector<double> heights;

  int max_order() const noexcept { return min_order + static_cast<int>(heights.size()) - 1; }
  double at(int order) const noexcept {
    const int i = order - min_order;
    return i >= 0 && i < static_cast<int>(heights.size()) ? heights[static_cast<std::size_t>(i)] : 0.0;
  }
  double total() const noexcept {
    double s = 0.0;
    for (double h : heights) s += h;
    return s;
  }
};

inline OrderHeights order_heights(const MomentumDistribution& dist, OrderMetric metric = OrderMetric::height) {
  // In grid units g = k - origin, p = 2 g / M, and |p - 2n| <= 1/2 <=> 4 |g - n M| <= M.
  const std::ptrdiff_t m = dist.members;
  const std::ptrdiff_t g_lo = dist.offset(0);
  const std::ptrdiff_t g_hi = dist.offset(dist.size() - 1);
  auto floor_div = [](std::ptrdiff_t a, std::ptrdiff_t b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
  const std::ptrdiff_t n_lo = -floor_div(-(4 * g_lo - m), 4 * m);  // ceil((4 g_lo - M) / 4M)
  const std::ptrdiff_t n_hi = floor_div(4 * g_hi + m, 4 * m);
  OrderHeights out;
  out.min_order = static_cast<int>(n_lo);
  out.heights.assign(static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, n_hi - n_lo + 1)), 0.0);
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const std::ptrdiff_t g = dist.offset(k);
    const std::ptrdiff_t n = floor_div(2 * g + m, 2 * m);  // nearest order
    if (4 * std::abs(g - n * m) > m) continue;
    double& h = out.heights[static_cast<std::size_t>(n - n_lo)];
    const double v = dist.density[k];
    if (metric == OrderMetric::height) {
      h = std::max(h, v);
    } else {
      h += v * dist.spacing();
    }
  }
  return out;
}

inline double p0_fraction(const OrderHeights& h) {
  const double total = h.total();
  return total > 0.0 ? h.at(0) / total : 0.0;
}

inline double p0_fraction(const MomentumDistribution& dist, OrderMetric metric = OrderMetric::height) {
  return p0_fraction(order_heights(dist, metric));
}

struct AnalysisResult {
  double fwhm = 0.0;
  double p0_fraction = 0.0;
  OrderHeights order_heights;
  std::vector<std::pair<int, double>> per_kick;  // (kick index from 1, p0 fraction)
};

inline AnalysisResult analyze(const MomentumDistribution& dist, OrderMetric metric = OrderMetric::height) {
  AnalysisResult r;
  r.fwhm = fwhm_central_peak(dist);
  r.order_heights = order_heights(dist, metric);
  r.p0_fraction = p0_fraction(r.order_heights);
  return r;
}

struct ResolutionCalibration {
  double sigma_res = 0.0;
  double convolved_sigma = 0.0;
  std::vector<std::string> warnings;
};

// sigma_res such that the convolved initial distribution measures
// target_sigma via FWHM / 2.3548. Secant refinement from the Gaussian
// variance-addition guess.
inline ResolutionCalibration calibrate_resolution(const MomentumDistribution& initial,
                                                  double target_sigma = reference_initial_sigma) {
  ResolutionCalibration cal;
  const double own = measured_sigma(initial);
  if (own >= target_sigma) {
    cal.sigma_res = 0.0;
    cal.convolved_sigma = own;
    cal.warnings.push_back("initial width already exceeds the calibration target; no resolution applied");
    return cal;
  }
  auto residual = [&](double s) { return measured_sigma(convolve_resolution(initial, s)) - target_sigma; };
  double x0 = std::sqrt(target_sigma * target_sigma - own * own);
  double f0 = residual(x0);
  double x1 = x0 - f0;
  for (int it = 0; it < 30 && std::abs(f0) > 1e-9 * target_sigma; ++it) {
    const double f1 = residual(x1);
    if (f1 == f0) break;
    const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    x0 = x1;
    f0 = f1;
    x1 = std::max(x2, 0.0);
  }
  cal.sigma_res = x0;
  cal.convolved_sigma = f0 + target_sigma;
  return cal;
}

}  // namespace qkr
