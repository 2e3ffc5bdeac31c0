#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qkr/analysis.hpp"

using namespace qkr;

namespace {

// Fine test grid: M members, small ladder.
template <typename F>
MomentumDistribution sampled(int members, int n_max, F&& f) {
  auto d = empty_distribution(members, n_max);
  for (std::size_t k = 0; k < d.size(); ++k) d.density[k] = f(d.momentum(k));
  return d;
}

double gaussian_pdf(double p, double sigma) {
  return std::exp(-0.5 * p * p / (sigma * sigma)) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

TEST(NormalizeW, UnitAtZeroAndScaleInvariant) {
  const auto init = sampled(101, 8, [](double p) { return gaussian_pdf(p, 0.2); });
  const auto w = normalize_W(init, init);
  EXPECT_EQ(w.mode, Normalization::wp);
  EXPECT_DOUBLE_EQ(w.density[w.zero_index()], 1.0);

  const auto later = sampled(101, 8, [](double p) { return 0.3 * gaussian_pdf(p, 0.05) + 0.1 * gaussian_pdf(p - 2, 0.2); });
  auto later2 = later, init2 = init;
  for (double& v : later2.density) v *= 2.0;
  for (double& v : init2.density) v *= 2.0;
  EXPECT_EQ(normalize_W(later, init).density, normalize_W(later2, init2).density);
}

TEST(NormalizeW, Errors) {
  const auto a = sampled(101, 8, [](double p) { return gaussian_pdf(p, 0.2); });
  const auto b = sampled(51, 8, [](double p) { return gaussian_pdf(p, 0.2); });
  EXPECT_THROW(normalize_W(a, b), ShapeError);
  const auto hole = sampled(101, 8, [](double p) { return p == 0.0 ? 0.0 : 1.0; });
  EXPECT_THROW(normalize_W(a, hole), DomainError);
}

TEST(ConvolveResolution, DeltaBecomesGaussian) {
  auto d = empty_distribution(201, 8);
  d.density[d.zero_index()] = 1.0 / d.spacing();
  const auto c = convolve_resolution(d, 0.3);
  EXPECT_NEAR(c.integral(), 1.0, 1e-12);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double p = c.momentum(k);
    if (std::abs(p) > 1.2) continue;  // compare where the Gaussian is not tiny
    EXPECT_NEAR(c.density[k], gaussian_pdf(p, 0.3), 1e-3 * gaussian_pdf(p, 0.3));
  }
  EXPECT_NEAR(measured_sigma(c), 0.3, 0.3 * 1e-3);
}

TEST(ConvolveResolution, ZeroWidthIsIdentity) {
  const auto d = sampled(101, 8, [](double p) { return gaussian_pdf(p, 0.2); });
  EXPECT_EQ(convolve_resolution(d, 0.0).density, d.density);
  EXPECT_THROW(convolve_resolution(d, -0.1), DomainError);
}

TEST(ConvolveResolution, VariancesAdd) {
  const auto d = sampled(201, 8, [](double p) { return gaussian_pdf(p, 0.2); });
  const auto c = convolve_resolution(d, 0.3);
  EXPECT_NEAR(measured_sigma(c), std::sqrt(0.13), std::sqrt(0.13) * 0.02);
}

TEST(ConvolveResolution, PreservesMass) {
  const auto d = sampled(201, 16, [](double p) {
    return 0.5 * gaussian_pdf(p, 0.04) + 0.25 * gaussian_pdf(p - 2, 0.1) + 0.25 * gaussian_pdf(p + 4, 0.3);
  });
  for (double s : {0.01, 0.1, 0.4271, 1.0}) EXPECT_NEAR(convolve_resolution(d, s).integral(), d.integral(), 1e-9);
}

TEST(ConvolveResolution, WarnsWhenKernelIsUnderResolved) {
  const auto d = sampled(11, 8, [](double p) { return gaussian_pdf(p, 0.5); });
  EXPECT_FALSE(convolve_resolution(d, 0.05).warnings.empty());  // dp = 0.18
  EXPECT_TRUE(convolve_resolution(d, 0.5).warnings.empty());
}

TEST(FwhmCentralPeak, Gaussian) {
  const auto d = sampled(2001, 4, [](double p) { return gaussian_pdf(p, 0.2); });
  EXPECT_NEAR(fwhm_central_peak(d), 0.4710, 0.4710 * 5e-3);
  EXPECT_NEAR(fwhm_central_peak(d), fwhm_per_sigma * 0.2, 1e-5);
}

TEST(FwhmCentralPeak, TriangleIsExact) {
  for (double w : {0.1, 0.5, 0.8}) {
    const auto d = sampled(1001, 4, [w](double p) { return std::max(0.0, 1.0 - std::abs(p) / w); });
    EXPECT_NEAR(fwhm_central_peak(d), w, 1e-12);
  }
}

TEST(FwhmCentralPeak, ScaleInvariant) {
  const auto d = sampled(401, 8, [](double p) { return gaussian_pdf(p, 0.07) + 0.3 * gaussian_pdf(p - 0.3, 0.05); });
  auto doubled = d, odd = d;
  for (double& v : doubled.density) v *= 4.0;
  for (double& v : odd.density) v *= 3.7;
  EXPECT_EQ(fwhm_central_peak(d), fwhm_central_peak(doubled));
  EXPECT_NEAR(fwhm_central_peak(d), fwhm_central_peak(odd), 1e-14);
}

TEST(FwhmCentralPeak, IgnoresDetachedSideLobes) {
  const auto d = sampled(1001, 4, [](double p) {
    return gaussian_pdf(p, 0.05) + 0.8 * gaussian_pdf(p - 0.5, 0.05) + 0.8 * gaussian_pdf(p + 0.5, 0.05);
  });
  EXPECT_NEAR(fwhm_central_peak(d), fwhm_per_sigma * 0.05, 1e-3);
}

TEST(FwhmCentralPeak, Errors) {
  const auto flat = sampled(101, 4, [](double) { return 1.0; });
  EXPECT_THROW(fwhm_central_peak(flat), AnalysisError);
  const auto empty = sampled(101, 4, [](double) { return 0.0; });
  EXPECT_THROW(fwhm_central_peak(empty), AnalysisError);
  const auto off_centre = sampled(101, 4, [](double p) { return gaussian_pdf(p - 4.0, 0.1); });
  EXPECT_THROW(fwhm_central_peak(off_centre), AnalysisError);
}

TEST(P0Fraction, AllInOrderZero) {
  const auto d = sampled(201, 8, [](double p) { return gaussian_pdf(p, 0.05); });
  EXPECT_DOUBLE_EQ(p0_fraction(d), 1.0);
  EXPECT_DOUBLE_EQ(p0_fraction(d, OrderMetric::integrated), 1.0);
}

TEST(P0Fraction, EqualHeights) {
  auto d = empty_distribution(201, 8);
  for (int n = -2; n <= 2; ++n) d.density[static_cast<std::size_t>(d.origin + 201 * n)] = 1.0;
  EXPECT_NEAR(p0_fraction(d), 0.2, 1e-15);
  const auto h = order_heights(d);
  EXPECT_EQ(h.min_order, -8);
  EXPECT_EQ(h.max_order(), 7);
}

TEST(P0Fraction, WindowEdgesAreHalfRecoil) {
  auto d = empty_distribution(4, 4);  // spacing 0.5: samples exactly at 2n +- 0.5
  d.density[static_cast<std::size_t>(d.origin + 1)] = 2.0;   // p = 0.5, order 0 window edge
  d.density[static_cast<std::size_t>(d.origin + 3)] = 1.0;   // p = 1.5, order 1 window edge
  d.density[static_cast<std::size_t>(d.origin + 2)] = 50.0;  // p = 1.0, between windows
  const auto h = order_heights(d);
  EXPECT_EQ(h.at(0), 2.0);
  EXPECT_EQ(h.at(1), 1.0);
  EXPECT_NEAR(p0_fraction(h), 2.0 / 3.0, 1e-15);
}

TEST(P0Fraction, AlwaysInUnitInterval) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    auto d = empty_distribution(21, 6);
    for (double& v : d.density) v = u(rng) < 0.2 ? u(rng) : 0.0;
    for (auto m : {OrderMetric::height, OrderMetric::integrated}) {
      const double f = p0_fraction(d, m);
      EXPECT_GE(f, 0.0);
      EXPECT_LE(f, 1.0);
    }
  }
  EXPECT_EQ(p0_fraction(empty_distribution(21, 6)), 0.0);
}

TEST(Analyze, ConsistentFields) {
  const auto d = sampled(201, 8, [](double p) { return gaussian_pdf(p, 0.05) + 0.5 * gaussian_pdf(p - 2, 0.05); });
  const auto r = analyze(d);
  EXPECT_NEAR(r.p0_fraction, r.order_heights.at(0) / r.order_heights.total(), 1e-15);
  EXPECT_NEAR(r.fwhm, fwhm_per_sigma * 0.05, 2e-3);
  EXPECT_EQ(parse_order_metric("integrated"), OrderMetric::integrated);
  EXPECT_THROW(parse_order_metric("area"), ArgumentError);
}

TEST(CalibrateResolution, HitsTargetWidth) {
  const auto init = initial_distribution(InitialEnsemble::gaussian(0.05, 201), 32);
  const auto cal = calibrate_resolution(init);
  EXPECT_NEAR(measured_sigma(convolve_resolution(init, cal.sigma_res)), 0.43, 1e-8);
  EXPECT_NEAR(cal.sigma_res, std::sqrt(0.43 * 0.43 - 0.05 * 0.05), 2e-3);
  EXPECT_TRUE(cal.warnings.empty());
}

TEST(CalibrateResolution, WideInitialNeedsNoKernel) {
  const auto init = initial_distribution(InitialEnsemble::gaussian(0.5, 201), 32);
  const auto cal = calibrate_resolution(init);
  EXPECT_EQ(cal.sigma_res, 0.0);
  EXPECT_FALSE(cal.warnings.empty());
}
