#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "../support/oracles.hpp"
#include "glsbi/inference.hpp"

using namespace glsbi;

namespace {

/// Table whose Gaussian at grid point p has mean p and a fixed sigma.
SamplingDistributionTable linear_table(std::vector<double> grid, double sigma) {
    SamplingDistributionTable t;
    t.meta.kind = StatisticKind::SpikeFreq;
    for (double p : grid) {
        TablePoint pt;
        pt.p = p;
        pt.m = 100;
        pt.gaussian = {p, sigma, 100};
        pt.histogram = fit_histogram(std::vector<double>{p - sigma, p, p + sigma}, 3);
        t.points.push_back(pt);
    }
    return t;
}

std::vector<double> arith(double start, double step, std::size_t count) {
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = start + step * static_cast<double>(i);
    return g;
}

} // namespace

TEST(Inference, LogLikelihoodProduct) {
    const auto t = linear_table({0.0, 1.0, 2.0}, 1.0);
    const Observation one{StatisticKind::SpikeFreq, {0.0}};
    const Observation two{StatisticKind::SpikeFreq, {0.0, 0.0}};
    EXPECT_NEAR(log_likelihood(t, 0, one, Estimator::Gaussian), -0.9189385, 1e-7);
    EXPECT_EQ(log_likelihood(t, 0, two, Estimator::Gaussian), 2.0 * log_likelihood(t, 0, one, Estimator::Gaussian));
    const Observation wrong{StatisticKind::GammaAlpha, {0.0}};
    try {
        log_likelihood(t, 0, wrong, Estimator::Gaussian);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::kind_mismatch);
    }
    EXPECT_THROW(log_likelihood(t, 3, one, Estimator::Gaussian), Error);
}

TEST(Inference, EmptyHistogramBinUsesFloor) {
    auto t = linear_table({0.0, 1.0, 2.0}, 1.0);
    t.points[0].histogram = fit_histogram(std::vector<double>{0.0, 1.0}, 3); // middle bin empty
    const Observation obs{StatisticKind::SpikeFreq, {0.5, 0.1}};
    EXPECT_EQ(log_likelihood(t, 0, obs, Estimator::Histogram), std::log(1e-30) + std::log(1.0 / (2 * (1.0 / 3))));
}

TEST(Inference, ArgmaxTieGoesToSmallestP) {
    EXPECT_EQ(argmax_first(std::vector<double>{3.0}), 0u);
    EXPECT_EQ(argmax_first(std::vector<double>{1, 1, 1, 1}), 0u);
    EXPECT_EQ(argmax_first(std::vector<double>{1, 5, 2, 5}), 1u);
    EXPECT_THROW(argmax_first(std::vector<double>{}), Error);
}

TEST(Inference, QuadraticPeakExamples) {
    auto r = quadratic_peak(0, 0, 1, 1, 2, 0);
    EXPECT_EQ(r.x, 1.0);
    EXPECT_FALSE(r.degenerate);
    r = quadratic_peak(0, -0.25, 1, -0.25, 2, -2.25);
    EXPECT_DOUBLE_EQ(r.x, 0.5);
    r = quadratic_peak(0, 1, 1, 1, 2, 1);
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.x, 1.0);
    EXPECT_THROW(quadratic_peak(1, 0, 0, 1, 2, 0), Error);
    EXPECT_THROW(quadratic_peak(0, 2, 1, 1, 2, 0), Error);
}

TEST(Inference, QuadraticPeakMatchesLeastSquares) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        const double x1 = U(gen), x2 = x1 + 0.01 + U(gen), x3 = x2 + 0.01 + U(gen);
        const double y2 = U(gen), y1 = y2 - 0.01 - U(gen), y3 = y2 - 0.01 - U(gen);
        const double got = quadratic_peak(x1, y1, x2, y2, x3, y3).x;
        const long double ref = oracle::lsq_quadratic_vertex({x1, x2, x3}, {y1, y2, y3});
        EXPECT_NEAR(got, static_cast<double>(ref), 1e-12 * std::max(1.0, std::fabs(static_cast<double>(ref))));
        const double a = 0.1 + 10.0 * U(gen), b = 20.0 * U(gen) - 10.0;
        EXPECT_NEAR(quadratic_peak(x1, a * y1 + b, x2, a * y2 + b, x3, a * y3 + b).x, got, 1e-10);
    }
}

TEST(Inference, SymmetricCurveReturnsMiddle) {
    const std::vector<double> g{0.1, 0.2, 0.3, 0.4, 0.5};
    const std::vector<double> ll{-9, -3, -1, -3, -9};
    const auto e = estimate_from_curve(g, ll, Estimator::Gaussian);
    EXPECT_EQ(e.tilde_index, 2u);
    EXPECT_NEAR(e.p_hat, 0.3, 1e-15);
    EXPECT_EQ(e.flags, kFlagNone);
}

TEST(Inference, BoundaryFlag) {
    const std::vector<double> g{0.1, 0.2, 0.3};
    auto e = estimate_from_curve(g, std::vector<double>{-1, -2, -3}, Estimator::Gaussian);
    EXPECT_EQ(e.p_hat, 0.1);
    EXPECT_TRUE(e.flags & kFlagBoundary);
    e = estimate_from_curve(g, std::vector<double>{-3, -2, -1}, Estimator::Gaussian);
    EXPECT_EQ(e.p_hat, 0.3);
    EXPECT_TRUE(e.flags & kFlagBoundary);
    EXPECT_THROW(estimate_from_curve(std::vector<double>{0.1, 0.2}, std::vector<double>{0, 0}, Estimator::Gaussian),
                 Error);
}

TEST(Inference, LogLikelihoodInterpolationIsExactForGaussianMeans) {
    // Fixed sigma, means equal to p: logL is an exact parabola in p with vertex at the sample mean.
    const auto t = linear_table(arith(0.0, 0.1, 11), 0.3);
    const Observation obs{StatisticKind::SpikeFreq, {0.41, 0.47, 0.52, 0.38}};
    const auto e = estimate_p(t, obs, Estimator::Gaussian, Interpolation::LogLikelihood);
    EXPECT_NEAR(e.p_hat, 0.445, 1e-12);
    const auto lik = estimate_p(t, obs, Estimator::Gaussian, Interpolation::Likelihood);
    EXPECT_EQ(lik.tilde_index, e.tilde_index);
    EXPECT_NEAR(lik.p_hat, 0.445, 0.02);
}

TEST(Inference, LikelihoodRatioThreshold) {
    EXPECT_NEAR(0.5 * chi_squared_quantile(0.95, 1.0), 1.9207294, 1e-6);
    // logL = -(p - 0.5)^2 / (2 tau^2) on a fine grid: interval 0.5 +- tau * sqrt(3.8415).
    const double tau = 0.05;
    const auto g = arith(0.0, 0.0005, 2001);
    std::vector<double> ll(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        ll[i] = -(g[i] - 0.5) * (g[i] - 0.5) / (2 * tau * tau);
    auto e = estimate_from_curve(g, ll, Estimator::Gaussian, Interpolation::LogLikelihood);
    const auto ci = confidence_interval(e, 0.95);
    const double half = tau * std::sqrt(chi_squared_quantile(0.95, 1.0));
    EXPECT_NEAR(ci.lo, 0.5 - half, 1e-6);
    EXPECT_NEAR(ci.hi, 0.5 + half, 1e-6);
    EXPECT_FALSE(ci.clipped);
    EXPECT_LT(confidence_interval(e, 0.5).hi, ci.hi);
    EXPECT_NEAR(deviance(e, 0.5 + half), chi_squared_quantile(0.95, 1.0), 1e-4);
    EXPECT_THROW(confidence_interval(e, 1.0), Error);
}

TEST(Inference, FlatCurveClipsToGrid) {
    const std::vector<double> g{0.1, 0.2, 0.3, 0.4};
    const std::vector<double> ll(4, -5.0);
    auto e = estimate_from_curve(g, ll, Estimator::Gaussian);
    const auto ci = confidence_interval(e, 0.95);
    EXPECT_EQ(ci.lo, 0.1);
    EXPECT_EQ(ci.hi, 0.4);
    EXPECT_TRUE(ci.clipped);
}

TEST(Inference, EstimateWithCiFlagsClipping) {
    const auto t = linear_table(arith(0.0, 0.1, 6), 5.0); // very flat
    const Observation obs{StatisticKind::SpikeFreq, {0.25}};
    const auto e = estimate_with_ci(t, obs, Estimator::Gaussian, 0.95);
    ASSERT_TRUE(e.ci);
    EXPECT_TRUE(e.flags & kFlagClipped);
    EXPECT_EQ(flags_to_string(e.flags & kFlagClipped), "clipped");
    EXPECT_EQ(flags_to_string(kFlagBoundary | kFlagClipped), "boundary|clipped");
    EXPECT_EQ(flags_to_string(0), "none");
}

TEST(Inference, ObservationValidation) {
    const auto t = linear_table({0.0, 1.0, 2.0}, 1.0);
    EXPECT_THROW(estimate_p(t, Observation{StatisticKind::SpikeFreq, {}}, Estimator::Gaussian), Error);
    EXPECT_THROW(estimate_p(t, Observation{StatisticKind::SpikeFreq, {std::nan("")}}, Estimator::Gaussian), Error);
}

TEST(Inference, ReconstructionBaselineExamples) {
    EXPECT_EQ(optimal_reconstruction_mae(2, 0.5), 0.25);
    EXPECT_NEAR(optimal_reconstruction_se(10, 0.05), std::sqrt(0.0475 / 90.0), 1e-15);
    EXPECT_NEAR(optimal_reconstruction_se(10, 0.05), 0.022973, 1e-6);
    EXPECT_EQ(optimal_reconstruction_se(10, 0.0), 0.0);
    EXPECT_EQ(optimal_reconstruction_se(10, 1.0), 0.0);
    EXPECT_LT(optimal_reconstruction_mae(10, 1e-9), 1e-8);
    EXPECT_THROW(optimal_reconstruction_mae(1, 0.5), Error);
    EXPECT_THROW(optimal_reconstruction_mae(3, 0.0), Error);
}

TEST(Inference, ReconstructionBaselineMatchesEnumeration) {
    for (std::size_t s = 2; s * (s - 1) <= 30; ++s)
        for (double p : {0.003, 0.01, 0.05, 0.1, 0.25, 0.5, 0.77, 0.99}) {
            const auto ref = oracle::binomial_abs_error(s * (s - 1), p);
            EXPECT_NEAR(optimal_reconstruction_mae(s, p), static_cast<double>(ref[0]), 1e-12) << s << ' ' << p;
            EXPECT_NEAR(optimal_reconstruction_se(s, p), static_cast<double>(ref[1]), 1e-12) << s << ' ' << p;
        }
    // Larger N stays accurate through the log-space recurrence.
    const auto ref = oracle::binomial_abs_error(90, 0.0123);
    EXPECT_NEAR(optimal_reconstruction_mae(10, 0.0123), static_cast<double>(ref[0]), 1e-13);
}
