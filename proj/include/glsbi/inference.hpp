#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glsbi/chi_squared.hpp"
#include "glsbi/distfit.hpp"
#include "glsbi/error.hpp"
#include "glsbi/stats.hpp"

namespace glsbi {

enum class Estimator { Gaussian, Histogram };

inline std::string_view to_string(Estimator e) noexcept {
    return e == Estimator::Gaussian ? "gaussian" : "histogram";
}

inline Estimator parse_estimator(std::string_view s) {
    if (s == "gaussian")
        return Estimator::Gaussian;
    if (s == "histogram")
        return Estimator::Histogram;
    throw Error(Errc::config, "unknown estimator '" + std::string(s) + "' (expected gaussian|histogram)");
}

/// What gets fitted by the parabola around the grid maximum.
enum class Interpolation {
    Likelihood,    // default: the product of densities, via exp(logL - max)
    LogLikelihood, // non-default variant
};

struct Observation {
    StatisticKind kind = StatisticKind::SpikeFreq;
    std::vector<double> values;

    void validate() const {
        if (values.empty())
            throw Error(Errc::parameter, "observation has no values");
        for (double v : values)
            if (!std::isfinite(v))
                throw Error(Errc::nan_input, "observation value is not finite");
    }
};

enum EstimateFlag : unsigned {
    kFlagNone = 0,
    kFlagBoundary = 1u << 0,   // grid argmax at an endpoint, no interpolation
    kFlagDegenerate = 1u << 1, // collinear interpolation points
    kFlagClipped = 1u << 2,    // confidence interval reached the grid range
};

inline std::string flags_to_string(unsigned flags) {
    std::string out;
    auto add = [&](unsigned bit, const char* name) {
        if (flags & bit) {
            if (!out.empty())
                out += '|';
            out += name;
        }
    };
    add(kFlagBoundary, "boundary");
    add(kFlagDegenerate, "degenerate");
    add(kFlagClipped, "clipped");
    return out.empty() ? "none" : out;
}

struct ConfidenceInterval {
    double lo = 0.0;
    double hi = 0.0;
    double level = 0.95;
    bool clipped = false;
};

struct Estimate {
    std::size_t tilde_index = 0;
    double p_tilde = 0.0;
    double p_hat = 0.0;
    std::vector<double> grid;
    std::vector<double> loglik; // one value per grid point
    std::optional<ConfidenceInterval> ci;
    Estimator method = Estimator::Gaussian;
    unsigned flags = kFlagNone;
};

inline double log_likelihood(const SamplingDistributionTable& table, std::size_t p_index, const Observation& obs,
                             Estimator est) {
    if (obs.kind != table.meta.kind)
        throw Error(Errc::kind_mismatch, "observation statistic '" + std::string(to_string(obs.kind)) +
                                             "' does not match table statistic '" +
                                             std::string(to_string(table.meta.kind)) + "'");
    if (p_index >= table.size())
        throw Error(Errc::parameter, "grid index out of range");
    const TablePoint& pt = table.points[p_index];
    double sum = 0.0;
    for (double x : obs.values)
        sum += est == Estimator::Gaussian ? log_density(pt.gaussian, x) : log_density(pt.histogram, x);
    return sum;
}

inline std::vector<double> log_likelihood_curve(const SamplingDistributionTable& table, const Observation& obs,
                                                Estimator est) {
    std::vector<double> curve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i)
        curve[i] = log_likelihood(table, i, obs, est);
    return curve;
}

/// First index of the maximum; ties go to the smallest p.
inline std::size_t argmax_first(std::span<const double> values) {
    if (values.empty())
        throw Error(Errc::parameter, "argmax of an empty curve");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best])
            best = i;
    return best;
}

inline std::size_t grid_argmax(const SamplingDistributionTable& table, const Observation& obs, Estimator est) {
    return argmax_first(log_likelihood_curve(table, obs, est));
}

struct PeakResult {
    double x = 0.0;
    bool degenerate = false;
};

/**
 * Vertex of the parabola through three points with x1 < x2 < x3 and
 * y2 >= y1, y2 >= y3:
 *
 *   x = [D1 (x2+x3) - D2 (x1+x3) + D3 (x1+x2)] / [2 (D1 - D2 + D3)]
 *   D1 = y1 (x3-x2),  D2 = y2 (x3-x1),  D3 = y3 (x2-x1)
 *
 * Collinear points (zero denominator) return x2 flagged degenerate.
 */
inline PeakResult quadratic_peak(double x1, double y1, double x2, double y2, double x3, double y3) {
    if (!(x1 < x2 && x2 < x3))
        throw Error(Errc::parameter, "quadratic_peak needs x1 < x2 < x3");
    if (!(y2 >= y1 && y2 >= y3))
        throw Error(Errc::parameter, "quadratic_peak needs the middle point to be a maximum");
    const double d1 = y1 * (x3 - x2);
    const double d2 = y2 * (x3 - x1);
    const double d3 = y3 * (x2 - x1);
    const double denom = 2.0 * (d1 - d2 + d3);
    if (denom == 0.0)
        return {x2, true};
    const double x = (d1 * (x2 + x3) - d2 * (x1 + x3) + d3 * (x1 + x2)) / denom;
    return {std::clamp(x, x1, x3), false};
}

/**
 * Grid argmax refined by the vertex of the parabola through the argmax and its
 * two neighbours. Likelihood values are exp(logL - max logL) over the three
 * points, which leaves the vertex unchanged. An endpoint argmax is returned
 * as-is with the boundary flag.
 */
inline Estimate estimate_from_curve(std::span<const double> grid, std::span<const double> loglik, Estimator est,
                                    Interpolation interp = Interpolation::Likelihood) {
    if (grid.size() < 3)
        throw Error(Errc::parameter, "estimation needs a grid of at least 3 points");
    if (loglik.size() != grid.size())
        throw Error(Errc::parameter, "log-likelihood curve length differs from the grid");
    Estimate e;
    e.method = est;
    e.grid.assign(grid.begin(), grid.end());
    e.loglik.assign(loglik.begin(), loglik.end());
    e.tilde_index = argmax_first(loglik);
    e.p_tilde = grid[e.tilde_index];
    const std::size_t i = e.tilde_index;
    if (i == 0 || i + 1 == grid.size()) {
        e.p_hat = e.p_tilde;
        e.flags |= kFlagBoundary;
        return e;
    }
    double y1 = loglik[i - 1], y2 = loglik[i], y3 = loglik[i + 1];
    if (interp == Interpolation::Likelihood) {
        y1 = std::exp(y1 - y2);
        y3 = std::exp(y3 - y2);
        y2 = 1.0;
    }
    const PeakResult peak = quadratic_peak(grid[i - 1], y1, grid[i], y2, grid[i + 1], y3);
    e.p_hat = peak.x;
    if (peak.degenerate)
        e.flags |= kFlagDegenerate;
    return e;
}

inline Estimate estimate_p(const SamplingDistributionTable& table, const Observation& obs, Estimator est,
                           Interpolation interp = Interpolation::Likelihood) {
    obs.validate();
    const auto grid = table.grid();
    const auto curve = log_likelihood_curve(table, obs, est);
    return estimate_from_curve(grid, curve, est, interp);
}

/// Piecewise-linear interpolation of the curve at x (x within the grid range).
inline double interpolate_curve(std::span<const double> grid, std::span<const double> values, double x) {
    if (x <= grid.front())
        return values.front();
    if (x >= grid.back())
        return values.back();
    const auto it = std::upper_bound(grid.begin(), grid.end(), x);
    const std::size_t r = static_cast<std::size_t>(it - grid.begin());
    const std::size_t l = r - 1;
    const double t = (x - grid[l]) / (grid[r] - grid[l]);
    return values[l] + t * (values[r] - values[l]);
}

/**
 * Likelihood-ratio interval: the connected set of p around p_hat with
 * logL(p) >= logL(p_hat) - q/2, q the `level` quantile of chi-squared(1).
 * logL between grid points is linearly interpolated; bounds that reach the
 * grid ends are clipped there and flagged.
 */
inline ConfidenceInterval confidence_interval(const Estimate& e, double level) {
    if (!(level > 0.0 && level < 1.0))
        throw Error(Errc::parameter, "confidence level must lie in (0,1)");
    const auto& g = e.grid;
    const auto& ll = e.loglik;
    const double threshold = interpolate_curve(g, ll, e.p_hat) - 0.5 * chi_squared_quantile(level, 1.0);
    ConfidenceInterval ci;
    ci.level = level;

    // Right of p_hat.
    const std::size_t first_right = static_cast<std::size_t>(std::upper_bound(g.begin(), g.end(), e.p_hat) - g.begin());
    double x_prev = e.p_hat, y_prev = interpolate_curve(g, ll, e.p_hat);
    ci.hi = g.back();
    ci.clipped = true;
    for (std::size_t k = first_right; k < g.size(); ++k) {
        if (ll[k] < threshold) {
            ci.hi = x_prev + (threshold - y_prev) / (ll[k] - y_prev) * (g[k] - x_prev);
            ci.clipped = false;
            break;
        }
        x_prev = g[k];
        y_prev = ll[k];
    }

    // Left of p_hat.
    const auto lb = std::lower_bound(g.begin(), g.end(), e.p_hat);
    x_prev = e.p_hat;
    y_prev = interpolate_curve(g, ll, e.p_hat);
    bool left_found = false;
    ci.lo = g.front();
    for (auto idx = static_cast<std::ptrdiff_t>(lb - g.begin()) - 1; idx >= 0; --idx) {
        const auto k = static_cast<std::size_t>(idx);
        if (ll[k] < threshold) {
            ci.lo = x_prev - (threshold - y_prev) / (ll[k] - y_prev) * (x_prev - g[k]);
            left_found = true;
            break;
        }
        x_prev = g[k];
        y_prev = ll[k];
    }
    if (!left_found)
        ci.clipped = true;
    ci.lo = std::min(ci.lo, e.p_hat);
    ci.hi = std::max(ci.hi, e.p_hat);
    return ci;
}

inline ConfidenceInterval confidence_interval(const SamplingDistributionTable& table, const Observation& obs,
                                              Estimator est, double level) {
    return confidence_interval(estimate_p(table, obs, est), level);
}

inline Estimate estimate_with_ci(const SamplingDistributionTable& table, const Observation& obs, Estimator est,
                                 double level, Interpolation interp = Interpolation::Likelihood) {
    Estimate e = estimate_p(table, obs, est, interp);
    e.ci = confidence_interval(e, level);
    if (e.ci->clipped)
        e.flags |= kFlagClipped;
    return e;
}

/**
 * Deviance D = -2 (logL(p0) - logL(p_hat)) of a reference value p0, with logL
 * linearly interpolated on the grid.
 */
inline double deviance(const Estimate& e, double p0) {
    const double at_hat = interpolate_curve(e.grid, e.loglik, e.p_hat);
    const double at_p0 = interpolate_curve(e.grid, e.loglik, p0);
    return -2.0 * (at_p0 - at_hat);
}

/**
 * Mean absolute error of the graph-reconstruction estimate N_c / (s(s-1)) when
 * the connection count N_c ~ Binomial(s(s-1), p) is known exactly:
 * 2 sum_{k < ceil(Np)} C(N,k) p^k (1-p)^(N-k) (p - k/N), N = s(s-1).
 */
inline double optimal_reconstruction_mae(std::size_t s, double p) {
    if (s < 2)
        throw Error(Errc::parameter, "reconstruction baseline needs s >= 2");
    if (!(p > 0.0 && p < 1.0))
        throw Error(Errc::parameter, "reconstruction baseline needs 0 < p < 1");
    const std::size_t N = s * (s - 1);
    const double Nd = static_cast<double>(N);
    const auto upper = static_cast<std::size_t>(std::ceil(Nd * p));
    // pmf(k) by the ratio recurrence, started in log space.
    double log_pmf = Nd * std::log1p(-p);
    const double log_ratio_p = std::log(p) - std::log1p(-p);
    double sum = 0.0;
    for (std::size_t k = 0; k < upper; ++k) {
        const double kd = static_cast<double>(k);
        sum += std::exp(log_pmf) * (p - kd / Nd);
        log_pmf += std::log((Nd - kd) / (kd + 1.0)) + log_ratio_p;
    }
    return 2.0 * sum;
}

/// Standard error sqrt(p(1-p) / (s(s-1))) of the same estimate.
inline double optimal_reconstruction_se(std::size_t s, double p) {
    if (s < 2)
        throw Error(Errc::parameter, "reconstruction baseline needs s >= 2");
    if (!(p >= 0.0 && p <= 1.0))
        throw Error(Errc::parameter, "reconstruction baseline needs 0 <= p <= 1");
    return std::sqrt(p * (1.0 - p) / static_cast<double>(s * (s - 1)));
}

} // namespace glsbi
