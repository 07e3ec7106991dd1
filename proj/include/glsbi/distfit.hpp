#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "glsbi/dynamics.hpp"
#include "glsbi/error.hpp"
#include "glsbi/graph.hpp"
#include "glsbi/parallel.hpp"
#include "glsbi/rng.hpp"
#include "glsbi/stats.hpp"

namespace glsbi {

/// Floor applied to densities in log space (out of support, empty bins).
inline constexpr double kDensityFloor = 1e-30;

struct GaussianFit {
    double mu = 0.0;
    double sigma = 1.0;
    std::size_t m = 0;
};

/// Equal-width histogram normalised to a probability density.
struct HistogramFit {
    std::vector<double> edges;     // B+1, strictly increasing
    std::vector<double> densities; // B
    std::size_t m = 0;

    std::size_t bins() const noexcept { return densities.size(); }
    double lo() const { return edges.front(); }
    double hi() const { return edges.back(); }

    /// Bin containing x, or nullopt outside [lo, hi]. The top edge belongs to the last bin.
    std::optional<std::size_t> bin_of(double x) const {
        if (!(x >= lo() && x <= hi()))
            return std::nullopt;
        const double width = (hi() - lo()) / static_cast<double>(bins());
        auto b = static_cast<std::size_t>((x - lo()) / width);
        b = std::min(b, bins() - 1);
        // Guard against rounding in the division placing x one bin off.
        while (b > 0 && x < edges[b])
            --b;
        while (b + 1 < bins() && x >= edges[b + 1])
            ++b;
        return b;
    }
};

inline GaussianFit fit_gaussian(std::span<const double> samples) {
    const std::size_t m = samples.size();
    if (m < 2)
        throw Error(Errc::degenerate_sample, "Gaussian fit needs at least 2 samples");
    double sum = 0.0;
    for (double x : samples)
        sum += x;
    const double mu = sum / static_cast<double>(m);
    double ss = 0.0;
    for (double x : samples)
        ss += (x - mu) * (x - mu);
    const double var = ss / static_cast<double>(m - 1);
    if (!(var > 0.0))
        throw Error(Errc::degenerate_sample, "Gaussian fit of a zero-variance sample");
    return {mu, std::sqrt(var), m};
}

namespace detail {

inline std::vector<double> equal_edges(double lo, double hi, std::size_t bins) {
    std::vector<double> edges(bins + 1);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t b = 0; b <= bins; ++b)
        edges[b] = lo + width * static_cast<double>(b);
    edges.back() = hi;
    return edges;
}

inline double quantile_sorted(std::span<const double> sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto k = static_cast<std::size_t>(pos);
    if (k + 1 >= sorted.size())
        return sorted.back();
    const double frac = pos - static_cast<double>(k);
    return sorted[k] + frac * (sorted[k + 1] - sorted[k]);
}

} // namespace detail

/**
 * Equal-width bins over [min, max]; the maximum is assigned to the last bin.
 * Densities are count / (m * width), so they integrate to one.
 */
inline HistogramFit fit_histogram(std::span<const double> samples, std::size_t bins) {
    if (samples.empty())
        throw Error(Errc::degenerate_sample, "histogram of an empty sample");
    if (bins < 1)
        throw Error(Errc::parameter, "histogram needs at least one bin");
    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    if (!(*mx > *mn))
        throw Error(Errc::degenerate_sample, "histogram of a constant sample");
    HistogramFit h;
    h.m = samples.size();
    h.edges = detail::equal_edges(*mn, *mx, bins);
    h.densities.assign(bins, 0.0); // bin_of reads the bin count from here
    std::vector<std::size_t> counts(bins, 0);
    for (double x : samples)
        ++counts[*h.bin_of(x)];
    const double width = (*mx - *mn) / static_cast<double>(bins);
    for (std::size_t b = 0; b < bins; ++b)
        h.densities[b] = static_cast<double>(counts[b]) / (static_cast<double>(h.m) * width);
    return h;
}

/// Freedman-Diaconis bin count, clamped to [min_bins, max_bins].
inline std::size_t freedman_diaconis_bins(std::span<const double> samples, std::size_t min_bins = 10,
                                          std::size_t max_bins = 200) {
    if (samples.size() < 2)
        return min_bins;
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double range = sorted.back() - sorted.front();
    const double iqr = detail::quantile_sorted(sorted, 0.75) - detail::quantile_sorted(sorted, 0.25);
    if (!(range > 0.0))
        return min_bins;
    if (!(iqr > 0.0))
        return max_bins;
    const double width = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
    const double b = std::ceil(range / width);
    return static_cast<std::size_t>(std::clamp(b, static_cast<double>(min_bins), static_cast<double>(max_bins)));
}

inline double log_density(const GaussianFit& fit, double x) {
    if (std::isnan(x))
        throw Error(Errc::nan_input, "log density at NaN");
    const double z = (x - fit.mu) / fit.sigma;
    return -0.5 * z * z - std::log(fit.sigma) - 0.5 * std::log(2.0 * std::numbers::pi);
}

inline double log_density(const HistogramFit& fit, double x) {
    if (std::isnan(x))
        throw Error(Errc::nan_input, "log density at NaN");
    const auto b = fit.bin_of(x);
    if (!b || !(fit.densities[*b] > 0.0))
        return std::log(kDensityFloor);
    return std::log(fit.densities[*b]);
}

inline double normal_cdf(double x, double mu, double sigma) {
    return 0.5 * std::erfc(-(x - mu) / (sigma * std::numbers::sqrt2));
}

namespace detail {

inline double histogram_tv(std::span<const double> samples, const std::vector<double>& edges,
                           const std::vector<double>& model_mass, double model_mass_outside) {
    HistogramFit grid;
    grid.edges = edges;
    grid.densities.assign(edges.size() - 1, 0.0);
    std::vector<double> emp(edges.size() - 1, 0.0);
    double emp_outside = 0.0;
    for (double x : samples) {
        if (auto b = grid.bin_of(x))
            emp[*b] += 1.0;
        else
            emp_outside += 1.0;
    }
    const double m = static_cast<double>(samples.size());
    double tv = std::abs(emp_outside / m - model_mass_outside);
    for (std::size_t b = 0; b < emp.size(); ++b)
        tv += std::abs(emp[b] / m - model_mass[b]);
    return std::min(1.0, 0.5 * tv);
}

} // namespace detail

/**
 * Total variation between the binned sample and the Gaussian binned on the same
 * grid: bins equal-width over [min(sample), max(sample)] widened to cover
 * mu +- 6 sigma, plus one bin for the mass outside. Bin-dependent by nature.
 */
inline double tv_distance(std::span<const double> samples, const GaussianFit& fit, std::size_t bins) {
    if (samples.size() < 2)
        throw Error(Errc::degenerate_sample, "TV distance needs at least 2 samples");
    if (!(fit.sigma > 0.0))
        throw Error(Errc::degenerate_sample, "TV distance against a degenerate Gaussian");
    if (bins < 1)
        throw Error(Errc::parameter, "TV distance needs at least one bin");
    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    const double lo = std::min(*mn, fit.mu - 6.0 * fit.sigma);
    const double hi = std::max(*mx, fit.mu + 6.0 * fit.sigma);
    const auto edges = detail::equal_edges(lo, hi, bins);
    std::vector<double> mass(bins);
    for (std::size_t b = 0; b < bins; ++b)
        mass[b] = normal_cdf(edges[b + 1], fit.mu, fit.sigma) - normal_cdf(edges[b], fit.mu, fit.sigma);
    const double outside = normal_cdf(lo, fit.mu, fit.sigma) + (1.0 - normal_cdf(hi, fit.mu, fit.sigma));
    return detail::histogram_tv(samples, edges, mass, outside);
}

/// Total variation between the binned sample and a histogram fit on the fit's own bins.
inline double tv_distance(std::span<const double> samples, const HistogramFit& fit) {
    if (samples.size() < 2)
        throw Error(Errc::degenerate_sample, "TV distance needs at least 2 samples");
    std::vector<double> mass(fit.bins());
    for (std::size_t b = 0; b < fit.bins(); ++b)
        mass[b] = fit.densities[b] * (fit.edges[b + 1] - fit.edges[b]);
    return detail::histogram_tv(samples, fit.edges, mass, 0.0);
}

/**
 * Wasserstein-1 distance between the empirical CDF and the Gaussian CDF,
 * W1 = integral |F_m(x) - Phi(x)| dx, integrated exactly piecewise between
 * order statistics (splitting where Phi crosses the step level k/m).
 */
inline double wasserstein_distance(std::span<const double> samples, const GaussianFit& fit) {
    if (samples.size() < 2)
        throw Error(Errc::degenerate_sample, "Wasserstein distance needs at least 2 samples");
    if (!(fit.sigma > 0.0))
        throw Error(Errc::degenerate_sample, "Wasserstein distance against a degenerate Gaussian");
    std::vector<double> xs(samples.begin(), samples.end());
    std::sort(xs.begin(), xs.end());
    const double mu = fit.mu, sigma = fit.sigma;
    const double inv_sqrt2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    auto cdf = [&](double x) { return normal_cdf(x, mu, sigma); };
    // Antiderivative of the Gaussian CDF: G(x) = sigma * (z Phi(z) + pdf(z)).
    auto G = [&](double x) {
        const double z = (x - mu) / sigma;
        return sigma * (z * cdf(x) + inv_sqrt2pi * std::exp(-0.5 * z * z));
    };
    // Integral of |c - Phi| over [a, b] for a step level c.
    auto segment = [&](double a, double b, double c) {
        if (!(b > a))
            return 0.0;
        const double fa = cdf(a), fb = cdf(b);
        auto signed_part = [&](double l, double r) { return c * (r - l) - (G(r) - G(l)); };
        if (fb <= c)
            return signed_part(a, b);
        if (fa >= c)
            return -signed_part(a, b);
        // Phi crosses c inside (a, b): locate by bisection.
        double l = a, r = b;
        for (int it = 0; it < 200 && r - l > 1e-15 * std::max(1.0, std::abs(r)); ++it) {
            const double mid = 0.5 * (l + r);
            (cdf(mid) < c ? l : r) = mid;
        }
        const double x = 0.5 * (l + r);
        return signed_part(a, x) - signed_part(x, b);
    };
    const double m = static_cast<double>(xs.size());
    const double zr = (xs.back() - mu) / sigma;
    double w = G(xs.front()); // left tail
    w += sigma * (inv_sqrt2pi * std::exp(-0.5 * zr * zr) - zr * (1.0 - cdf(xs.back()))); // right tail
    for (std::size_t k = 1; k < xs.size(); ++k)
        w += segment(xs[k - 1], xs[k], static_cast<double>(k) / m);
    return w;
}

/// Descriptive metadata stored with a table.
struct TableMetadata {
    StatisticKind kind = StatisticKind::SpikeFreq;
    std::size_t n = 0;
    TimeStep T = 0;
    std::size_t K = 0;
    double w = 0.01;
    double v0 = 0.01;
    std::uint64_t seed = 0;
    bool remove_reciprocal = false;
};

struct TablePoint {
    double p = 0.0;
    std::size_t m = 0;        // samples used
    std::size_t excluded = 0; // neurons whose statistic was not computable
    GaussianFit gaussian;
    HistogramFit histogram;
};

/// Estimated sampling distributions of one statistic on an ascending p grid.
struct SamplingDistributionTable {
    TableMetadata meta;
    std::vector<TablePoint> points;

    std::vector<double> grid() const {
        std::vector<double> g;
        g.reserve(points.size());
        for (const auto& pt : points)
            g.push_back(pt.p);
        return g;
    }

    std::size_t size() const noexcept { return points.size(); }

    void validate() const {
        if (points.empty())
            throw Error(Errc::format, "table has no grid points");
        for (std::size_t i = 1; i < points.size(); ++i)
            if (!(points[i].p > points[i - 1].p))
                throw Error(Errc::format, "table grid is not strictly ascending");
    }
};

/// Pools per-point samples into both fits. Bins: Freedman-Diaconis unless `fixed_bins` > 0.
inline TablePoint fit_table_point(double p, std::span<const double> samples, std::size_t excluded,
                                  std::size_t fixed_bins = 0) {
    if (samples.empty())
        throw Error(Errc::table_point_failure,
                    "every statistic excluded at p=" + std::to_string(p) + " (" + std::to_string(excluded) + " excluded)");
    TablePoint pt;
    pt.p = p;
    pt.m = samples.size();
    pt.excluded = excluded;
    pt.gaussian = fit_gaussian(samples);
    const std::size_t bins = fixed_bins > 0 ? fixed_bins : freedman_diaconis_bins(samples);
    pt.histogram = fit_histogram(samples, bins);
    return pt;
}

/// One simulated graph's statistics, in neuron order.
struct ReplicateStatistics {
    std::vector<double> values;                         // computable statistics only
    std::vector<NeuronIndex> neurons;                   // neuron of each value
    std::vector<std::pair<NeuronIndex, Errc>> excluded; // neuron and reason
};

/// Generates one graph (optionally without reciprocal edges), simulates it and computes the statistic of every neuron.
inline ReplicateStatistics simulate_replicate(StatisticKind kind, const GraphParams& gp, const SimConfig& cfg,
                                              bool remove_recip, Xoshiro256pp& rng) {
    DirectedGraph g = generate_er(gp, rng);
    if (remove_recip)
        g = remove_reciprocal(g, rng);
    SimConfig all = cfg;
    all.record_set.clear();
    const SpikeTrainRecord rec = simulate(g, all, rng);
    ReplicateStatistics out;
    out.values.reserve(rec.size());
    for (std::size_t k = 0; k < rec.size(); ++k) {
        const auto o = try_compute_statistic(kind, rec.trains[k], rec.T);
        if (o.excluded)
            out.excluded.emplace_back(rec.neurons[k], *o.excluded);
        else {
            out.values.push_back(o.value);
            out.neurons.push_back(rec.neurons[k]);
        }
    }
    return out;
}

struct BuildOptions {
    unsigned workers = 1;
    std::size_t fixed_bins = 0; // 0 selects Freedman-Diaconis
    bool remove_reciprocal = false;
    bool keep_samples = false;
};

struct BuildResult {
    SamplingDistributionTable table;
    /// Per grid point and replicate, when BuildOptions::keep_samples is set.
    std::vector<std::vector<ReplicateStatistics>> samples;
};

/**
 * For each p of the grid: K graphs, each simulated T steps, statistic of all n
 * neurons, pooled into a Gaussian and a histogram fit. Task (g, k) owns stream
 * g*K + k of the build-table family, so the result depends only on the seed.
 */
inline BuildResult build_table(StatisticKind kind, std::span<const double> grid, std::size_t K,
                               const GraphParams& graph_template, const SimConfig& cfg, std::uint64_t seed,
                               const BuildOptions& opts = {}) {
    if (grid.empty())
        throw Error(Errc::parameter, "table grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw Error(Errc::parameter, "table grid must be strictly ascending");
    if (K < 1)
        throw Error(Errc::parameter, "K must be >= 1");
    for (double p : grid) {
        GraphParams gp = graph_template;
        gp.p = p;
        gp.validate();
    }
    cfg.validate(graph_template.n);

    const std::size_t tasks = grid.size() * K;
    std::vector<Xoshiro256pp> streams;
    streams.reserve(tasks);
    StreamFactory factory(seed, StreamFamily::build_table);
    for (std::size_t t = 0; t < tasks; ++t)
        streams.push_back(factory.stream(t));

    std::vector<ReplicateStatistics> results(tasks);
    parallel_for(tasks, opts.workers, [&](std::size_t t) {
        GraphParams gp = graph_template;
        gp.p = grid[t / K];
        results[t] = simulate_replicate(kind, gp, cfg, opts.remove_reciprocal, streams[t]);
    });

    BuildResult out;
    out.table.meta = {kind, graph_template.n, cfg.T, K, graph_template.w, cfg.v0, seed, opts.remove_reciprocal};
    out.table.points.reserve(grid.size());
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        std::vector<double> pooled;
        std::size_t excluded = 0;
        for (std::size_t k = 0; k < K; ++k) {
            const auto& r = results[gi * K + k];
            pooled.insert(pooled.end(), r.values.begin(), r.values.end());
            excluded += r.excluded.size();
        }
        out.table.points.push_back(fit_table_point(grid[gi], pooled, excluded, opts.fixed_bins));
    }
    if (opts.keep_samples) {
        out.samples.resize(grid.size());
        for (std::size_t gi = 0; gi < grid.size(); ++gi)
            for (std::size_t k = 0; k < K; ++k)
                out.samples[gi].push_back(std::move(results[gi * K + k]));
    }
    return out;
}

} // namespace glsbi
