#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "glsbi/chi_squared.hpp"
#include "glsbi/dynamics.hpp"
#include "glsbi/error.hpp"
#include "glsbi/graph.hpp"
#include "glsbi/rng.hpp"
#include "glsbi/stats.hpp"

namespace glsbi {

enum class PairSampleMode { Random, PostSynaptic };

inline std::string_view to_string(PairSampleMode m) noexcept {
    return m == PairSampleMode::Random ? "random" : "post_synaptic";
}

/// Statistic outcome of every recorded neuron, indexed by neuron.
inline std::vector<StatisticOutcome> neuron_statistics(const SpikeTrainRecord& rec, StatisticKind kind,
                                                       std::size_t n) {
    std::vector<StatisticOutcome> out(n, StatisticOutcome{0.0, Errc::insufficient_spikes});
    for (std::size_t k = 0; k < rec.size(); ++k)
        out[rec.neurons[k]] = try_compute_statistic(kind, rec.trains[k], rec.T);
    return out;
}

inline constexpr int kPairRetryCap = 100;

/**
 * Draws (phi(Y_i), phi(Y_j)) for one pair of neurons.
 *   Random:       i, j distinct and uniform.
 *   PostSynaptic: i uniform among neurons with a postsynaptic partner, j
 *                 uniform among the partners of i.
 * Pairs whose statistic is not computable are redrawn, at most 100 times.
 */
class PairSampler {
public:
    PairSampler(const DirectedGraph& g, std::vector<StatisticOutcome> stats)
        : n_(g.size()), stats_(std::move(stats)), post_(g.postsyn_lists()) {
        for (std::size_t i = 0; i < n_; ++i)
            if (!post_[i].empty())
                sources_.push_back(static_cast<NeuronIndex>(i));
    }

    std::pair<double, double> sample(PairSampleMode mode, Xoshiro256pp& rng) const {
        if (mode == PairSampleMode::PostSynaptic && sources_.empty())
            throw Error(Errc::no_edges, "post-synaptic pair sampling on an edgeless graph");
        for (int attempt = 0; attempt < kPairRetryCap; ++attempt) {
            const auto [i, j] = draw_indices(mode, rng);
            const auto& a = stats_[i];
            const auto& b = stats_[j];
            if (!a.excluded && !b.excluded)
                return {a.value, b.value};
        }
        throw Error(Errc::insufficient_spikes, "no computable statistic pair after " +
                                                   std::to_string(kPairRetryCap) + " attempts");
    }

    std::pair<NeuronIndex, NeuronIndex> draw_indices(PairSampleMode mode, Xoshiro256pp& rng) const {
        if (mode == PairSampleMode::Random) {
            const auto i = pick(n_, rng);
            auto j = pick(n_ - 1, rng);
            if (j >= i)
                ++j;
            return {static_cast<NeuronIndex>(i), static_cast<NeuronIndex>(j)};
        }
        const NeuronIndex i = sources_[pick(sources_.size(), rng)];
        const NeuronIndex j = post_[i][pick(post_[i].size(), rng)];
        return {i, j};
    }

private:
    static std::size_t pick(std::size_t count, Xoshiro256pp& rng) {
        const auto k = static_cast<std::size_t>(rng.uniform() * static_cast<double>(count));
        return std::min(k, count - 1);
    }

    std::size_t n_;
    std::vector<StatisticOutcome> stats_;
    std::vector<std::vector<NeuronIndex>> post_;
    std::vector<NeuronIndex> sources_;
};

inline std::pair<double, double> sample_statistic_pair(const DirectedGraph& g, const SpikeTrainRecord& rec,
                                                       StatisticKind kind, PairSampleMode mode, Xoshiro256pp& rng) {
    return PairSampler(g, neuron_statistics(rec, kind, g.size())).sample(mode, rng);
}

/// Pearson sample correlation.
inline double correlation(std::span<const std::pair<double, double>> pairs) {
    const std::size_t m = pairs.size();
    if (m < 2)
        throw Error(Errc::degenerate_sample, "correlation needs at least 2 pairs");
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : pairs) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& [x, y] : pairs) {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    if (!(sxx > 0.0) || !(syy > 0.0))
        throw Error(Errc::degenerate_sample, "correlation of a zero-variance coordinate");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

/**
 * Squared Mahalanobis distance of each row of `points` (m x s) to the sample
 * mean, under the unbiased sample covariance. These sum to (m-1) s exactly.
 */
inline std::vector<double> mahalanobis_sq(const Eigen::MatrixXd& points) {
    const auto m = points.rows();
    const auto s = points.cols();
    if (s < 1 || m < s + 2)
        throw Error(Errc::parameter, "Mahalanobis distances need at least s+2 vectors");
    const Eigen::RowVectorXd mean = points.colwise().mean();
    const Eigen::MatrixXd centered = points.rowwise() - mean;
    const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(m - 1);
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(cov);
    const double scale = cov.diagonal().cwiseAbs().maxCoeff();
    if (ldlt.info() != Eigen::Success || !(scale > 0.0) || !ldlt.isPositive() ||
        ldlt.vectorD().minCoeff() <= 1e-13 * scale)
        throw Error(Errc::singular_covariance, "sample covariance is singular");
    const Eigen::MatrixXd solved = ldlt.solve(centered.transpose()); // s x m
    std::vector<double> d2(static_cast<std::size_t>(m));
    for (Eigen::Index r = 0; r < m; ++r)
        d2[static_cast<std::size_t>(r)] = std::max(0.0, centered.row(r).dot(solved.col(r)));
    return d2;
}

inline std::vector<double> mahalanobis_sq(std::span<const std::vector<double>> vectors) {
    if (vectors.empty())
        throw Error(Errc::parameter, "Mahalanobis distances of an empty set");
    const auto s = vectors.front().size();
    Eigen::MatrixXd pts(static_cast<Eigen::Index>(vectors.size()), static_cast<Eigen::Index>(s));
    for (std::size_t r = 0; r < vectors.size(); ++r) {
        if (vectors[r].size() != s)
            throw Error(Errc::parameter, "vectors of unequal dimension");
        for (std::size_t c = 0; c < s; ++c)
            pts(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = vectors[r][c];
    }
    return mahalanobis_sq(pts);
}

struct QqData {
    std::vector<double> empirical;
    std::vector<double> theoretical;

    std::size_t size() const noexcept { return empirical.size(); }
};

/// Sorted samples against theoretical quantiles at Hazen positions (k - 0.5) / m.
inline QqData qq_data(std::span<const double> samples, const std::function<double(double)>& quantile) {
    const std::size_t m = samples.size();
    if (m < 2)
        throw Error(Errc::parameter, "Q-Q data needs at least 2 samples");
    QqData q;
    q.empirical.assign(samples.begin(), samples.end());
    std::sort(q.empirical.begin(), q.empirical.end());
    q.theoretical.resize(m);
    for (std::size_t k = 1; k <= m; ++k)
        q.theoretical[k - 1] = quantile((static_cast<double>(k) - 0.5) / static_cast<double>(m));
    return q;
}

/// Least-squares slope of empirical on theoretical quantiles.
inline double qq_slope(const QqData& q) {
    const std::size_t m = q.size();
    if (m < 2)
        throw Error(Errc::parameter, "Q-Q slope needs at least 2 points");
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        mx += q.theoretical[k];
        my += q.empirical[k];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        sxx += (q.theoretical[k] - mx) * (q.theoretical[k] - mx);
        sxy += (q.theoretical[k] - mx) * (q.empirical[k] - my);
    }
    if (!(sxx > 0.0))
        throw Error(Errc::degenerate_sample, "Q-Q slope with constant theoretical quantiles");
    return sxy / sxx;
}

} // namespace glsbi
