// Independent reference computations shared by the unit and acceptance tests.
// None of these call into the library under test.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/**
 * Exact distribution of the 2-neuron mutual-edge chain over T steps.
 * Raster code: bit (t-1) for a spike of neuron 0 at t, bit (T + t-1) for
 * neuron 1. Returns 2^(2T) probabilities.
 */
inline std::vector<double> two_neuron_rasters(double w, double v0, int T) {
    std::vector<double> prob(std::size_t{1} << (2 * T), 0.0);
    auto clamp01 = [](double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); };
    struct Path {
        double v[2];
        double pr;
        std::uint32_t code;
    };
    std::vector<Path> frontier{{{v0, v0}, 1.0, 0}};
    for (int t = 1; t <= T; ++t) {
        std::vector<Path> next;
        for (const auto& p : frontier) {
            for (int x0 = 0; x0 <= 1; ++x0)
                for (int x1 = 0; x1 <= 1; ++x1) {
                    const double f0 = clamp01(p.v[0]), f1 = clamp01(p.v[1]);
                    const double pr = p.pr * (x0 ? f0 : 1.0 - f0) * (x1 ? f1 : 1.0 - f1);
                    if (pr == 0.0)
                        continue;
                    Path q;
                    q.v[0] = x0 ? 0.0 : p.v[0] + w * x1;
                    q.v[1] = x1 ? 0.0 : p.v[1] + w * x0;
                    q.pr = pr;
                    q.code = p.code | (static_cast<std::uint32_t>(x0) << (t - 1)) |
                             (static_cast<std::uint32_t>(x1) << (T + t - 1));
                    next.push_back(q);
                }
        }
        frontier = std::move(next);
    }
    for (const auto& p : frontier)
        prob[p.code] += p.pr;
    return prob;
}

/// E|K/N - p| and sd(K/N) for K ~ Binomial(N, p) by direct summation in long double.
inline std::array<long double, 2> binomial_abs_error(std::size_t N, long double p) {
    long double mae = 0.0L, mean = 0.0L, second = 0.0L;
    for (std::size_t k = 0; k <= N; ++k) {
        long double c = 1.0L;
        for (std::size_t r = 1; r <= k; ++r)
            c = c * static_cast<long double>(N - k + r) / static_cast<long double>(r);
        const long double pmf = c * std::pow(p, static_cast<long double>(k)) *
                                std::pow(1.0L - p, static_cast<long double>(N - k));
        const long double est = static_cast<long double>(k) / static_cast<long double>(N);
        mae += pmf * std::fabs(est - p);
        mean += pmf * est;
        second += pmf * est * est;
    }
    return {mae, std::sqrt(second - mean * mean)};
}

/// Vertex of the least-squares quadratic through three points (Vandermonde QR, long double).
inline long double lsq_quadratic_vertex(const std::array<long double, 3>& x, const std::array<long double, 3>& y) {
    using M = Eigen::Matrix<long double, 3, 3>;
    using V = Eigen::Matrix<long double, 3, 1>;
    // Centre and scale x so the Vandermonde system is well conditioned.
    const long double c = x[1], h = (x[2] - x[0]) / 2.0L;
    M A;
    V b;
    for (int r = 0; r < 3; ++r) {
        const long double u = (x[r] - c) / h;
        A(r, 0) = u * u;
        A(r, 1) = u;
        A(r, 2) = 1.0L;
        b(r) = y[r];
    }
    const V coef = A.colPivHouseholderQr().solve(b);
    return c + h * (-coef(1) / (2.0L * coef(0)));
}

/// Pearson chi-square over consecutive cells merged until each expected count is >= min_expected;
/// a short remainder is folded into the last merged cell.
struct ChiSquare {
    double statistic = 0.0;
    std::size_t cells = 0;
};

inline ChiSquare chi_square(const std::vector<double>& expected, const std::vector<double>& observed,
                            double min_expected = 5.0) {
    std::vector<double> e_cells, o_cells;
    double e_acc = 0.0, o_acc = 0.0;
    for (std::size_t k = 0; k < expected.size(); ++k) {
        e_acc += expected[k];
        o_acc += observed[k];
        if (e_acc >= min_expected) {
            e_cells.push_back(e_acc);
            o_cells.push_back(o_acc);
            e_acc = o_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0.0) {
        if (e_cells.empty()) {
            e_cells.push_back(e_acc);
            o_cells.push_back(o_acc);
        } else {
            e_cells.back() += e_acc;
            o_cells.back() += o_acc;
        }
    }
    ChiSquare out;
    out.cells = e_cells.size();
    for (std::size_t k = 0; k < e_cells.size(); ++k)
        out.statistic += (o_cells[k] - e_cells[k]) * (o_cells[k] - e_cells[k]) / e_cells[k];
    return out;
}

} // namespace oracle
