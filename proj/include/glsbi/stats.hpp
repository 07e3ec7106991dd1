#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glsbi/dynamics.hpp"
#include "glsbi/error.hpp"

namespace glsbi {

enum class StatisticKind { SpikeFreq, GammaAlpha };

inline std::string_view to_string(StatisticKind k) noexcept {
    return k == StatisticKind::SpikeFreq ? "spikefreq" : "alpha";
}

inline StatisticKind parse_statistic_kind(std::string_view s) {
    if (s == "spikefreq")
        return StatisticKind::SpikeFreq;
    if (s == "alpha")
        return StatisticKind::GammaAlpha;
    throw Error(Errc::config, "unknown statistic kind '" + std::string(s) + "' (expected spikefreq|alpha)");
}

using IsiSample = std::vector<std::uint32_t>;

struct GammaMoments {
    double alpha; // shape
    double beta;  // rate
};

/// Spikes per time step.
inline double spike_frequency(std::span<const TimeStep> spikes, TimeStep T) {
    if (T < 1)
        throw Error(Errc::parameter, "horizon T must be >= 1");
    return static_cast<double>(spikes.size()) / static_cast<double>(T);
}

inline IsiSample extract_isis(std::span<const TimeStep> spikes) {
    IsiSample out;
    if (spikes.size() < 2)
        return out;
    out.reserve(spikes.size() - 1);
    for (std::size_t k = 1; k < spikes.size(); ++k)
        out.push_back(spikes[k] - spikes[k - 1]);
    return out;
}

/**
 * Method-of-moments Gamma fit: alpha = mean^2 / var, beta = mean / var, with
 * the unbiased variance. Two-pass accumulation for accuracy.
 */
inline GammaMoments gamma_moments(std::span<const std::uint32_t> isis) {
    const std::size_t m = isis.size();
    if (m < 2)
        throw Error(Errc::insufficient_spikes, "need at least 2 inter-spike intervals, got " + std::to_string(m));
    double sum = 0.0;
    for (auto x : isis)
        sum += x;
    const double mean = sum / static_cast<double>(m);
    double ss = 0.0;
    for (auto x : isis) {
        const double d = x - mean;
        ss += d * d;
    }
    const double var = ss / static_cast<double>(m - 1);
    if (!(var > 0.0))
        throw Error(Errc::degenerate_isi, "inter-spike intervals have zero variance");
    return {mean * mean / var, mean / var};
}

inline double compute_statistic(StatisticKind kind, std::span<const TimeStep> spikes, TimeStep T) {
    switch (kind) {
    case StatisticKind::SpikeFreq: return spike_frequency(spikes, T);
    case StatisticKind::GammaAlpha: return gamma_moments(extract_isis(spikes)).alpha;
    }
    throw Error(Errc::parameter, "unknown statistic kind");
}

/// Statistic value or the reason it could not be computed.
struct StatisticOutcome {
    double value = 0.0;
    std::optional<Errc> excluded;
};

inline StatisticOutcome try_compute_statistic(StatisticKind kind, std::span<const TimeStep> spikes, TimeStep T) {
    try {
        return {compute_statistic(kind, spikes, T), std::nullopt};
    } catch (const Error& e) {
        if (e.code() == Errc::insufficient_spikes || e.code() == Errc::degenerate_isi)
            return {0.0, e.code()};
        throw;
    }
}

} // namespace glsbi
