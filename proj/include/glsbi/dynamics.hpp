#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "glsbi/error.hpp"
#include "glsbi/graph.hpp"
#include "glsbi/rng.hpp"

namespace glsbi {

using TimeStep = std::uint32_t;

/// Spiking probability: clamp of the potential to [0, 1].
inline double phi(double v) {
    if (std::isnan(v))
        throw Error(Errc::nan_input, "phi of NaN potential");
    return std::clamp(v, 0.0, 1.0);
}

struct NetworkState {
    std::vector<double> v; // membrane potentials V_t(i)
    std::uint64_t t = 0;

    static NetworkState uniform(std::size_t n, double v0) { return {std::vector<double>(n, v0), 0}; }
};

struct SimConfig {
    TimeStep T = 1'000'000;
    double v0 = 0.01;
    /// Recorded neurons (0-based); empty records every neuron.
    std::vector<NeuronIndex> record_set;

    void validate(std::size_t n) const {
        if (T < 1)
            throw Error(Errc::parameter, "horizon T must be >= 1");
        if (!(v0 >= 0.0) || !std::isfinite(v0))
            throw Error(Errc::parameter, "initial potential v0 must be non-negative");
        for (NeuronIndex i : record_set)
            if (i >= n)
                throw Error(Errc::parameter, "record_set index " + std::to_string(i) + " out of range");
    }
};

/// Spike times in [1, T], strictly increasing, one train per recorded neuron.
struct SpikeTrainRecord {
    TimeStep T = 0;
    std::vector<NeuronIndex> neurons;
    std::vector<std::vector<TimeStep>> trains;

    std::size_t size() const noexcept { return neurons.size(); }
};

/**
 * Discrete-time Galves-Loecherbach network bound to one graph. Caches the
 * postsynaptic lists so that a spike of j is scattered to its targets.
 *
 * One step from t to t+1:
 *   1. for i = 0..n-1 draw U_i; X_i = 1 iff U_i <= phi(V_t(i))
 *   2. V_{t+1}(i) = 0 if X_i, else V_t(i) + w * #{j in presyn(i) : X_j}
 * Exactly n uniforms per step, consumed in index order.
 */
class Network {
public:
    explicit Network(const DirectedGraph& g) : n_(g.size()), w_(g.weight()) {
        const auto post = g.postsyn_lists();
        offsets_.reserve(n_ + 1);
        offsets_.push_back(0);
        for (const auto& row : post) {
            targets_.insert(targets_.end(), row.begin(), row.end());
            offsets_.push_back(static_cast<std::uint32_t>(targets_.size()));
        }
    }

    std::size_t size() const noexcept { return n_; }

    /// Advances `state` by one step; `spikers` receives the ascending indices that fired at t+1.
    void step(NetworkState& state, Xoshiro256pp& rng, std::vector<NeuronIndex>& spikers) const {
        spikers.clear();
        double* v = state.v.data();
        for (std::size_t i = 0; i < n_; ++i) {
            const double u = rng.uniform();
            if (u <= std::clamp(v[i], 0.0, 1.0))
                spikers.push_back(static_cast<NeuronIndex>(i));
        }
        // Spikers are visited in ascending order, so each target accumulates
        // its presynaptic contributions in presynaptic-list order.
        for (NeuronIndex j : spikers)
            for (std::uint32_t k = offsets_[j]; k < offsets_[j + 1]; ++k)
                v[targets_[k]] += w_;
        for (NeuronIndex j : spikers)
            v[j] = 0.0;
        ++state.t;
    }

    /**
     * Runs T steps from V_0(i) = v0. Spike times are recorded for cfg.record_set
     * (every neuron if empty). Consumes n*T uniforms.
     */
    SpikeTrainRecord simulate(const SimConfig& cfg, Xoshiro256pp& rng) const {
        cfg.validate(n_);
        SpikeTrainRecord rec;
        rec.T = cfg.T;
        if (cfg.record_set.empty()) {
            rec.neurons.resize(n_);
            for (std::size_t i = 0; i < n_; ++i)
                rec.neurons[i] = static_cast<NeuronIndex>(i);
        } else {
            rec.neurons = cfg.record_set;
        }
        rec.trains.resize(rec.neurons.size());

        constexpr std::int32_t kUnrecorded = -1;
        std::vector<std::int32_t> slot(n_, kUnrecorded);
        for (std::size_t k = 0; k < rec.neurons.size(); ++k)
            slot[rec.neurons[k]] = static_cast<std::int32_t>(k);

        NetworkState state = NetworkState::uniform(n_, cfg.v0);
        std::vector<NeuronIndex> spikers;
        spikers.reserve(n_);
        for (TimeStep t = 1; t <= cfg.T; ++t) {
            step(state, rng, spikers);
            for (NeuronIndex j : spikers)
                if (slot[j] != kUnrecorded)
                    rec.trains[static_cast<std::size_t>(slot[j])].push_back(t);
        }
        return rec;
    }

private:
    std::size_t n_;
    double w_;
    std::vector<std::uint32_t> offsets_;
    std::vector<NeuronIndex> targets_;
};

/// One synchronous update; spike indicators returned per neuron.
inline std::vector<std::uint8_t> step(NetworkState& state, const DirectedGraph& g, Xoshiro256pp& rng) {
    std::vector<NeuronIndex> spikers;
    Network(g).step(state, rng, spikers);
    std::vector<std::uint8_t> x(g.size(), 0);
    for (NeuronIndex j : spikers)
        x[j] = 1;
    return x;
}

inline SpikeTrainRecord simulate(const DirectedGraph& g, const SimConfig& cfg, Xoshiro256pp& rng) {
    return Network(g).simulate(cfg, rng);
}

/// s distinct indices from [0, n), uniform without replacement, sorted.
inline std::vector<NeuronIndex> sample_neurons(std::size_t n, std::size_t s, Xoshiro256pp& rng) {
    if (s < 1 || s > n)
        throw Error(Errc::parameter, "sample size " + std::to_string(s) + " not in [1, " + std::to_string(n) + "]");
    std::vector<NeuronIndex> pool(n);
    for (std::size_t i = 0; i < n; ++i)
        pool[i] = static_cast<NeuronIndex>(i);
    // Partial Fisher-Yates, one uniform per selected element.
    for (std::size_t k = 0; k < s; ++k) {
        const auto span = static_cast<double>(n - k);
        auto pick = k + static_cast<std::size_t>(rng.uniform() * span);
        pick = std::min(pick, n - 1);
        std::swap(pool[k], pool[pick]);
    }
    pool.resize(s);
    std::sort(pool.begin(), pool.end());
    return pool;
}

/// Spike dump: `neuron_id: t1 t2 ...` per recorded neuron.
inline void write_spikes(std::ostream& os, const SpikeTrainRecord& rec) {
    for (std::size_t k = 0; k < rec.size(); ++k) {
        os << rec.neurons[k] << ':';
        for (TimeStep t : rec.trains[k])
            os << ' ' << t;
        os << '\n';
    }
}

} // namespace glsbi
