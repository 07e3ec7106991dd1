#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "glsbi/error.hpp"
#include "glsbi/rng.hpp"

namespace glsbi {

using NeuronIndex = std::uint32_t;

struct GraphParams {
    std::size_t n = 1000;
    double p = 0.01;
    double w = 0.01;

    void validate() const {
        if (n < 2)
            throw Error(Errc::parameter, "graph needs n >= 2, got " + std::to_string(n));
        if (!(p > 0.0 && p < 1.0))
            throw Error(Errc::parameter, "connection probability must lie in (0,1), got " + std::to_string(p));
        if (!(w > 0.0) || !std::isfinite(w))
            throw Error(Errc::parameter, "synaptic weight must be positive, got " + std::to_string(w));
    }
};

/**
 * Directed graph stored as presynaptic adjacency in compressed rows: the
 * neighbours of neuron i are the sources j of edges j -> i, sorted and
 * duplicate-free. All edges share the single weight w. Indices are 0-based.
 */
class DirectedGraph {
public:
    DirectedGraph() = default;

    /// Builds from per-neuron presynaptic lists; lists are sorted and checked.
    DirectedGraph(std::size_t n, double w, std::vector<std::vector<NeuronIndex>> presyn) : n_(n), w_(w) {
        if (presyn.size() != n)
            throw Error(Errc::parameter, "presynaptic list count differs from n");
        offsets_.assign(1, 0);
        offsets_.reserve(n + 1);
        for (std::size_t i = 0; i < n; ++i) {
            auto& row = presyn[i];
            std::sort(row.begin(), row.end());
            if (std::adjacent_find(row.begin(), row.end()) != row.end())
                throw Error(Errc::parameter, "duplicate presynaptic index for neuron " + std::to_string(i));
            for (NeuronIndex j : row) {
                if (j >= n)
                    throw Error(Errc::parameter, "presynaptic index out of range");
                if (j == i)
                    throw Error(Errc::parameter, "self-loop at neuron " + std::to_string(i));
            }
            sources_.insert(sources_.end(), row.begin(), row.end());
            offsets_.push_back(sources_.size());
        }
    }

    std::size_t size() const noexcept { return n_; }
    double weight() const noexcept { return w_; }
    std::size_t edge_count() const noexcept { return sources_.size(); }

    std::span<const NeuronIndex> presyn(std::size_t i) const {
        check_index(i);
        return {sources_.data() + offsets_[i], sources_.data() + offsets_[i + 1]};
    }

    std::size_t in_degree(std::size_t i) const {
        check_index(i);
        return offsets_[i + 1] - offsets_[i];
    }

    std::size_t out_degree(std::size_t i) const {
        check_index(i);
        return static_cast<std::size_t>(std::count(sources_.begin(), sources_.end(), static_cast<NeuronIndex>(i)));
    }

    std::vector<std::size_t> out_degrees() const {
        std::vector<std::size_t> d(n_, 0);
        for (NeuronIndex j : sources_)
            ++d[j];
        return d;
    }

    bool has_edge(std::size_t from, std::size_t to) const {
        auto row = presyn(to);
        return std::binary_search(row.begin(), row.end(), static_cast<NeuronIndex>(from));
    }

    /// Postsynaptic lists V_{i->.}, derived on demand (sorted).
    std::vector<std::vector<NeuronIndex>> postsyn_lists() const {
        std::vector<std::vector<NeuronIndex>> post(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (NeuronIndex j : presyn(i))
                post[j].push_back(static_cast<NeuronIndex>(i));
        return post;
    }

    std::vector<std::vector<NeuronIndex>> presyn_lists() const {
        std::vector<std::vector<NeuronIndex>> rows(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            auto r = presyn(i);
            rows[i].assign(r.begin(), r.end());
        }
        return rows;
    }

    friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

private:
    void check_index(std::size_t i) const {
        if (i >= n_)
            throw Error(Errc::parameter, "neuron index " + std::to_string(i) + " out of range [0, " +
                                             std::to_string(n_) + ")");
    }

    std::size_t n_ = 0;
    double w_ = 0.0;
    std::vector<std::size_t> offsets_{0};
    std::vector<NeuronIndex> sources_;
};

/**
 * Directed Erdos-Renyi graph. Visits all n(n-1) ordered pairs in target-major,
 * source-minor order with one uniform draw each; edge j -> i iff u < p.
 */
inline DirectedGraph generate_er(const GraphParams& params, Xoshiro256pp& rng) {
    params.validate();
    const std::size_t n = params.n;
    std::vector<std::vector<NeuronIndex>> presyn(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& row = presyn[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i)
                continue;
            if (rng.uniform() < params.p)
                row.push_back(static_cast<NeuronIndex>(j));
        }
    }
    return DirectedGraph(n, params.w, std::move(presyn));
}

/**
 * For every reciprocal pair {i, j} (i < j, visited in lexicographic order)
 * one uniform draw picks the edge to drop: u < 1/2 drops i -> j, otherwise
 * j -> i. One draw per reciprocal pair, none otherwise.
 */
inline DirectedGraph remove_reciprocal(const DirectedGraph& g, Xoshiro256pp& rng) {
    auto rows = g.presyn_lists();
    const std::size_t n = g.size();
    const auto post = g.postsyn_lists();
    std::vector<std::vector<NeuronIndex>> drop(n); // drop[target] = sources to remove
    for (std::size_t i = 0; i < n; ++i) {
        for (NeuronIndex j : post[i]) { // edge i -> j
            if (j <= i || !g.has_edge(j, i))
                continue;
            if (rng.uniform() < 0.5)
                drop[j].push_back(static_cast<NeuronIndex>(i));
            else
                drop[i].push_back(j);
        }
    }
    for (std::size_t t = 0; t < n; ++t) {
        if (drop[t].empty())
            continue;
        std::sort(drop[t].begin(), drop[t].end());
        std::vector<NeuronIndex> kept;
        std::set_difference(rows[t].begin(), rows[t].end(), drop[t].begin(), drop[t].end(), std::back_inserter(kept));
        rows[t] = std::move(kept);
    }
    return DirectedGraph(n, g.weight(), std::move(rows));
}

/// Debug dump: `n w` then `i: j1 j2 ...` per neuron (0-based presynaptic indices).
inline void write_graph(std::ostream& os, const DirectedGraph& g) {
    os.precision(17);
    os << g.size() << ' ' << g.weight() << '\n';
    for (std::size_t i = 0; i < g.size(); ++i) {
        os << i << ':';
        for (NeuronIndex j : g.presyn(i))
            os << ' ' << j;
        os << '\n';
    }
}

} // namespace glsbi
