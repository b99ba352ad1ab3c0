#pragma once

// Shared test fixtures and independent oracles. Everything here recomputes
// from first principles so the checks stay independent of the library
// paths they exercise.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "chsbm/core.hpp"
#include "chsbm/generator.hpp"

namespace fixtures {

inline chsbm::HyperedgeKey key(std::initializer_list<chsbm::NodeId> nodes) {
    std::vector<chsbm::NodeId> v(nodes);
    std::sort(v.begin(), v.end());
    return chsbm::HyperedgeKey{std::move(v)};
}

inline chsbm::LabelVector labels_from(std::initializer_list<int> values) {
    std::vector<std::int8_t> v;
    for (int value : values) {
        v.push_back(static_cast<std::int8_t>(value));
    }
    return chsbm::LabelVector(std::move(v));
}

/// First half +1, second half -1.
inline chsbm::LabelVector block_labels(std::uint32_t n) {
    std::vector<std::int8_t> v(n, -1);
    for (std::uint32_t i = 0; i < n / 2; ++i) {
        v[i] = 1;
    }
    return chsbm::LabelVector(std::move(v));
}

/// Brute-force profile likelihood: classifies every revealed edge on its
/// own, written independently of chsbm::log_likelihood.
inline double oracle_log_likelihood(const chsbm::CensoredHypergraph& graph,
                                    const chsbm::LabelVector& sigma) {
    const double t1 = std::log(graph.params().p / graph.params().q);
    const double t2 = std::log((1.0 - graph.params().p) / (1.0 - graph.params().q));
    double total = 0.0;
    for (const auto& [edge, status] : graph.revealed()) {
        bool mono = true;
        for (chsbm::NodeId node : edge.nodes) {
            if (sigma[node] != sigma[edge.nodes.front()]) {
                mono = false;
                break;
            }
        }
        if (!mono) {
            continue;
        }
        total += status == chsbm::EdgeStatus::Present ? t1 : t2;
    }
    return total;
}

/// Enumerates all 2^n label vectors and returns the maximum oracle
/// likelihood. No search-space halving, no shared code with the MLE.
inline double oracle_max_likelihood(const chsbm::CensoredHypergraph& graph) {
    const std::uint32_t n = graph.node_count();
    double best = -1e300;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        std::vector<std::int8_t> labels(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            labels[i] = (mask >> i) & 1ULL ? std::int8_t{-1} : std::int8_t{1};
        }
        best = std::max(
            best, oracle_log_likelihood(graph, chsbm::LabelVector(std::move(labels))));
    }
    return best;
}

struct PairFlipFixture {
    chsbm::CensoredHypergraph graph;
    chsbm::LabelVector sigma;
    chsbm::NodeId i0;  // in the + side
    chsbm::NodeId j0;  // in the - side
};

/// Builds a fixture in which nodes i0 and j0 each carry exactly m1 Present
/// and m2 Absent revealed edges into both the + pool and the - pool (the
/// pools exclude i0 and j0), plus unrelated noise edges. Flipping the two
/// labels then leaves the profile likelihood unchanged.
inline PairFlipFixture pair_flip_fixture(std::uint32_t n, std::uint32_t m,
                                         std::uint32_t m1, std::uint32_t m2,
                                         std::uint64_t seed) {
    using namespace chsbm;
    ModelParams params(n, m, 0.7, 0.3, 1.0);
    CensoredHypergraph graph(params);
    const LabelVector sigma = block_labels(n);
    const NodeId i0 = 0;
    const NodeId j0 = n / 2;

    std::vector<NodeId> plus_pool;
    std::vector<NodeId> minus_pool;
    for (NodeId v = 1; v < n / 2; ++v) {
        plus_pool.push_back(v);
    }
    for (NodeId v = n / 2 + 1; v < n; ++v) {
        minus_pool.push_back(v);
    }

    // Each (anchor, side) pair consumes m1 + m2 distinct (m-1)-subsets of
    // its pool; reject parameter combinations the pool cannot supply.
    const auto capacity = [&](std::size_t pool) {
        return chsbm::subset_count(static_cast<std::uint32_t>(pool), m - 1);
    };
    if (capacity(plus_pool.size()) < m1 + m2 + 1 ||
        capacity(minus_pool.size()) < m1 + m2 + 1) {
        throw std::invalid_argument("pair_flip_fixture: pool too small for m1 + m2");
    }

    Rng rng(RngSeed{seed});
    auto draw_subsets = [&](NodeId anchor, const std::vector<NodeId>& pool,
                            std::uint32_t count, EdgeStatus status) {
        std::uint32_t placed = 0;
        while (placed < count) {
            std::set<std::size_t> positions;
            while (positions.size() < m - 1) {
                positions.insert(rng.uniform_index(pool.size()));
            }
            std::vector<NodeId> pick;
            for (std::size_t pos : positions) {
                pick.push_back(pool[pos]);
            }
            pick.push_back(anchor);
            std::sort(pick.begin(), pick.end());
            const HyperedgeKey edge{std::move(pick)};
            if (graph.status(edge) != EdgeStatus::Censored) {
                continue;  // already used by an earlier batch
            }
            graph.set_status(edge, status);
            ++placed;
        }
    };

    for (NodeId anchor : {i0, j0}) {
        draw_subsets(anchor, plus_pool, m1, EdgeStatus::Present);
        draw_subsets(anchor, plus_pool, m2, EdgeStatus::Absent);
        draw_subsets(anchor, minus_pool, m1, EdgeStatus::Present);
        draw_subsets(anchor, minus_pool, m2, EdgeStatus::Absent);
    }

    // Noise edges avoiding i0 and j0: their monochromatic status cannot
    // change when only i0 and j0 flip.
    const std::uint32_t noise = 5;
    for (std::uint32_t k = 0; k < noise; ++k) {
        std::set<NodeId> pick;
        while (pick.size() < m) {
            const NodeId v = static_cast<NodeId>(rng.uniform_index(n));
            if (v != i0 && v != j0) {
                pick.insert(v);
            }
        }
        const HyperedgeKey edge{std::vector<NodeId>(pick.begin(), pick.end())};
        if (graph.status(edge) == EdgeStatus::Censored) {
            graph.set_status(edge, rng.bernoulli(0.5) ? EdgeStatus::Present
                                                      : EdgeStatus::Absent);
        }
    }

    return PairFlipFixture{std::move(graph), sigma, i0, j0};
}

}  // namespace fixtures
