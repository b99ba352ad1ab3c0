#include "chsbm/two_stage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chsbm/linalg.hpp"
#include "chsbm/sdp.hpp"

namespace chsbm {

LabelVector Bipartition::to_labels(std::uint32_t n) const {
    std::vector<std::int8_t> labels(n, -1);
    for (NodeId node : plus_set) {
        labels[node] = 1;
    }
    return LabelVector(std::move(labels));
}

Bipartition Bipartition::from_labels(const LabelVector& labels) {
    Bipartition part;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] > 0) {
            part.plus_set.push_back(static_cast<NodeId>(i));
        } else {
            part.minus_set.push_back(static_cast<NodeId>(i));
        }
    }
    return part;
}

SplitSample split_sample(const CensoredHypergraph& graph, RngSeed seed) {
    const std::uint32_t n = graph.node_count();
    if (n < 16) {
        throw ParamError("split_sample: n must be at least 16");
    }
    const double log_n = std::log(static_cast<double>(n));
    const double split_probability = std::log(log_n) / log_n;

    Rng rng(seed);
    SplitSample split{CensoredHypergraph(graph.params()),
                      CensoredHypergraph(graph.params())};
    // Sorted edge order so the routing stream is platform independent.
    for (const auto& [key, status] : graph.revealed_sorted()) {
        if (rng.bernoulli(split_probability)) {
            if (status == EdgeStatus::Present) {
                split.spectral_part.set_status(key, EdgeStatus::Present);
            }
        } else {
            split.refine_part.set_status(key, status);
        }
    }
    return split;
}

namespace {

Bipartition balanced_split(std::uint32_t n) {
    Bipartition part;
    const std::uint32_t half = (n + 1) / 2;
    for (std::uint32_t i = 0; i < n; ++i) {
        (i < half ? part.plus_set : part.minus_set).push_back(i);
    }
    return part;
}

Bipartition split_by_median(const std::vector<double>& v) {
    const std::uint32_t n = static_cast<std::uint32_t>(v.size());
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0U);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return v[a] < v[b]; });
    Bipartition part;
    for (std::uint32_t rank = 0; rank < n; ++rank) {
        (rank < n / 2 ? part.minus_set : part.plus_set).push_back(order[rank]);
    }
    std::sort(part.plus_set.begin(), part.plus_set.end());
    std::sort(part.minus_set.begin(), part.minus_set.end());
    return part;
}

}  // namespace

Bipartition weak_recovery(const CensoredHypergraph& binarized) {
    const std::uint32_t n = binarized.node_count();
    if (binarized.revealed_count() == 0) {
        return balanced_split(n);
    }

    const WeightedGraph w = project_graph(binarized);
    double total = 0.0;
    for (std::int64_t entry : w.entries) {
        total += static_cast<double>(entry);
    }
    const double mean_degree = total / static_cast<double>(n);

    std::vector<double> centered(w.entries.size());
    const double shift = mean_degree / static_cast<double>(n);
    for (std::size_t i = 0; i < w.entries.size(); ++i) {
        centered[i] = static_cast<double>(w.entries[i]) - shift;
    }

    const std::vector<double> v =
        linalg::leading_eigenvector(linalg::SymMatrix(n, std::move(centered)));

    Bipartition part;
    for (std::uint32_t i = 0; i < n; ++i) {
        (v[i] >= 0.0 ? part.plus_set : part.minus_set).push_back(i);
    }
    if (part.plus_set.empty() || part.minus_set.empty()) {
        return split_by_median(v);
    }
    return part;
}

IncidenceIndex::IncidenceIndex(const CensoredHypergraph& graph)
    : node_count_(graph.node_count()), incident_(graph.node_count()) {
    const auto edges = graph.revealed_sorted();
    edge_nodes_.reserve(edges.size());
    edge_status_.reserve(edges.size());
    for (const auto& [key, status] : edges) {
        const std::uint32_t e = static_cast<std::uint32_t>(edge_nodes_.size());
        edge_nodes_.push_back(key.nodes);
        edge_status_.push_back(status);
        for (NodeId node : key.nodes) {
            incident_[node].push_back(e);
        }
    }
}

double e_score(NodeId node, const std::vector<char>& in_set,
               const IncidenceIndex& index, const LikelihoodWeights& weights) {
    double total = 0.0;
    for (std::uint32_t e : index.edges_of(node)) {
        bool contained = true;
        for (NodeId other : index.edge_nodes(e)) {
            if (other != node && !in_set[other]) {
                contained = false;
                break;
            }
        }
        if (contained) {
            total += edge_weight(index.edge_status(e), weights);
        }
    }
    return total;
}

double e_score(NodeId node, const std::vector<NodeId>& set_nodes,
               const CensoredHypergraph& graph, const LikelihoodWeights& weights) {
    std::vector<char> in_set(graph.node_count(), 0);
    for (NodeId member : set_nodes) {
        in_set[member] = 1;
    }
    return e_score(node, in_set, IncidenceIndex(graph), weights);
}

Bipartition refine(const CensoredHypergraph& refine_part, const Bipartition& part,
                   const LikelihoodWeights& weights, const RefineOptions& options) {
    const std::uint32_t n = refine_part.node_count();
    std::vector<char> in_plus(n, 0);
    std::vector<char> in_minus(n, 0);
    std::vector<char> seen(n, 0);
    for (NodeId node : part.plus_set) {
        if (node >= n || seen[node]) {
            throw DimensionError("refine: partition does not cover [0, n) exactly");
        }
        seen[node] = 1;
        in_plus[node] = 1;
    }
    for (NodeId node : part.minus_set) {
        if (node >= n || seen[node]) {
            throw DimensionError("refine: partition does not cover [0, n) exactly");
        }
        seen[node] = 1;
        in_minus[node] = 1;
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        if (!seen[i]) {
            throw DimensionError("refine: partition does not cover [0, n) exactly");
        }
    }

    const IncidenceIndex index(refine_part);

    // All decisions read the input partition; flips apply afterwards.
    Bipartition refined;
    for (NodeId node : part.plus_set) {
        const double own = e_score(node, in_plus, index, weights);
        const double other = e_score(node, in_minus, index, weights);
        (own < other ? refined.minus_set : refined.plus_set).push_back(node);
    }
    for (NodeId node : part.minus_set) {
        const double own = e_score(node, in_minus, index, weights);
        const double other = e_score(node, in_plus, index, weights);
        (own < other ? refined.plus_set : refined.minus_set).push_back(node);
    }
    std::sort(refined.plus_set.begin(), refined.plus_set.end());
    std::sort(refined.minus_set.begin(), refined.minus_set.end());

    if (options.size_guard && refined.plus_set.size() != part.plus_set.size()) {
        return part;
    }
    return refined;
}

LabelVector two_stage_recover(const CensoredHypergraph& graph, RngSeed seed,
                              const TwoStageOptions& options) {
    const SplitSample split = split_sample(graph, seed);
    const Bipartition weak = weak_recovery(split.spectral_part);
    const LikelihoodWeights weights = LikelihoodWeights::from_params(graph.params());
    const Bipartition refined =
        refine(split.refine_part, weak, weights, options.refine);
    return refined.to_labels(graph.node_count());
}

}  // namespace chsbm
