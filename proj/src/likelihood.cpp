#include "chsbm/likelihood.hpp"

#include <algorithm>
#include <cmath>

namespace chsbm {

namespace {

bool monochromatic(const std::vector<NodeId>& nodes, const LabelVector& sigma) {
    const int first = sigma[nodes.front()];
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (sigma[nodes[i]] != first) {
            return false;
        }
    }
    return true;
}

struct EdgeArray {
    std::vector<std::vector<NodeId>> nodes;
    std::vector<double> weight;
};

EdgeArray snapshot_edges(const CensoredHypergraph& graph,
                         const LikelihoodWeights& weights) {
    EdgeArray edges;
    edges.nodes.reserve(graph.revealed_count());
    edges.weight.reserve(graph.revealed_count());
    for (const auto& [key, status] : graph.revealed_sorted()) {
        edges.nodes.push_back(key.nodes);
        edges.weight.push_back(edge_weight(status, weights));
    }
    return edges;
}

bool lex_less(const LabelVector& a, const LabelVector& b) {
    // +1 orders before -1.
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) {
            return a[i] > b[i];
        }
    }
    return false;
}

}  // namespace

LikelihoodWeights LikelihoodWeights::from_probs(double p, double q) {
    if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) {
        throw ParamError("LikelihoodWeights: p and q must lie in (0, 1)");
    }
    return LikelihoodWeights{std::log(p / q), std::log((1.0 - p) / (1.0 - q))};
}

double edge_weight(EdgeStatus status, const LikelihoodWeights& weights) {
    switch (status) {
        case EdgeStatus::Present: return weights.t1;
        case EdgeStatus::Absent: return weights.t2;
        case EdgeStatus::Censored: return 0.0;
    }
    throw Error("edge_weight: unknown status");
}

double log_likelihood(const CensoredHypergraph& graph, const LabelVector& sigma) {
    if (sigma.size() != graph.node_count()) {
        throw DimensionError("log_likelihood: sigma length differs from n");
    }
    const LikelihoodWeights weights = LikelihoodWeights::from_params(graph.params());
    double total = 0.0;
    for (const auto& [key, status] : graph.revealed()) {
        if (monochromatic(key.nodes, sigma)) {
            total += edge_weight(status, weights);
        }
    }
    return total;
}

LabelVector mle_exhaustive(const CensoredHypergraph& graph) {
    const std::uint32_t n = graph.node_count();
    if (n > kMleExhaustiveMaxNodes) {
        throw ComplexityGuard("mle_exhaustive: n = " + std::to_string(n) +
                              " exceeds the enumeration guard of " +
                              std::to_string(kMleExhaustiveMaxNodes));
    }
    const LikelihoodWeights weights = LikelihoodWeights::from_params(graph.params());
    const EdgeArray edges = snapshot_edges(graph, weights);

    std::vector<std::int8_t> labels(n, 1);
    auto value_of = [&](const std::vector<std::int8_t>& current) {
        double total = 0.0;
        for (std::size_t e = 0; e < edges.nodes.size(); ++e) {
            const auto& nodes = edges.nodes[e];
            const std::int8_t first = current[nodes.front()];
            bool mono = true;
            for (std::size_t i = 1; i < nodes.size(); ++i) {
                if (current[nodes[i]] != first) {
                    mono = false;
                    break;
                }
            }
            if (mono) {
                total += edges.weight[e];
            }
        }
        return total;
    };

    LabelVector best = LabelVector::filled(n, 1);
    double best_value = value_of(labels);

    const std::uint64_t candidates = n == 0 ? 0 : (1ULL << (n - 1));
    for (std::uint64_t mask = 1; mask < candidates; ++mask) {
        for (std::uint32_t i = 1; i < n; ++i) {
            labels[i] = (mask >> (i - 1)) & 1ULL ? std::int8_t{-1} : std::int8_t{1};
        }
        const double value = value_of(labels);
        if (value > best_value) {
            best_value = value;
            best = LabelVector(labels);
        } else if (value == best_value) {
            LabelVector candidate(labels);
            if (lex_less(candidate, best)) {
                best = std::move(candidate);
            }
        }
    }
    return best;
}

LabelVector mle_local_search(const CensoredHypergraph& graph, const LabelVector& init,
                             std::size_t max_sweeps,
                             std::vector<double>* sweep_trace) {
    const std::uint32_t n = graph.node_count();
    if (init.size() != n) {
        throw DimensionError("mle_local_search: init length differs from n");
    }
    const LikelihoodWeights weights = LikelihoodWeights::from_params(graph.params());
    const EdgeArray edges = snapshot_edges(graph, weights);

    std::vector<std::vector<std::uint32_t>> incident(n);
    for (std::size_t e = 0; e < edges.nodes.size(); ++e) {
        for (NodeId node : edges.nodes[e]) {
            incident[node].push_back(static_cast<std::uint32_t>(e));
        }
    }

    LabelVector labels = init;
    double current = log_likelihood(graph, labels);
    if (sweep_trace) {
        sweep_trace->clear();
    }

    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        std::size_t improving = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            double delta = 0.0;
            for (std::uint32_t e : incident[i]) {
                const auto& nodes = edges.nodes[e];
                int others_label = 0;
                bool others_mono = true;
                for (NodeId node : nodes) {
                    if (node == i) {
                        continue;
                    }
                    if (others_label == 0) {
                        others_label = labels[node];
                    } else if (labels[node] != others_label) {
                        others_mono = false;
                        break;
                    }
                }
                if (!others_mono) {
                    continue;
                }
                const bool before = labels[i] == others_label;
                const bool after = -labels[i] == others_label;
                if (before != after) {
                    delta += edges.weight[e] * (after ? 1.0 : -1.0);
                }
            }
            if (delta > 0.0) {
                labels.flip(i);
                current += delta;
                ++improving;
            }
        }
        if (sweep_trace) {
            sweep_trace->push_back(current);
        }
        if (improving == 0) {
            break;
        }
    }
    return labels;
}

}  // namespace chsbm
