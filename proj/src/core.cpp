#include "chsbm/core.hpp"

#include <algorithm>
#include <cmath>

namespace chsbm {

double reveal_probability(std::uint32_t n, std::uint32_t m, double t) {
    if (n < 2 || m < 2) {
        throw ParamError("reveal_probability: need n >= 2 and m >= 2");
    }
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw ParamError("reveal_probability: t must be a positive finite real");
    }
    const double alpha = t * std::log(static_cast<double>(n)) /
                         std::pow(static_cast<double>(n), static_cast<double>(m - 1));
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw ParamError("reveal_probability: alpha is not a positive real");
    }
    if (alpha > 1.0) {
        throw ParamError("reveal_probability: alpha = " + std::to_string(alpha) +
                         " exceeds 1; the model is undefined as a probability");
    }
    return alpha;
}

ModelParams::ModelParams(std::uint32_t n_, std::uint32_t m_, double p_, double q_,
                         double t_)
    : n(n_), m(m_), p(p_), q(q_), t(t_) {
    if (m < 2) {
        throw ParamError("ModelParams: m must be at least 2");
    }
    if (n < 2 * m) {
        throw ParamError("ModelParams: n must be at least 2m");
    }
    if (!(0.0 < q && q < p && p < 1.0)) {
        throw ParamError("ModelParams: need 0 < q < p < 1");
    }
    // Validates t > 0 and alpha in (0, 1].
    chsbm::reveal_probability(n, m, t);
}

LabelVector::LabelVector(std::vector<std::int8_t> labels) : labels_(std::move(labels)) {
    for (std::int8_t v : labels_) {
        if (v != 1 && v != -1) {
            throw ParamError("LabelVector: entries must be +1 or -1");
        }
    }
}

LabelVector LabelVector::filled(std::size_t n, int value) {
    if (value != 1 && value != -1) {
        throw ParamError("LabelVector: entries must be +1 or -1");
    }
    return LabelVector(std::vector<std::int8_t>(n, static_cast<std::int8_t>(value)));
}

LabelVector LabelVector::negated() const {
    std::vector<std::int8_t> out(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        out[i] = static_cast<std::int8_t>(-labels_[i]);
    }
    return LabelVector(std::move(out));
}

HyperedgeKey canonicalize_edge(std::vector<NodeId> nodes, std::uint32_t n) {
    if (nodes.empty()) {
        throw InvalidEdge("canonicalize_edge: empty node list");
    }
    std::sort(nodes.begin(), nodes.end());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] >= n) {
            throw InvalidEdge("canonicalize_edge: node index " +
                              std::to_string(nodes[i]) + " out of range [0, " +
                              std::to_string(n) + ")");
        }
        if (i > 0 && nodes[i] == nodes[i - 1]) {
            throw InvalidEdge("canonicalize_edge: duplicate node index " +
                              std::to_string(nodes[i]));
        }
    }
    return HyperedgeKey{std::move(nodes)};
}

void CensoredHypergraph::set_status(const HyperedgeKey& key, EdgeStatus status) {
    if (status == EdgeStatus::Censored) {
        throw InvalidEdge("set_status: censored edges are implicit, never stored");
    }
    if (key.nodes.size() != params_.m) {
        throw InvalidEdge("set_status: key has " + std::to_string(key.nodes.size()) +
                          " nodes, expected m = " + std::to_string(params_.m));
    }
    for (std::size_t i = 0; i < key.nodes.size(); ++i) {
        if (key.nodes[i] >= params_.n) {
            throw InvalidEdge("set_status: node index out of range");
        }
        if (i > 0 && key.nodes[i] <= key.nodes[i - 1]) {
            throw InvalidEdge("set_status: key is not canonical (strictly ascending)");
        }
    }
    revealed_[key] = status;
}

EdgeStatus CensoredHypergraph::status(const HyperedgeKey& key) const {
    auto it = revealed_.find(key);
    return it == revealed_.end() ? EdgeStatus::Censored : it->second;
}

std::vector<std::pair<HyperedgeKey, EdgeStatus>>
CensoredHypergraph::revealed_sorted() const {
    std::vector<std::pair<HyperedgeKey, EdgeStatus>> out(revealed_.begin(),
                                                         revealed_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::size_t hamming_distance(const LabelVector& sigma, const LabelVector& eta) {
    if (sigma.size() != eta.size()) {
        throw DimensionError("hamming_distance: label vectors differ in length");
    }
    std::size_t direct = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (sigma[i] != eta[i]) {
            ++direct;
        }
    }
    return std::min(direct, sigma.size() - direct);
}

RecoveryResult agreement(const LabelVector& estimate, const LabelVector& truth) {
    const std::size_t d = hamming_distance(estimate, truth);
    RecoveryResult result;
    result.estimate = estimate;
    result.agreement =
        truth.size() == 0 ? 1.0
                          : 1.0 - static_cast<double>(d) / static_cast<double>(truth.size());
    result.exact = (d == 0);
    return result;
}

}  // namespace chsbm
