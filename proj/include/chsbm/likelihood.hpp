#pragma once

#include <cstdint>
#include <vector>

#include "chsbm/core.hpp"

namespace chsbm {

/// Log-likelihood-ratio weights t1 = ln(p/q), t2 = ln((1-p)/(1-q)).
/// For p > q this gives t1 > 0 and t2 < 0.
struct LikelihoodWeights {
    double t1 = 0.0;
    double t2 = 0.0;

    static LikelihoodWeights from_probs(double p, double q);
    static LikelihoodWeights from_params(const ModelParams& params) {
        return from_probs(params.p, params.q);
    }
};

/// Per-edge weight: Present -> t1, Absent -> t2, Censored -> 0. Censored
/// edges carry no sigma-dependent likelihood term.
double edge_weight(EdgeStatus status, const LikelihoodWeights& weights);

/// Profile log-likelihood l(sigma): the sum of edge weights over revealed
/// edges that are monochromatic under sigma. The sigma-independent part of
/// the full log-likelihood is dropped, so values are comparable across
/// label vectors for a fixed hypergraph only.
double log_likelihood(const CensoredHypergraph& graph, const LabelVector& sigma);

/// Exact maximizer of l by enumeration with the first label fixed to +1
/// (valid: l is invariant under a global sign flip). Ties break to the
/// lexicographically smallest vector, +1 ordered before -1. Guarded to
/// n <= 24.
LabelVector mle_exhaustive(const CensoredHypergraph& graph);

constexpr std::uint32_t kMleExhaustiveMaxNodes = 24;

/// Greedy single-flip ascent on l starting from init. Stops after a sweep
/// with no improving flip or after max_sweeps. When sweep_trace is given
/// it receives l after each sweep (non-decreasing).
LabelVector mle_local_search(const CensoredHypergraph& graph, const LabelVector& init,
                             std::size_t max_sweeps,
                             std::vector<double>* sweep_trace = nullptr);

}  // namespace chsbm
