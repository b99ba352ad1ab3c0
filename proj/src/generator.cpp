#include "chsbm/generator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace chsbm {

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
    if (bound == 0) {
        throw ParamError("uniform_index: bound must be positive");
    }
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
        const std::uint64_t x = next_u64();
        if (x >= threshold) {
            return x % bound;
        }
    }
}

std::uint64_t Rng::binomial(std::uint64_t trials, double p) {
    if (trials == 0 || p <= 0.0) {
        return 0;
    }
    if (p >= 1.0) {
        return trials;
    }
    const double log_miss = std::log1p(-p);  // < 0
    std::uint64_t consumed = 0;
    std::uint64_t successes = 0;
    for (;;) {
        const double v = 1.0 - uniform01();  // (0, 1]
        double skip = std::floor(std::log(v) / log_miss);
        if (!(skip >= 0.0)) {
            skip = 0.0;
        }
        const std::uint64_t remaining = trials - consumed;
        if (skip >= static_cast<double>(remaining)) {
            return successes;
        }
        consumed += static_cast<std::uint64_t>(skip) + 1;
        ++successes;
        if (consumed >= trials) {
            return successes;
        }
    }
}

std::uint64_t subset_count(std::uint32_t n, std::uint32_t m) {
    if (m > n) {
        return 0;
    }
    unsigned __int128 value = 1;
    for (std::uint32_t i = 1; i <= m; ++i) {
        value = value * (n - m + i) / i;
        if (value > (static_cast<unsigned __int128>(1) << 62)) {
            throw ParamError("subset_count: C(n, m) exceeds the supported range");
        }
    }
    return static_cast<std::uint64_t>(value);
}

LabelVector sample_labels(std::uint32_t n, RngSeed seed) {
    if (n < 1) {
        throw ParamError("sample_labels: n must be at least 1");
    }
    Rng rng(seed);
    std::vector<std::int8_t> labels(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        labels[i] = (rng.next_u64() & 1ULL) ? std::int8_t{1} : std::int8_t{-1};
    }
    return LabelVector(std::move(labels));
}

namespace {

/// Uniform m-subset of [0, n) via a partial Fisher-Yates shuffle kept in a
/// sparse overlay, sorted into canonical order.
HyperedgeKey random_subset(Rng& rng, std::uint32_t n, std::uint32_t m) {
    std::unordered_map<std::uint64_t, std::uint32_t> overlay;
    std::vector<NodeId> nodes;
    nodes.reserve(m);
    for (std::uint32_t j = 0; j < m; ++j) {
        const std::uint64_t r = j + rng.uniform_index(n - j);
        auto it_r = overlay.find(r);
        const std::uint32_t value_r =
            it_r == overlay.end() ? static_cast<std::uint32_t>(r) : it_r->second;
        auto it_j = overlay.find(j);
        const std::uint32_t value_j = it_j == overlay.end() ? j : it_j->second;
        nodes.push_back(value_r);
        overlay[r] = value_j;
    }
    std::sort(nodes.begin(), nodes.end());
    return HyperedgeKey{std::move(nodes)};
}

bool monochromatic(const HyperedgeKey& key, const LabelVector& sigma) {
    const int first = sigma[key.nodes.front()];
    for (std::size_t i = 1; i < key.nodes.size(); ++i) {
        if (sigma[key.nodes[i]] != first) {
            return false;
        }
    }
    return true;
}

CensoredHypergraph sample_impl(const ModelParams& params, double alpha,
                               const LabelVector& sigma, RngSeed seed) {
    if (sigma.size() != params.n) {
        throw DimensionError("sample_chsbm: sigma length differs from n");
    }
    if (alpha < 0.0 || alpha > 1.0 || !std::isfinite(alpha)) {
        throw ParamError("sample_chsbm: alpha must lie in [0, 1]");
    }

    Rng rng(seed);
    CensoredHypergraph graph(params);
    const std::uint64_t total = subset_count(params.n, params.m);
    const std::uint64_t revealed = rng.binomial(total, alpha);

    // Rejection against already-chosen keys; each accepted key consumes one
    // status draw immediately, keeping the stream deterministic.
    std::unordered_set<HyperedgeKey, HyperedgeKeyHash> chosen;
    chosen.reserve(revealed * 2);
    while (chosen.size() < revealed) {
        HyperedgeKey key = random_subset(rng, params.n, params.m);
        if (!chosen.insert(key).second) {
            continue;
        }
        const double present_prob = monochromatic(key, sigma) ? params.p : params.q;
        graph.set_status(key, rng.bernoulli(present_prob) ? EdgeStatus::Present
                                                          : EdgeStatus::Absent);
    }
    return graph;
}

}  // namespace

CensoredHypergraph sample_chsbm(const ModelParams& params, const LabelVector& sigma,
                                RngSeed seed) {
    return sample_impl(params, params.reveal_probability(), sigma, seed);
}

namespace testing {

CensoredHypergraph sample_with_alpha(const ModelParams& params, double alpha,
                                     const LabelVector& sigma, RngSeed seed) {
    return sample_impl(params, alpha, sigma, seed);
}

}  // namespace testing

}  // namespace chsbm
