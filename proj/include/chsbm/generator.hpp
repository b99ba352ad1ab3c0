#pragma once

#include <cstdint>
#include <random>

#include "chsbm/core.hpp"

namespace chsbm {

/// Seed for a reproducible stream: identical seeds give bit-identical
/// samples regardless of platform or thread schedule.
struct RngSeed {
    std::uint64_t value = 0;
};

/// splitmix64 finalizer over base + golden-gamma * (stream + 1). The same
/// constants are documented in the README; per-trial seeds depend only on
/// (base, stream), never on execution order.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

/// Deterministic generator. Draws raw 64-bit words from mt19937_64 and
/// derives everything else itself, avoiding the implementation-defined
/// std distributions.
class Rng {
  public:
    explicit Rng(RngSeed seed) : engine_(seed.value) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Unbiased uniform draw from [0, bound) by rejection.
    std::uint64_t uniform_index(std::uint64_t bound);

    /// Binomial(trials, p) by geometric skips between successes; expected
    /// cost is proportional to the number of successes, not to trials.
    std::uint64_t binomial(std::uint64_t trials, double p);

  private:
    std::mt19937_64 engine_;
};

/// Number of m-subsets of an n-set; guards against overflow.
std::uint64_t subset_count(std::uint32_t n, std::uint32_t m);

/// i.i.d. uniform +/-1 labels.
LabelVector sample_labels(std::uint32_t n, RngSeed seed);

/// Draws a CHSBM sample: K ~ Binomial(C(n,m), alpha) revealed edges, K
/// distinct uniform m-subsets, then a Present/Absent status per edge
/// (probability p when the edge is monochromatic under sigma, else q).
/// Cost is proportional to the number of revealed edges.
CensoredHypergraph sample_chsbm(const ModelParams& params, const LabelVector& sigma,
                                RngSeed seed);

namespace testing {

/// Fixture hook: overrides the reveal probability directly, bypassing the
/// t parameterization, to build degenerate (alpha = 0) and dense fixtures.
/// Production paths use sample_chsbm, which derives alpha from t.
CensoredHypergraph sample_with_alpha(const ModelParams& params, double alpha,
                                     const LabelVector& sigma, RngSeed seed);

}  // namespace testing

}  // namespace chsbm
