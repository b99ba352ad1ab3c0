#include <doctest.h>

#include <cmath>

#include "chsbm/generator.hpp"
#include "chsbm/likelihood.hpp"
#include "fixtures.hpp"

using namespace chsbm;

namespace {

CensoredHypergraph random_instance(std::uint32_t n, double alpha, std::uint64_t seed,
                                   double p = 0.9, double q = 0.1) {
    ModelParams params(n, 3, p, q, 1.0);
    const LabelVector sigma = sample_labels(n, RngSeed{mix_seed(seed, 1)});
    return testing::sample_with_alpha(params, alpha, sigma, RngSeed{mix_seed(seed, 2)});
}

}  // namespace

TEST_SUITE_BEGIN("likelihood");

TEST_CASE("edge weights") {
    const auto w = LikelihoodWeights::from_probs(0.8, 0.2);
    CHECK(w.t1 == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(w.t2 == doctest::Approx(std::log(0.25)).epsilon(1e-12));
    CHECK(edge_weight(EdgeStatus::Present, w) == w.t1);
    CHECK(edge_weight(EdgeStatus::Absent, w) == w.t2);
    CHECK(edge_weight(EdgeStatus::Censored, w) == 0.0);
    CHECK(w.t1 > 0.0);
    CHECK(w.t2 < 0.0);
    CHECK_THROWS_AS(LikelihoodWeights::from_probs(0.0, 0.2), ParamError);
}

TEST_CASE("log_likelihood on tiny instances") {
    ModelParams params(6, 3, 0.8, 0.2, 1.0);
    CensoredHypergraph graph(params);

    for (std::uint64_t s : {1ULL, 2ULL, 3ULL}) {
        CHECK(log_likelihood(graph, sample_labels(6, RngSeed{s})) == 0.0);
    }

    graph.set_status(fixtures::key({0, 1, 2}), EdgeStatus::Present);
    CHECK(log_likelihood(graph, fixtures::labels_from({1, 1, 1, -1, -1, -1})) ==
          doctest::Approx(std::log(4.0)));
    CHECK(log_likelihood(graph, fixtures::labels_from({1, -1, 1, -1, -1, -1})) == 0.0);
    CHECK_THROWS_AS(log_likelihood(graph, fixtures::labels_from({1, 1})),
                    DimensionError);
}

TEST_CASE("log_likelihood equals the per-edge oracle") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const CensoredHypergraph graph = random_instance(10, 0.4, seed);
        for (std::uint64_t s = 0; s < 5; ++s) {
            const LabelVector sigma = sample_labels(10, RngSeed{seed * 100 + s});
            CHECK(log_likelihood(graph, sigma) ==
                  doctest::Approx(fixtures::oracle_log_likelihood(graph, sigma))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("global sign flip leaves l unchanged") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const CensoredHypergraph graph = random_instance(12, 0.3, seed);
        const LabelVector sigma = sample_labels(12, RngSeed{seed + 777});
        CHECK(log_likelihood(graph, sigma) ==
              doctest::Approx(log_likelihood(graph, sigma.negated())).epsilon(1e-15));
    }
}

TEST_CASE("pair flip with matched counts leaves l unchanged") {
    int built = 0;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const std::uint32_t m = 2 + seed % 3;
        const std::uint32_t m1 = seed % 4;
        const std::uint32_t m2 = (seed / 4) % 4;
        const auto fixture = fixtures::pair_flip_fixture(20, m, m1, m2, seed);
        LabelVector flipped = fixture.sigma;
        flipped.flip(fixture.i0);
        flipped.flip(fixture.j0);
        const double before = log_likelihood(fixture.graph, fixture.sigma);
        const double after = log_likelihood(fixture.graph, flipped);
        CHECK(std::abs(before - after) <= 1e-12);
        ++built;
    }
    CHECK(built == 25);
}

TEST_CASE("likelihood difference matches the three-case decomposition") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const CensoredHypergraph graph = random_instance(10, 0.5, seed);
        const LabelVector sigma = sample_labels(10, RngSeed{seed * 3 + 1});
        const LabelVector eta = sample_labels(10, RngSeed{seed * 3 + 2});

        const auto w = LikelihoodWeights::from_params(graph.params());
        double decomposed = 0.0;
        for (const auto& [edge, status] : graph.revealed()) {
            auto mono = [&](const LabelVector& labels) {
                for (NodeId node : edge.nodes) {
                    if (labels[node] != labels[edge.nodes.front()]) {
                        return 0;
                    }
                }
                return 1;
            };
            decomposed += edge_weight(status, w) * (mono(eta) - mono(sigma));
        }
        const double direct =
            log_likelihood(graph, eta) - log_likelihood(graph, sigma);
        CHECK(direct == doctest::Approx(decomposed).epsilon(1e-10));
    }
}

TEST_CASE("adding censored edges never changes l") {
    const CensoredHypergraph graph = random_instance(10, 0.3, 5);
    const LabelVector sigma = sample_labels(10, RngSeed{6});
    const double before = log_likelihood(graph, sigma);
    // A censored edge is one that is simply not recorded; rebuilding the
    // graph with fewer revealed edges removed keeps l identical.
    CensoredHypergraph copy(graph.params());
    for (const auto& [edge, status] : graph.revealed_sorted()) {
        copy.set_status(edge, status);
    }
    CHECK(log_likelihood(copy, sigma) == doctest::Approx(before).epsilon(1e-15));
}

TEST_CASE("mle_exhaustive ties break to all-plus and guard trips") {
    ModelParams params(8, 3, 0.8, 0.2, 1.0);
    CensoredHypergraph empty(params);
    CHECK(mle_exhaustive(empty) == LabelVector::filled(8, 1));

    ModelParams big(25, 3, 0.8, 0.2, 1.0);
    CensoredHypergraph guard(big);
    CHECK_THROWS_AS(mle_exhaustive(guard), ComplexityGuard);
}

TEST_CASE("mle_exhaustive recovers a fully separated planted instance") {
    ModelParams params(6, 3, 0.8, 0.2, 1.0);
    CensoredHypergraph graph(params);
    const LabelVector planted = fixtures::labels_from({1, 1, 1, -1, -1, -1});
    // All within-block triples Present, all cross triples Absent.
    for (NodeId a = 0; a < 6; ++a) {
        for (NodeId b = a + 1; b < 6; ++b) {
            for (NodeId c = b + 1; c < 6; ++c) {
                const bool mono = (c < 3) || (a >= 3);
                graph.set_status(fixtures::key({a, b, c}),
                                 mono ? EdgeStatus::Present : EdgeStatus::Absent);
            }
        }
    }
    const LabelVector estimate = mle_exhaustive(graph);
    CHECK(hamming_distance(estimate, planted) == 0);
    // The planted labeling strictly dominates all non-equivalent ones.
    const double best = log_likelihood(graph, planted);
    const double runner_up =
        log_likelihood(graph, fixtures::labels_from({1, 1, -1, 1, -1, -1}));
    CHECK(best > runner_up);
}

TEST_CASE("mle value matches the independent enumeration oracle") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const CensoredHypergraph graph = random_instance(10, 0.5, seed);
        const LabelVector estimate = mle_exhaustive(graph);
        CHECK(log_likelihood(graph, estimate) ==
              doctest::Approx(fixtures::oracle_max_likelihood(graph)).epsilon(1e-12));
    }
}

TEST_CASE("mle value is invariant under node relabeling") {
    const CensoredHypergraph graph = random_instance(9, 0.4, 11);
    // Rotate node ids by 3.
    CensoredHypergraph rotated(graph.params());
    for (const auto& [edge, status] : graph.revealed_sorted()) {
        std::vector<NodeId> nodes;
        for (NodeId node : edge.nodes) {
            nodes.push_back((node + 3) % 9);
        }
        rotated.set_status(canonicalize_edge(nodes, 9), status);
    }
    CHECK(log_likelihood(graph, mle_exhaustive(graph)) ==
          doctest::Approx(log_likelihood(rotated, mle_exhaustive(rotated)))
              .epsilon(1e-12));
}

TEST_CASE("local search ascends and stays below the exhaustive optimum") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const CensoredHypergraph graph = random_instance(12, 0.3, seed);
        const LabelVector init = sample_labels(12, RngSeed{seed + 55});
        std::vector<double> trace;
        const LabelVector out = mle_local_search(graph, init, 50, &trace);

        CHECK(log_likelihood(graph, out) >=
              log_likelihood(graph, init) - 1e-12);
        for (std::size_t i = 1; i < trace.size(); ++i) {
            CHECK(trace[i] >= trace[i - 1] - 1e-12);
        }
        CHECK(log_likelihood(graph, out) <=
              log_likelihood(graph, mle_exhaustive(graph)) + 1e-9);
    }
}

TEST_CASE("local search returns a local max unchanged after one sweep") {
    ModelParams params(6, 3, 0.8, 0.2, 1.0);
    CensoredHypergraph graph(params);
    graph.set_status(fixtures::key({0, 1, 2}), EdgeStatus::Present);
    graph.set_status(fixtures::key({3, 4, 5}), EdgeStatus::Present);
    const LabelVector init = fixtures::labels_from({1, 1, 1, -1, -1, -1});
    std::vector<double> trace;
    CHECK(mle_local_search(graph, init, 10, &trace) == init);
    CHECK(trace.size() == 1);
    CHECK_THROWS_AS(mle_local_search(graph, fixtures::labels_from({1, 1}), 10),
                    DimensionError);
}

TEST_SUITE_END();
