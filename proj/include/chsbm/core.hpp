#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace chsbm {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParamError : Error {
    using Error::Error;
};
struct InvalidEdge : Error {
    using Error::Error;
};
struct DimensionError : Error {
    using Error::Error;
};
struct DegenerateThreshold : Error {
    using Error::Error;
};
struct RangeError : Error {
    using Error::Error;
};
struct ComplexityGuard : Error {
    using Error::Error;
};
struct SymmetryError : Error {
    using Error::Error;
};
struct IterationLimit : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

struct FormatError : Error {
    FormatError(const std::string& message, std::size_t line_number)
        : Error(message + " (line " + std::to_string(line_number) + ")"),
          line(line_number) {}
    std::size_t line;
};

struct SolverDiverged : Error {
    SolverDiverged(const std::string& message, double primal, double dual,
                   std::size_t iters)
        : Error(message), primal_residual(primal), dual_residual(dual),
          iterations(iters) {}
    double primal_residual;
    double dual_residual;
    std::size_t iterations;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Node indices are 0-based everywhere in memory; the text formats use
/// 1-based indices and the io layer converts once at the boundary.
using NodeId = std::uint32_t;

/// Reveal probability alpha = t*ln(n)/n^(m-1) for raw parameters.
/// Throws ParamError when the value is not a probability.
double reveal_probability(std::uint32_t n, std::uint32_t m, double t);

/// Model parameters (n, m, p, q, t). Construction validates every invariant:
/// n >= 2m, m >= 2, 0 < q < p < 1, t > 0 and the derived reveal probability
/// lies in (0, 1].
struct ModelParams {
    ModelParams(std::uint32_t n, std::uint32_t m, double p, double q, double t);

    std::uint32_t n;
    std::uint32_t m;
    double p;
    double q;
    double t;

    /// Derived accessor, never stored.
    double reveal_probability() const { return chsbm::reveal_probability(n, m, t); }
};

/// A +/-1 community assignment over n nodes.
class LabelVector {
  public:
    LabelVector() = default;
    explicit LabelVector(std::vector<std::int8_t> labels);

    static LabelVector filled(std::size_t n, int value);

    std::size_t size() const { return labels_.size(); }
    int operator[](std::size_t i) const { return labels_[i]; }
    void flip(std::size_t i) { labels_[i] = static_cast<std::int8_t>(-labels_[i]); }
    LabelVector negated() const;

    bool operator==(const LabelVector&) const = default;

    const std::vector<std::int8_t>& raw() const { return labels_; }

  private:
    std::vector<std::int8_t> labels_;
};

/// Canonical hyperedge: strictly increasing node indices, no repeats.
struct HyperedgeKey {
    std::vector<NodeId> nodes;

    bool operator==(const HyperedgeKey&) const = default;
    bool operator<(const HyperedgeKey& other) const { return nodes < other.nodes; }
};

struct HyperedgeKeyHash {
    std::size_t operator()(const HyperedgeKey& key) const {
        std::uint64_t h = 0x9E3779B97F4A7C15ULL;
        for (NodeId v : key.nodes) {
            h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

/// Sorts and validates a node list into a canonical key. Duplicate or
/// out-of-range indices raise InvalidEdge.
HyperedgeKey canonicalize_edge(std::vector<NodeId> nodes, std::uint32_t n);

/// Status of a hyperedge. Censored edges are never stored; a key missing
/// from the revealed map reads back as Censored.
enum class EdgeStatus : std::uint8_t { Censored = 0, Present = 1, Absent = 2 };

/// Sparse record of revealed hyperedges. Unstored m-subsets are censored,
/// so memory is proportional to the number of revealed edges only.
class CensoredHypergraph {
  public:
    using RevealedMap = std::unordered_map<HyperedgeKey, EdgeStatus, HyperedgeKeyHash>;

    explicit CensoredHypergraph(ModelParams params) : params_(params) {}

    const ModelParams& params() const { return params_; }
    std::uint32_t node_count() const { return params_.n; }
    std::uint32_t edge_order() const { return params_.m; }

    /// Records a Present/Absent status for a canonical key. Passing
    /// Censored is rejected: censored edges are represented by absence.
    void set_status(const HyperedgeKey& key, EdgeStatus status);

    EdgeStatus status(const HyperedgeKey& key) const;

    std::size_t revealed_count() const { return revealed_.size(); }
    const RevealedMap& revealed() const { return revealed_; }

    /// Revealed edges in ascending key order; the deterministic iteration
    /// order used by samplers, writers and solvers.
    std::vector<std::pair<HyperedgeKey, EdgeStatus>> revealed_sorted() const;

  private:
    ModelParams params_;
    RevealedMap revealed_;
};

/// Outcome of comparing an estimate against planted labels.
struct RecoveryResult {
    LabelVector estimate;
    double agreement = 0.0;
    bool exact = false;
};

// ---------------------------------------------------------------------------
// Label metrics
// ---------------------------------------------------------------------------

/// Hamming distance modulo a global sign flip:
/// d(s,e) = min(#{s_i != e_i}, #{s_i != -e_i}).
std::size_t hamming_distance(const LabelVector& sigma, const LabelVector& eta);

/// agreement = 1 - d(estimate, truth)/n; exact iff d == 0.
RecoveryResult agreement(const LabelVector& estimate, const LabelVector& truth);

}  // namespace chsbm
