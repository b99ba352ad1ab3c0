#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "chsbm/core.hpp"

namespace chsbm {

/// Symmetric nonnegative integer matrix with zero diagonal; the pairwise
/// projection of a binarized hypergraph.
struct WeightedGraph {
    std::uint32_t n = 0;
    std::vector<std::int64_t> entries;  // row-major n x n

    std::int64_t at(std::uint32_t i, std::uint32_t j) const {
        return entries[static_cast<std::size_t>(i) * n + j];
    }
};

/// Keeps Present edges only: Absent and Censored both collapse to
/// non-edges. Idempotent.
CensoredHypergraph binarize(const CensoredHypergraph& graph);

/// G_ij = number of Present edges containing both i and j. Each Present
/// edge increments its C(m, 2) node pairs, so the cost is proportional to
/// |edges| * m^2.
WeightedGraph project_graph(const CensoredHypergraph& binarized);

enum class DiagConstraint {
    UnitDiagonal,  // Y_ii = 1, the balanced-partition program (default)
    ZeroDiagonal,  // Y_ii = 0, the literal variant kept for comparison
};

struct SolverOptions {
    std::size_t max_iterations = 5000;
    double tolerance = 1e-6;  // absolute primal/dual residual (Frobenius)
    double penalty = 1.0;     // initial ADMM penalty, adapted by residual balancing
    DiagConstraint diag = DiagConstraint::UnitDiagonal;
};

struct SolutionMatrix {
    std::uint32_t n = 0;
    std::vector<double> entries;  // row-major n x n, symmetric

    double at(std::uint32_t i, std::uint32_t j) const {
        return entries[static_cast<std::size_t>(i) * n + j];
    }
};

/// Maximizes <G, Y> subject to Y PSD, <Y, J> = 0 and the diagonal
/// constraint, by operator splitting: an affine step that enforces the
/// linear constraints while ascending the objective, alternated with a
/// projection onto the PSD cone via full eigendecomposition. The affine
/// step uses the facial form Y 1 = 0 of the balance constraint (the two
/// are equivalent on the cone), which keeps the splitting scheme strongly
/// regular. Throws SolverDiverged with the final residuals when
/// max_iterations is reached.
SolutionMatrix solve_sdp(const WeightedGraph& graph, const SolverOptions& options = {});

double sdp_objective(const WeightedGraph& graph, const SolutionMatrix& solution);

/// Sign pattern of the leading eigenvector; zero coordinates map to +1 and
/// the result is normalized so its first entry is +1.
LabelVector round_solution(const SolutionMatrix& solution);

/// True iff max_ij |Y_ij - sigma_i sigma_j| <= 1e-4.
bool exactness_check(const SolutionMatrix& solution, const LabelVector& sigma);

constexpr double kExactnessTolerance = 1e-4;
constexpr double kCertificateTolerance = 1e-8;

struct CertificateReport {
    double lambda3 = 0.0;
    bool certified = false;
    std::array<double, 3> spectrum_head{};  // smallest 3 eigenvalues of M*L*M
};

/// Optimality certificate for the planted solution: builds
///   L = sum_e A_e [ (1_e' s_e) diag(s_e) - s_e s_e' ],  s_e = diag(sigma) 1_e,
/// from the Present edges, projects with M = I - 11'/n - sigma sigma'/n,
/// and reports the third smallest eigenvalue of M L M. lambda3 above the
/// certificate tolerance certifies sigma sigma' as the unique optimum.
CertificateReport dual_certificate(const CensoredHypergraph& binarized,
                                   const LabelVector& sigma);

}  // namespace chsbm
