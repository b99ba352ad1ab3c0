#include "chsbm/sdp.hpp"

#include <algorithm>
#include <cmath>

#include "chsbm/linalg.hpp"

namespace chsbm {

CensoredHypergraph binarize(const CensoredHypergraph& graph) {
    CensoredHypergraph out(graph.params());
    for (const auto& [key, status] : graph.revealed()) {
        if (status == EdgeStatus::Present) {
            out.set_status(key, EdgeStatus::Present);
        }
    }
    return out;
}

WeightedGraph project_graph(const CensoredHypergraph& binarized) {
    const std::uint32_t n = binarized.node_count();
    WeightedGraph graph;
    graph.n = n;
    graph.entries.assign(static_cast<std::size_t>(n) * n, 0);
    for (const auto& [key, status] : binarized.revealed()) {
        if (status != EdgeStatus::Present) {
            continue;  // Absent edges carry value 0 in the binarized tensor
        }
        const auto& nodes = key.nodes;
        for (std::size_t a = 0; a < nodes.size(); ++a) {
            for (std::size_t b = a + 1; b < nodes.size(); ++b) {
                graph.entries[static_cast<std::size_t>(nodes[a]) * n + nodes[b]] += 1;
                graph.entries[static_cast<std::size_t>(nodes[b]) * n + nodes[a]] += 1;
            }
        }
    }
    return graph;
}

namespace {

double frobenius_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

/// Euclidean projection onto {Y symmetric, Y 1 = 0, diag(Y) = d0}. On the
/// PSD cone, <Y, J> = 0 forces Y 1 = 0, so this is the same feasible set
/// as the stated balance constraint; projecting onto the facial form keeps
/// the iterates strongly regular (the plain <Y, J> = 0 hyperplane has no
/// Slater point against the cone and stalls the splitting scheme).
/// Multipliers solve in closed form:
///   Y = W - Diag(mu) - lam 1' - 1 lam',
///   b = W 1 - diag(W) + d0 1,  lam = (b - (1'b / (2n-2)) 1) / (n-2),
///   mu = diag(W) - d0 - 2 lam.
void affine_project(std::uint32_t n, std::vector<double>& w, double d0) {
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (w[i * n + j] + w[j * n + i]);
            w[i * n + j] = avg;
            w[j * n + i] = avg;
        }
    }
    std::vector<double> b(n);
    double b_sum = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::uint32_t j = 0; j < n; ++j) {
            row += w[i * n + j];
        }
        b[i] = row - w[i * n + i] + d0;
        b_sum += b[i];
    }
    const double lambda_shift = b_sum / (2.0 * n - 2.0);
    std::vector<double> lambda(n);
    std::vector<double> mu(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        lambda[i] = (b[i] - lambda_shift) / (static_cast<double>(n) - 2.0);
        mu[i] = w[i * n + i] - d0 - 2.0 * lambda[i];
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            w[i * n + j] -= lambda[i] + lambda[j];
        }
        w[i * n + i] -= mu[i];
    }
}

}  // namespace

SolutionMatrix solve_sdp(const WeightedGraph& graph, const SolverOptions& options) {
    const std::uint32_t n = graph.n;
    if (n < 3) {
        throw DimensionError("solve_sdp: need at least 3 nodes");
    }
    const double d0 = options.diag == DiagConstraint::UnitDiagonal ? 1.0 : 0.0;
    const std::size_t size = static_cast<std::size_t>(n) * n;

    // Feasible start: (n I - J)/(n - 1) has unit diagonal, zero matrix sum
    // and nonnegative spectrum; the affine projection adapts it to the
    // requested diagonal.
    std::vector<double> y(size, -1.0 / (static_cast<double>(n) - 1.0));
    for (std::uint32_t i = 0; i < n; ++i) {
        y[i * n + i] = 1.0;
    }
    affine_project(n, y, d0);

    std::vector<double> z = y;
    std::vector<double> z_prev(size);
    std::vector<double> dual(size, 0.0);
    double rho = options.penalty;

    double primal_residual = 0.0;
    double dual_residual = 0.0;
    for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
        // Affine step with objective ascent: project Z - U + G/rho.
        for (std::size_t i = 0; i < size; ++i) {
            y[i] = z[i] - dual[i] + static_cast<double>(graph.entries[i]) / rho;
        }
        affine_project(n, y, d0);

        // PSD step.
        z_prev.swap(z);
        for (std::size_t i = 0; i < size; ++i) {
            z[i] = y[i] + dual[i];
        }
        linalg::detail::psd_project_raw(n, z);

        primal_residual = frobenius_diff(y, z);
        dual_residual = rho * frobenius_diff(z, z_prev);

        for (std::size_t i = 0; i < size; ++i) {
            dual[i] += y[i] - z[i];
        }

        if (primal_residual <= options.tolerance && dual_residual <= options.tolerance) {
            return SolutionMatrix{n, std::move(y)};
        }

        // Residual balancing keeps the two residuals within a decade.
        // Checked at a fixed cadence: reacting every iteration lets the
        // penalty oscillate and the iteration limit-cycle.
        if ((iter + 1) % 100 == 0) {
            if (primal_residual > 10.0 * dual_residual) {
                rho *= 2.0;
                for (double& u : dual) {
                    u *= 0.5;
                }
            } else if (dual_residual > 10.0 * primal_residual) {
                rho *= 0.5;
                for (double& u : dual) {
                    u *= 2.0;
                }
            }
        }
    }
    throw SolverDiverged("solve_sdp: no convergence within " +
                             std::to_string(options.max_iterations) + " iterations",
                         primal_residual, dual_residual, options.max_iterations);
}

double sdp_objective(const WeightedGraph& graph, const SolutionMatrix& solution) {
    if (graph.n != solution.n) {
        throw DimensionError("sdp_objective: size mismatch");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < solution.entries.size(); ++i) {
        total += static_cast<double>(graph.entries[i]) * solution.entries[i];
    }
    return total;
}

LabelVector round_solution(const SolutionMatrix& solution) {
    const std::uint32_t n = solution.n;
    linalg::SymMatrix matrix(n, solution.entries);
    const std::vector<double> v = linalg::leading_eigenvector(matrix);

    std::vector<std::int8_t> labels(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        labels[i] = v[i] < 0.0 ? std::int8_t{-1} : std::int8_t{1};
    }
    if (labels[0] < 0) {
        for (std::int8_t& v_i : labels) {
            v_i = static_cast<std::int8_t>(-v_i);
        }
    }
    return LabelVector(std::move(labels));
}

bool exactness_check(const SolutionMatrix& solution, const LabelVector& sigma) {
    if (sigma.size() != solution.n) {
        throw DimensionError("exactness_check: sigma length differs from n");
    }
    const std::uint32_t n = solution.n;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            const double target = static_cast<double>(sigma[i] * sigma[j]);
            if (std::abs(solution.at(i, j) - target) > kExactnessTolerance) {
                return false;
            }
        }
    }
    return true;
}

CertificateReport dual_certificate(const CensoredHypergraph& binarized,
                                   const LabelVector& sigma) {
    const std::uint32_t n = binarized.node_count();
    if (sigma.size() != n) {
        throw DimensionError("dual_certificate: sigma length differs from n");
    }
    const std::size_t size = static_cast<std::size_t>(n) * n;

    // L accumulates an m-sparse update per Present edge e:
    //   L_ii += s_e sigma_i - 1 for i in e, L_ij -= sigma_i sigma_j for i != j in e,
    // where s_e is the signed size sum over the edge.
    std::vector<double> l(size, 0.0);
    for (const auto& [key, status] : binarized.revealed()) {
        if (status != EdgeStatus::Present) {
            continue;
        }
        const auto& nodes = key.nodes;
        double edge_sum = 0.0;
        for (NodeId node : nodes) {
            edge_sum += static_cast<double>(sigma[node]);
        }
        for (std::size_t a = 0; a < nodes.size(); ++a) {
            const NodeId i = nodes[a];
            l[static_cast<std::size_t>(i) * n + i] +=
                edge_sum * static_cast<double>(sigma[i]) - 1.0;
            for (std::size_t b = a + 1; b < nodes.size(); ++b) {
                const NodeId j = nodes[b];
                const double cross = static_cast<double>(sigma[i] * sigma[j]);
                l[static_cast<std::size_t>(i) * n + j] -= cross;
                l[static_cast<std::size_t>(j) * n + i] -= cross;
            }
        }
    }

    std::vector<double> m(size);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            m[static_cast<std::size_t>(i) * n + j] =
                (i == j ? 1.0 : 0.0) - inv_n -
                static_cast<double>(sigma[i] * sigma[j]) * inv_n;
        }
    }

    std::vector<double> ml;
    std::vector<double> mlm;
    linalg::detail::matmul(n, m, l, ml);
    linalg::detail::matmul(n, ml, m, mlm);
    // Exact symmetry for the eigensolver; the product is symmetric up to
    // rounding already.
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (mlm[i * n + j] + mlm[j * n + i]);
            mlm[i * n + j] = avg;
            mlm[j * n + i] = avg;
        }
    }

    std::vector<double> evals;
    std::vector<double> evecs;
    linalg::detail::sym_eigen_raw(n, mlm, evals, evecs);

    CertificateReport report;
    for (std::uint32_t k = 0; k < 3 && k < n; ++k) {
        report.spectrum_head[k] = evals[k];
    }
    report.lambda3 = n >= 3 ? evals[2] : 0.0;
    report.certified = report.lambda3 > kCertificateTolerance;
    return report;
}

}  // namespace chsbm
