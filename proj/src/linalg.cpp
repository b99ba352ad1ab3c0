#include "chsbm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace chsbm::linalg {

namespace {

constexpr int kMaxSweeps = 30;
constexpr double kOffDiagTolerance = 1e-12;

double frobenius(std::uint32_t n, const std::vector<double>& a) {
    double sum = 0.0;
    for (std::uint32_t i = 0; i < n * n; ++i) {
        sum += a[i] * a[i];
    }
    return std::sqrt(sum);
}

double off_diagonal_mass(std::uint32_t n, const std::vector<double>& a) {
    double sum = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            sum += 2.0 * a[i * n + j] * a[i * n + j];
        }
    }
    return std::sqrt(sum);
}

}  // namespace

SymMatrix::SymMatrix(std::uint32_t n, std::vector<double> entries)
    : n_(n), data_(std::move(entries)) {
    if (data_.size() != static_cast<std::size_t>(n_) * n_) {
        throw DimensionError("SymMatrix: entries do not match n*n");
    }
    double max_asym = 0.0;
    for (std::uint32_t i = 0; i < n_; ++i) {
        for (std::uint32_t j = i + 1; j < n_; ++j) {
            max_asym = std::max(max_asym, std::abs(data_[i * n_ + j] - data_[j * n_ + i]));
        }
    }
    if (max_asym > 1e-10) {
        throw SymmetryError("SymMatrix: asymmetry " + std::to_string(max_asym) +
                            " exceeds 1e-10");
    }
    for (std::uint32_t i = 0; i < n_; ++i) {
        for (std::uint32_t j = i + 1; j < n_; ++j) {
            const double avg = 0.5 * (data_[i * n_ + j] + data_[j * n_ + i]);
            data_[i * n_ + j] = avg;
            data_[j * n_ + i] = avg;
        }
    }
}

namespace detail {

void sym_eigen_raw(std::uint32_t n, std::vector<double>& a,
                   std::vector<double>& eigenvalues, std::vector<double>& eigenvectors) {
    eigenvectors.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (std::uint32_t i = 0; i < n; ++i) {
        eigenvectors[i * n + i] = 1.0;
    }
    eigenvalues.assign(n, 0.0);
    if (n == 0) {
        return;
    }
    if (n == 1) {
        eigenvalues[0] = a[0];
        return;
    }

    const double norm = frobenius(n, a);
    const double threshold = kOffDiagTolerance * norm;

    bool converged = off_diagonal_mass(n, a) <= threshold;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (std::uint32_t p = 0; p + 1 < n; ++p) {
            for (std::uint32_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) {
                    continue;
                }
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double theta = 0.5 * (aqq - app) / apq;
                const double t_rot =
                    (theta >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t_rot * t_rot);
                const double s = t_rot * c;
                const double tau = s / (1.0 + c);

                a[p * n + p] = app - t_rot * apq;
                a[q * n + q] = aqq + t_rot * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for (std::uint32_t k = 0; k < n; ++k) {
                    if (k == p || k == q) {
                        continue;
                    }
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = akp - s * (akq + tau * akp);
                    a[p * n + k] = a[k * n + p];
                    a[k * n + q] = akq + s * (akp - tau * akq);
                    a[q * n + k] = a[k * n + q];
                }
                for (std::uint32_t k = 0; k < n; ++k) {
                    const double vkp = eigenvectors[k * n + p];
                    const double vkq = eigenvectors[k * n + q];
                    eigenvectors[k * n + p] = vkp - s * (vkq + tau * vkp);
                    eigenvectors[k * n + q] = vkq + s * (vkp - tau * vkq);
                }
            }
        }
        converged = off_diagonal_mass(n, a) <= threshold;
    }
    if (!converged) {
        throw IterationLimit("sym_eigen: no convergence within 30 Jacobi sweeps");
    }

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0U);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        return a[x * n + x] < a[y * n + y];
    });

    std::vector<double> sorted_vectors(static_cast<std::size_t>(n) * n);
    for (std::uint32_t k = 0; k < n; ++k) {
        eigenvalues[k] = a[order[k] * n + order[k]];
        for (std::uint32_t i = 0; i < n; ++i) {
            sorted_vectors[i * n + k] = eigenvectors[i * n + order[k]];
        }
    }
    eigenvectors.swap(sorted_vectors);
}

void matmul(std::uint32_t n, const std::vector<double>& a, const std::vector<double>& b,
            std::vector<double>& result) {
    result.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t k = 0; k < n; ++k) {
            const double aik = a[i * n + k];
            if (aik == 0.0) {
                continue;
            }
            const double* brow = &b[k * n];
            double* rrow = &result[i * n];
            for (std::uint32_t j = 0; j < n; ++j) {
                rrow[j] += aik * brow[j];
            }
        }
    }
}

void psd_project_raw(std::uint32_t n, std::vector<double>& matrix) {
    std::vector<double> evals;
    std::vector<double> evecs;
    std::vector<double> scratch = matrix;
    sym_eigen_raw(n, scratch, evals, evecs);

    // Rebuild from the nonnegative part of the spectrum.
    std::fill(matrix.begin(), matrix.end(), 0.0);
    for (std::uint32_t k = 0; k < n; ++k) {
        const double lambda = evals[k];
        if (lambda <= 0.0) {
            continue;
        }
        for (std::uint32_t i = 0; i < n; ++i) {
            const double scaled = lambda * evecs[i * n + k];
            if (scaled == 0.0) {
                continue;
            }
            for (std::uint32_t j = i; j < n; ++j) {
                matrix[i * n + j] += scaled * evecs[j * n + k];
            }
        }
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            matrix[j * n + i] = matrix[i * n + j];
        }
    }
}

}  // namespace detail

EigenDecomposition sym_eigen(const SymMatrix& matrix) {
    EigenDecomposition out;
    std::vector<double> scratch = matrix.data();
    detail::sym_eigen_raw(matrix.size(), scratch, out.eigenvalues, out.eigenvectors);
    return out;
}

SymMatrix psd_project(const SymMatrix& matrix) {
    std::vector<double> buffer = matrix.data();
    detail::psd_project_raw(matrix.size(), buffer);
    return SymMatrix(matrix.size(), std::move(buffer));
}

std::vector<double> leading_eigenvector(const SymMatrix& matrix) {
    const std::uint32_t n = matrix.size();
    if (n == 0) {
        throw DimensionError("leading_eigenvector: empty matrix");
    }
    const EigenDecomposition eig = sym_eigen(matrix);

    std::uint32_t best = 0;
    double best_mag = std::abs(eig.eigenvalues[0]);
    for (std::uint32_t k = 1; k < n; ++k) {
        const double mag = std::abs(eig.eigenvalues[k]);
        if (mag > best_mag) {
            best_mag = mag;
            best = k;
        }
    }

    std::vector<double> v(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        v[i] = eig.eigenvectors[i * n + best];
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        if (v[i] != 0.0) {
            if (v[i] < 0.0) {
                for (double& x : v) {
                    x = -x;
                }
            }
            break;
        }
    }
    return v;
}

}  // namespace chsbm::linalg
