#pragma once

#include <cstdint>
#include <vector>

#include "chsbm/core.hpp"

namespace chsbm::linalg {

/// Dense symmetric matrix. Construction rejects inputs whose max
/// asymmetry exceeds 1e-10 and stores the symmetrized average.
class SymMatrix {
  public:
    SymMatrix(std::uint32_t n, std::vector<double> entries);

    std::uint32_t size() const { return n_; }
    double at(std::uint32_t i, std::uint32_t j) const { return data_[i * n_ + j]; }
    const std::vector<double>& data() const { return data_; }

  private:
    std::uint32_t n_ = 0;
    std::vector<double> data_;
};

struct EigenDecomposition {
    /// Ascending.
    std::vector<double> eigenvalues;
    /// Row-major n x n; column k is the unit eigenvector of eigenvalues[k].
    std::vector<double> eigenvectors;
};

/// Cyclic Jacobi. Converges when the off-diagonal Frobenius mass drops
/// below 1e-12 * ||S||_F; at most 30 sweeps, else IterationLimit.
EigenDecomposition sym_eigen(const SymMatrix& matrix);

/// Frobenius projection onto the PSD cone (negative eigenvalues clipped).
SymMatrix psd_project(const SymMatrix& matrix);

/// Unit eigenvector of the largest-magnitude eigenvalue, sign-normalized
/// so the first nonzero coordinate is positive. Ties resolve to the
/// lowest index in the ascending spectrum, which maps identity to e1.
std::vector<double> leading_eigenvector(const SymMatrix& matrix);

namespace detail {

/// In-place Jacobi on a raw buffer (destroyed). No symmetry check; the
/// caller guarantees it. Used by the SDP iteration to skip copies.
void sym_eigen_raw(std::uint32_t n, std::vector<double>& scratch,
                   std::vector<double>& eigenvalues, std::vector<double>& eigenvectors);

/// result = A * B for row-major n x n buffers.
void matmul(std::uint32_t n, const std::vector<double>& a, const std::vector<double>& b,
            std::vector<double>& result);

/// Clips negative eigenvalues of the symmetric buffer in place.
void psd_project_raw(std::uint32_t n, std::vector<double>& matrix);

}  // namespace detail

}  // namespace chsbm::linalg
