#include <doctest.h>

#include <cmath>

#include "chsbm/generator.hpp"
#include "chsbm/linalg.hpp"

using namespace chsbm;
using namespace chsbm::linalg;

namespace {

SymMatrix random_symmetric(std::uint32_t n, std::uint64_t seed, double scale = 2.0) {
    Rng rng(RngSeed{seed});
    std::vector<double> data(static_cast<std::size_t>(n) * n, 0.0);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i; j < n; ++j) {
            const double value = scale * (rng.uniform01() - 0.5);
            data[i * n + j] = value;
            data[j * n + i] = value;
        }
    }
    return SymMatrix(n, std::move(data));
}

double frobenius(std::uint32_t n, const std::vector<double>& a) {
    double sum = 0.0;
    for (std::uint32_t i = 0; i < n * n; ++i) {
        sum += a[i] * a[i];
    }
    return std::sqrt(sum);
}

void check_decomposition(const SymMatrix& s) {
    const std::uint32_t n = s.size();
    const EigenDecomposition eig = sym_eigen(s);
    const double norm = frobenius(n, s.data());
    const double residual_bound = 1e-8 * (1.0 + norm);

    for (std::uint32_t k = 0; k + 1 < n; ++k) {
        CHECK(eig.eigenvalues[k] <= eig.eigenvalues[k + 1]);
    }

    // Residual ||S v - lambda v|| per eigenpair.
    for (std::uint32_t k = 0; k < n; ++k) {
        double residual = 0.0;
        for (std::uint32_t i = 0; i < n; ++i) {
            double sv = 0.0;
            for (std::uint32_t j = 0; j < n; ++j) {
                sv += s.at(i, j) * eig.eigenvectors[j * n + k];
            }
            const double r = sv - eig.eigenvalues[k] * eig.eigenvectors[i * n + k];
            residual += r * r;
        }
        CHECK(std::sqrt(residual) <= residual_bound);
    }

    // Orthonormality of the eigenvector columns.
    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = a; b < n; ++b) {
            double dot = 0.0;
            for (std::uint32_t i = 0; i < n; ++i) {
                dot += eig.eigenvectors[i * n + a] * eig.eigenvectors[i * n + b];
            }
            CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) <= 1e-8);
        }
    }

    // Reconstruction and trace preservation.
    double reconstruction = 0.0;
    double trace = 0.0;
    double eigen_sum = 0.0;
    for (std::uint32_t k = 0; k < n; ++k) {
        eigen_sum += eig.eigenvalues[k];
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        trace += s.at(i, i);
        for (std::uint32_t j = 0; j < n; ++j) {
            double rebuilt = 0.0;
            for (std::uint32_t k = 0; k < n; ++k) {
                rebuilt += eig.eigenvalues[k] * eig.eigenvectors[i * n + k] *
                           eig.eigenvectors[j * n + k];
            }
            const double diff = rebuilt - s.at(i, j);
            reconstruction += diff * diff;
        }
    }
    CHECK(std::sqrt(reconstruction) <= 1e-7 * (1.0 + norm));
    CHECK(std::abs(eigen_sum - trace) <= 1e-8 * (1.0 + std::abs(trace)));
}

}  // namespace

TEST_SUITE_BEGIN("linalg");

TEST_CASE("SymMatrix rejects asymmetric input") {
    std::vector<double> bad{1.0, 2.0, 0.5, 1.0};
    CHECK_THROWS_AS(SymMatrix(2, std::move(bad)), SymmetryError);
    CHECK_THROWS_AS(SymMatrix(3, std::vector<double>(4, 0.0)), DimensionError);
}

TEST_CASE("identity and diagonal spectra") {
    std::vector<double> id{1, 0, 0, 0, 1, 0, 0, 0, 1};
    const auto eig_id = sym_eigen(SymMatrix(3, id));
    for (double value : eig_id.eigenvalues) {
        CHECK(value == doctest::Approx(1.0).epsilon(1e-14));
    }

    std::vector<double> diag{3, 0, 0, 0, 1, 0, 0, 0, 2};
    const auto eig_diag = sym_eigen(SymMatrix(3, diag));
    CHECK(eig_diag.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(eig_diag.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(eig_diag.eigenvalues[2] == doctest::Approx(3.0));
}

TEST_CASE("random symmetric matrices are decomposed to tolerance") {
    check_decomposition(random_symmetric(20, 101));
    check_decomposition(random_symmetric(7, 102, 10.0));
    check_decomposition(random_symmetric(1, 103));
    check_decomposition(random_symmetric(40, 104));
}

TEST_CASE("psd_project clips the negative part") {
    std::vector<double> diag{2, 0, 0, -3};
    const SymMatrix projected = psd_project(SymMatrix(2, diag));
    CHECK(projected.at(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(projected.at(1, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(projected.at(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("psd_project is a fixed point on PSD input and idempotent") {
    for (std::uint64_t seed : {7ULL, 8ULL, 9ULL}) {
        const SymMatrix s = random_symmetric(12, seed);
        const SymMatrix once = psd_project(s);
        const auto eig = sym_eigen(once);
        CHECK(eig.eigenvalues.front() >= -1e-8);

        const SymMatrix twice = psd_project(once);
        for (std::uint32_t i = 0; i < 12; ++i) {
            for (std::uint32_t j = 0; j < 12; ++j) {
                CHECK(std::abs(twice.at(i, j) - once.at(i, j)) <= 1e-8);
            }
        }
    }
}

TEST_CASE("leading_eigenvector handles rank-one and degenerate input") {
    // sigma sigma^T has leading eigenvector sigma / sqrt(n).
    const std::vector<int> sigma{1, -1, 1, 1, -1};
    const std::uint32_t n = 5;
    std::vector<double> outer(n * n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            outer[i * n + j] = sigma[i] * sigma[j];
        }
    }
    const auto v = leading_eigenvector(SymMatrix(n, outer));
    for (std::uint32_t i = 0; i < n; ++i) {
        CHECK(v[i] == doctest::Approx(sigma[i] / std::sqrt(5.0)).epsilon(1e-10));
    }

    std::vector<double> id{1, 0, 0, 0, 1, 0, 0, 0, 1};
    const auto e1 = leading_eigenvector(SymMatrix(3, id));
    CHECK(e1[0] == doctest::Approx(1.0));
    CHECK(e1[1] == doctest::Approx(0.0));
    CHECK(e1[2] == doctest::Approx(0.0));
}

TEST_CASE("leading_eigenvector residual on random input") {
    for (std::uint64_t seed : {21ULL, 22ULL, 23ULL}) {
        const SymMatrix s = random_symmetric(15, seed);
        const auto v = leading_eigenvector(s);
        // Rayleigh quotient as the eigenvalue estimate.
        double lambda = 0.0;
        for (std::uint32_t i = 0; i < 15; ++i) {
            double sv = 0.0;
            for (std::uint32_t j = 0; j < 15; ++j) {
                sv += s.at(i, j) * v[j];
            }
            lambda += v[i] * sv;
        }
        double residual = 0.0;
        for (std::uint32_t i = 0; i < 15; ++i) {
            double sv = 0.0;
            for (std::uint32_t j = 0; j < 15; ++j) {
                sv += s.at(i, j) * v[j];
            }
            const double r = sv - lambda * v[i];
            residual += r * r;
        }
        CHECK(std::sqrt(residual) <= 1e-8 * (1.0 + frobenius(15, s.data())));
    }
}

TEST_SUITE_END();
