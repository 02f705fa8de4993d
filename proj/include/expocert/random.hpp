#ifndef EXPOCERT_RANDOM_HPP
#define EXPOCERT_RANDOM_HPP

#include "expocert/linalg.hpp"

#include <cstdint>
#include <random>

namespace expocert {

using Rng = std::mt19937_64;

/// Matrix of independent standard complex Gaussians (E|z|^2 = 1).
inline ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    return g;
}

/// Uniform on the unit sphere of C^dim (normalized Gaussian).
inline ComplexVector random_unit_vector(Eigen::Index dim, Rng& rng) {
    for (;;) {
        ComplexVector v = ginibre(dim, 1, rng).col(0);
        const double n = v.norm();
        if (n > 1e-12) return v / n;
    }
}

/// rows x cols matrix of exact numerical rank `rank`, built as a product of
/// Ginibre factors and resampled until the rank check passes.
inline ComplexMatrix random_rank_matrix(Eigen::Index rows, Eigen::Index cols, int rank, Rng& rng,
                                        const ToleranceConfig& tol = {}) {
    if (rank < 0 || rank > std::min(rows, cols)) throw InvalidArgument("random_rank_matrix: infeasible rank");
    for (;;) {
        ComplexMatrix m = ginibre(rows, rank, rng) * ginibre(rank, cols, rng);
        if (numerical_rank(m, tol) == rank) return m;
    }
}

/// Random PSD matrix G G^dagger with G of size dim x rank, scaled to unit trace.
inline ComplexMatrix random_psd(Eigen::Index dim, int rank, Rng& rng) {
    const ComplexMatrix g = ginibre(dim, rank, rng);
    ComplexMatrix p = g * g.adjoint();
    return p / p.trace().real();
}

}  // namespace expocert

#endif  // EXPOCERT_RANDOM_HPP
