#include "expocert/map_model.hpp"

#include "expocert/random.hpp"

#include <cmath>
#include <limits>

namespace expocert {

MapOperator::MapOperator(int dim_in, int dim_out, ComplexMatrix choi, const ToleranceConfig& tol)
    : dim_in_(dim_in), dim_out_(dim_out) {
    if (dim_in <= 0 || dim_out <= 0) throw DimensionMismatch("MapOperator: dimensions must be positive");
    const Eigen::Index d = Eigen::Index(dim_in) * dim_out;
    if (choi.rows() != d || choi.cols() != d)
        throw DimensionMismatch("MapOperator: Choi matrix must be (n m) x (n m)");
    if (!all_finite(choi)) throw InvalidArgument("MapOperator: Choi matrix has non-finite entries");
    const RealVector sigma = singular_values(choi);
    const double smax = sigma.size() ? sigma(0) : 0.0;
    if (hermiticity_defect(choi) > tol.residual_rel_tol * smax * std::sqrt(double(d)))
        throw InvalidArgument("MapOperator: Choi matrix is not Hermitian");
    choi_ = 0.5 * (choi + choi.adjoint());
    scale_ = smax;
}

ComplexMatrix MapOperator::image_of_unit(int i, int j) const {
    return choi_.block(Eigen::Index(i) * dim_out_, Eigen::Index(j) * dim_out_, dim_out_, dim_out_);
}

ComplexMatrix apply_map(const MapOperator& phi, const ComplexMatrix& a) {
    const int n = phi.dim_in();
    const int m = phi.dim_out();
    if (a.rows() != n || a.cols() != n) throw DimensionMismatch("apply: input must be n x n");
    ComplexMatrix out = ComplexMatrix::Zero(m, m);
    const ComplexMatrix& c = phi.choi();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a(i, j) != Complex(0.0)) out += a(i, j) * c.block(Eigen::Index(i) * m, Eigen::Index(j) * m, m, m);
    return out;
}

MapOperator from_apply_table(int dim_in, const std::vector<ComplexMatrix>& images, const ToleranceConfig& tol) {
    if (dim_in <= 0 || images.size() != std::size_t(dim_in) * dim_in)
        throw DimensionMismatch("from_apply_table: need n^2 images");
    const Eigen::Index m = images.front().rows();
    if (m == 0) throw DimensionMismatch("from_apply_table: empty image");
    ComplexMatrix c(dim_in * m, dim_in * m);
    for (int i = 0; i < dim_in; ++i)
        for (int j = 0; j < dim_in; ++j) {
            const ComplexMatrix& img = images[std::size_t(i) * dim_in + j];
            if (img.rows() != m || img.cols() != m) throw DimensionMismatch("from_apply_table: images must be m x m");
            c.block(i * m, j * m, m, m) = img;
        }
    return MapOperator(dim_in, int(m), std::move(c), tol);
}

MapOperator from_conjugation(const ComplexMatrix& v, bool transposed) {
    if (v.size() == 0 || v.isZero(0.0)) throw ZeroOperator("from_conjugation: V must be nonzero");
    const int n = int(v.rows());
    std::vector<ComplexMatrix> images;
    images.reserve(std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // V^dagger e_ij V = (row i of V)^dagger (row j of V); transposed swaps i and j.
            const int r = transposed ? j : i;
            const int s = transposed ? i : j;
            images.push_back(v.row(r).adjoint() * v.row(s));
        }
    return from_apply_table(n, images);
}

MapOperator from_kraus(const std::vector<ComplexMatrix>& kraus) {
    if (kraus.empty()) throw DimensionMismatch("from_kraus: need at least one operator");
    const Eigen::Index m = kraus.front().rows();
    const Eigen::Index n = kraus.front().cols();
    for (const auto& k : kraus)
        if (k.rows() != m || k.cols() != n) throw DimensionMismatch("from_kraus: operators must share a shape");
    std::vector<ComplexMatrix> images;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            ComplexMatrix img = ComplexMatrix::Zero(m, m);
            for (const auto& k : kraus) img += k.col(i) * k.col(j).adjoint();
            images.push_back(std::move(img));
        }
    return from_apply_table(int(n), images);
}

MapOperator identity_map(int n) { return from_conjugation(ComplexMatrix::Identity(n, n), false); }

MapOperator transpose_map(int n) { return from_conjugation(ComplexMatrix::Identity(n, n), true); }

MapOperator trace_map(int n, int m) {
    std::vector<ComplexMatrix> images;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            images.push_back(i == j ? ComplexMatrix(ComplexMatrix::Identity(m, m)) : ComplexMatrix(ComplexMatrix::Zero(m, m)));
    return from_apply_table(n, images);
}

MapOperator decohering_map(int n) {
    std::vector<ComplexMatrix> images;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ComplexMatrix img = ComplexMatrix::Zero(n, n);
            if (i == j) img(i, i) = 1.0;
            images.push_back(std::move(img));
        }
    return from_apply_table(n, images);
}

MapOperator direct_sum(const MapOperator& phi1, const MapOperator& phi2) {
    if (phi1.dim_in() != phi2.dim_in()) throw DimensionMismatch("direct_sum: input dimensions differ");
    const int n = phi1.dim_in();
    const int m1 = phi1.dim_out();
    const int m2 = phi2.dim_out();
    std::vector<ComplexMatrix> images;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ComplexMatrix img = ComplexMatrix::Zero(m1 + m2, m1 + m2);
            img.topLeftCorner(m1, m1) = phi1.image_of_unit(i, j);
            img.bottomRightCorner(m2, m2) = phi2.image_of_unit(i, j);
            images.push_back(std::move(img));
        }
    return from_apply_table(n, images);
}

MapOperator scaled(const MapOperator& phi, double factor) {
    return MapOperator(phi.dim_in(), phi.dim_out(), factor * phi.choi());
}

MapOperator adjoint_map(const MapOperator& phi) {
    const int n = phi.dim_in();
    const int m = phi.dim_out();
    // Phi*(e_kl)_ij = conj(Phi(e_ij)_kl)
    std::vector<ComplexMatrix> images;
    images.reserve(std::size_t(m) * m);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
            ComplexMatrix img(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) img(i, j) = std::conj(phi.choi()(Eigen::Index(i) * m + k, Eigen::Index(j) * m + l));
            images.push_back(std::move(img));
        }
    return from_apply_table(m, images);
}

NormalForm unital_normalization(const MapOperator& phi, const ToleranceConfig& tol) {
    const int n = phi.dim_in();
    const int m = phi.dim_out();
    const ComplexMatrix a = apply_map(phi, ComplexMatrix::Identity(n, n));
    const SvdResult s = svd(a);
    const int k = numerical_rank(s.singular_values, tol);
    if (k == 0) throw ZeroMap("unital_normalization: Phi(1) = 0");

    const ComplexMatrix basis = (k == m) ? ComplexMatrix(ComplexMatrix::Identity(m, m)) : ComplexMatrix(s.left_vectors.leftCols(k));
    const ComplexMatrix root = psd_sqrt(a);
    const ComplexMatrix inv_root = generalized_inverse(root, tol);

    std::vector<ComplexMatrix> images;
    images.reserve(std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            images.push_back(basis.adjoint() * inv_root * phi.image_of_unit(i, j) * inv_root * basis);

    return NormalForm{basis.adjoint() * root, from_apply_table(n, images), k, basis};
}

bool is_completely_positive(const MapOperator& phi, const ToleranceConfig& tol) {
    const HermitianEigen e = hermitian_eigen(phi.choi());
    return e.values(0) >= -tol.rank_rel_tol * phi.scale();
}

PositivityReport is_positive_heuristic(const MapOperator& phi, int samples, const ToleranceConfig& tol,
                                       std::uint64_t seed) {
    if (samples < 1) throw InvalidArgument("is_positive_heuristic: samples must be >= 1");
    const int n = phi.dim_in();
    Rng rng(seed);

    PositivityReport rep{true, std::numeric_limits<double>::infinity(), ComplexVector()};
    ComplexVector worst_h;
    for (int s = 0; s < samples; ++s) {
        const ComplexVector x = random_unit_vector(n, rng);
        const HermitianEigen e = hermitian_eigen(apply_map(phi, outer(x, x)));
        if (e.values(0) < rep.worst_value) {
            rep.worst_value = e.values(0);
            rep.worst_input = x;
            worst_h = e.vectors.col(0);
        }
    }

    // <h|Phi(|x><x|)|h> = <x|Phi*(|h><h|)|x>: alternate the two exact minimizations.
    const MapOperator adj = adjoint_map(phi);
    ComplexVector x = rep.worst_input;
    ComplexVector h = worst_h;
    double value = rep.worst_value;
    for (int it = 0; it < tol.max_iters; ++it) {
        const HermitianEigen ex = hermitian_eigen(apply_map(adj, outer(h, h)));
        x = ex.vectors.col(0);
        const HermitianEigen eh = hermitian_eigen(apply_map(phi, outer(x, x)));
        h = eh.vectors.col(0);
        const double next = eh.values(0);
        if (next < rep.worst_value) {
            rep.worst_value = next;
            rep.worst_input = x;
        }
        if (std::abs(value - next) < tol.convergence_tol * std::max(phi.scale(), 1e-300)) break;
        value = next;
    }
    rep.positive = rep.worst_value >= -tol.residual_rel_tol * phi.scale();
    return rep;
}

}  // namespace expocert
