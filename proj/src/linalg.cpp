#include "expocert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace expocert {

KernelInclusionViolated::KernelInclusionViolated(ComplexVector offending, double residual_value)
    : Error("kernel inclusion violated: a kernel vector of B is not annihilated by A (residual " +
            std::to_string(residual_value) + ")"),
      worst_vector(std::move(offending)),
      residual(residual_value) {}

void ToleranceConfig::validate() const {
    if (!(rank_rel_tol > 0.0) || !(residual_rel_tol > 0.0) || !(convergence_tol > 0.0) || max_iters <= 0)
        throw InvalidArgument("tolerances must be strictly positive");
}

SvdResult svd(const ComplexMatrix& m) {
    SvdResult out;
    if (m.size() == 0) {
        out.left_vectors = ComplexMatrix::Identity(m.rows(), m.rows());
        out.right_vectors = ComplexMatrix::Identity(m.cols(), m.cols());
        out.singular_values = RealVector::Zero(0);
        return out;
    }
    Eigen::BDCSVD<ComplexMatrix> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.left_vectors = dec.matrixU();
    out.right_vectors = dec.matrixV();
    out.singular_values = dec.singularValues();
    return out;
}

RealVector singular_values(const ComplexMatrix& m) {
    if (m.size() == 0) return RealVector::Zero(0);
    // Bidiagonalization is cheaper on the tall orientation.
    if (m.cols() > m.rows()) {
        Eigen::BDCSVD<ComplexMatrix> dec(m.adjoint());
        return dec.singularValues();
    }
    Eigen::BDCSVD<ComplexMatrix> dec(m);
    return dec.singularValues();
}

int numerical_rank(const RealVector& sigma, const ToleranceConfig& tol) {
    if (sigma.size() == 0) return 0;
    const double smax = sigma(0);
    if (!(smax > 0.0)) return 0;
    const double cut = tol.rank_rel_tol * smax;
    int r = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > cut) ++r;
    return r;
}

int numerical_rank(const ComplexMatrix& m, const ToleranceConfig& tol) {
    return numerical_rank(singular_values(m), tol);
}

std::vector<ComplexVector> kernel_basis(const ComplexMatrix& m, const ToleranceConfig& tol) {
    std::vector<ComplexVector> basis;
    if (m.cols() == 0) return basis;
    if (m.rows() == 0) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) basis.push_back(ComplexVector::Unit(m.cols(), j));
        return basis;
    }
    const SvdResult s = svd(m);
    const int r = numerical_rank(s.singular_values, tol);
    for (Eigen::Index j = r; j < m.cols(); ++j) basis.push_back(s.right_vectors.col(j));
    return basis;
}

std::vector<RealVector> real_kernel_basis(const RealMatrix& m, const ToleranceConfig& tol) {
    std::vector<RealVector> basis;
    if (m.cols() == 0) return basis;
    if (m.rows() == 0) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) basis.push_back(RealVector::Unit(m.cols(), j));
        return basis;
    }
    Eigen::BDCSVD<RealMatrix> dec(m, Eigen::ComputeFullV);
    const int r = numerical_rank(RealVector(dec.singularValues()), tol);
    for (Eigen::Index j = r; j < m.cols(); ++j) basis.push_back(dec.matrixV().col(j));
    return basis;
}

ComplexMatrix generalized_inverse(const ComplexMatrix& m, const ToleranceConfig& tol) {
    ComplexMatrix out = ComplexMatrix::Zero(m.cols(), m.rows());
    if (m.size() == 0) return out;
    const SvdResult s = svd(m);
    const int r = numerical_rank(s.singular_values, tol);
    for (int k = 0; k < r; ++k)
        out += (1.0 / s.singular_values(k)) * s.right_vectors.col(k) * s.left_vectors.col(k).adjoint();
    return out;
}

ComplexMatrix kernel_inclusion_factor(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceConfig& tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("kernel_inclusion_factor: A and B must have the same shape");

    const RealVector sa = singular_values(a);
    const double amax = sa.size() ? sa(0) : 0.0;
    const SvdResult sb = svd(b);
    const int rb = numerical_rank(sb.singular_values, tol);

    double worst = 0.0;
    ComplexVector worst_vec;
    for (Eigen::Index j = rb; j < b.cols(); ++j) {
        const double res = (a * sb.right_vectors.col(j)).norm();
        if (res > worst || worst_vec.size() == 0) {
            worst = res;
            worst_vec = sb.right_vectors.col(j);
        }
    }
    if (worst_vec.size() != 0 && worst > tol.residual_rel_tol * amax) throw KernelInclusionViolated(worst_vec, worst);

    // Sigma_B^+ keeps only the numerically nonzero singular values of B.
    ComplexMatrix sigma_plus = ComplexMatrix::Zero(b.cols(), b.rows());
    for (int k = 0; k < rb; ++k) sigma_plus(k, k) = 1.0 / sb.singular_values(k);
    return a * sb.right_vectors * sigma_plus * sb.left_vectors.adjoint();
}

ComplexMatrix columns_of(std::span<const ComplexVector> vectors) {
    if (vectors.empty()) return ComplexMatrix(0, 0);
    const Eigen::Index len = vectors.front().size();
    ComplexMatrix out(len, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != len) throw DimensionMismatch("span_dimension: vectors differ in length");
        out.col(static_cast<Eigen::Index>(j)) = vectors[j];
    }
    return out;
}

int span_dimension(std::span<const ComplexVector> vectors, const ToleranceConfig& tol) {
    if (vectors.empty()) return 0;
    return numerical_rank(columns_of(vectors), tol);
}

ComplexMatrix range_projector(const ComplexMatrix& m, const ToleranceConfig& tol) {
    ComplexMatrix p = ComplexMatrix::Zero(m.rows(), m.rows());
    if (m.size() == 0) return p;
    const SvdResult s = svd(m);
    const int r = numerical_rank(s.singular_values, tol);
    for (int k = 0; k < r; ++k) p += s.left_vectors.col(k) * s.left_vectors.col(k).adjoint();
    return p;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
    const ComplexMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm);
    return {es.eigenvalues(), es.eigenvectors()};
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
    const HermitianEigen e = hermitian_eigen(m);
    RealVector roots = e.values.cwiseMax(0.0).cwiseSqrt();
    return e.vectors * roots.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v) { return u * v.adjoint(); }

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i)
        if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag())) return false;
    return true;
}

double hermiticity_defect(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return (m - m.adjoint()).norm();
}

}  // namespace expocert
