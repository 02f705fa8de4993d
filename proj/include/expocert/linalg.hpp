#ifndef EXPOCERT_LINALG_HPP
#define EXPOCERT_LINALG_HPP

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace expocert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

/// Raised by kernel_inclusion_factor when some kernel vector of B is not
/// annihilated by A.
struct KernelInclusionViolated : Error {
    KernelInclusionViolated(ComplexVector offending, double residual_value);
    ComplexVector worst_vector;
    double residual;
};

// ---------------------------------------------------------------------------
// Tolerances
// ---------------------------------------------------------------------------

/// Every numerical threshold used by the library. All tolerances are relative
/// to the largest singular value of whatever matrix is being judged.
struct ToleranceConfig {
    double rank_rel_tol = 1e-8;
    double residual_rel_tol = 1e-9;
    double convergence_tol = 1e-12;
    int max_iters = 500;

    /// Throws InvalidArgument unless every tolerance is strictly positive.
    void validate() const;

    ToleranceConfig with_rank_tol(double t) const {
        ToleranceConfig c = *this;
        c.rank_rel_tol = t;
        c.validate();
        return c;
    }

    bool operator==(const ToleranceConfig&) const = default;
};

// ---------------------------------------------------------------------------
// SVD-based rank decisions
// ---------------------------------------------------------------------------

struct SvdResult {
    ComplexMatrix left_vectors;   // U, full
    RealVector singular_values;   // descending
    ComplexMatrix right_vectors;  // V, full

    double max_singular_value() const {
        return singular_values.size() == 0 ? 0.0 : singular_values(0);
    }
};

SvdResult svd(const ComplexMatrix& m);

/// Singular values only, descending.
RealVector singular_values(const ComplexMatrix& m);

/// Number of singular values above tol.rank_rel_tol * sigma_max. Zero for an
/// all-zero (or empty) matrix.
int numerical_rank(const ComplexMatrix& m, const ToleranceConfig& tol = {});
int numerical_rank(const RealVector& sigma, const ToleranceConfig& tol);

/// Orthonormal basis of the numerical kernel; size = cols - numerical_rank.
std::vector<ComplexVector> kernel_basis(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Kernel basis of a real matrix. Needed for real-linear systems such as the
/// intertwiner equation X A = A X^dagger.
std::vector<RealVector> real_kernel_basis(const RealMatrix& m, const ToleranceConfig& tol = {});

/// Moore-Penrose pseudoinverse with sub-threshold singular values dropped.
ComplexMatrix generalized_inverse(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Given ker B contained in ker A, returns X with A = X B and rank X = rank A,
/// built as X = A V_B Sigma_B^+ U_B^dagger.
ComplexMatrix kernel_inclusion_factor(const ComplexMatrix& a, const ComplexMatrix& b,
                                      const ToleranceConfig& tol = {});

/// Numerical rank of the matrix whose columns are `vectors`.
int span_dimension(std::span<const ComplexVector> vectors, const ToleranceConfig& tol = {});

/// Stacks vectors as columns. All must have the same length.
ComplexMatrix columns_of(std::span<const ComplexVector> vectors);

/// Orthogonal projector onto the numerical range of m.
ComplexMatrix range_projector(const ComplexMatrix& m, const ToleranceConfig& tol = {});

// ---------------------------------------------------------------------------
// Hermitian helpers
// ---------------------------------------------------------------------------

struct HermitianEigen {
    RealVector values;      // ascending
    ComplexMatrix vectors;  // columns
};

/// Eigendecomposition of the Hermitian part (M + M^dagger) / 2.
HermitianEigen hermitian_eigen(const ComplexMatrix& m);

/// Principal square root of the PSD part of a Hermitian matrix; negative
/// eigenvalues are clamped to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// |u><v|
ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v);

bool all_finite(const ComplexMatrix& m);

double hermiticity_defect(const ComplexMatrix& m);

}  // namespace expocert

#endif  // EXPOCERT_LINALG_HPP
