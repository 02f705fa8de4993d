#ifndef EXPOCERT_MAP_MODEL_HPP
#define EXPOCERT_MAP_MODEL_HPP

#include "expocert/linalg.hpp"

#include <cstdint>
#include <vector>

namespace expocert {

struct ZeroOperator : Error {
    using Error::Error;
};

struct ZeroMap : Error {
    using Error::Error;
};

/**
 * A linear map B(C^n) -> B(C^m), stored as its unnormalized Choi matrix
 *
 *     C = sum_ij e_ij (x) Phi(e_ij),
 *
 * an (n m) x (n m) matrix whose (i, j) block of size m x m is Phi(e_ij).
 * Relative to the Choi-Jamiolkowski witness W = (id (x) Phi) P+ built from
 * the normalized maximally entangled state, C = n W.
 *
 * Construction rejects non-finite entries and Choi matrices that are not
 * Hermitian within the residual tolerance, so every MapOperator preserves
 * Hermiticity.
 */
class MapOperator {
public:
    MapOperator(int dim_in, int dim_out, ComplexMatrix choi, const ToleranceConfig& tol = {});

    int dim_in() const { return dim_in_; }
    int dim_out() const { return dim_out_; }
    const ComplexMatrix& choi() const { return choi_; }

    /// Phi(e_ij), the (i, j) block of the Choi matrix.
    ComplexMatrix image_of_unit(int i, int j) const;

    /// Largest singular value of the Choi matrix; the scale for every
    /// residual-type tolerance.
    double scale() const { return scale_; }

private:
    int dim_in_;
    int dim_out_;
    ComplexMatrix choi_;
    double scale_;
};

/// Phi(a) = Tr_in[C (a^t (x) 1_m)] = sum_ij a_ij Phi(e_ij).
ComplexMatrix apply_map(const MapOperator& phi, const ComplexMatrix& a);

/// images[i * n + j] = Phi(e_ij), each m x m; n^2 entries.
MapOperator from_apply_table(int dim_in, const std::vector<ComplexMatrix>& images, const ToleranceConfig& tol = {});

/// a -> V^dagger a V, or a -> V^dagger a^t V when `transposed`; V is n x m.
MapOperator from_conjugation(const ComplexMatrix& v, bool transposed);

/// a -> sum_k K_k a K_k^dagger, each K_k m x n.
MapOperator from_kraus(const std::vector<ComplexMatrix>& kraus);

MapOperator identity_map(int n);
MapOperator transpose_map(int n);
/// a -> Tr(a) 1_m
MapOperator trace_map(int n, int m);
/// a -> sum_i a_ii e_ii
MapOperator decohering_map(int n);
/// a -> phi1(a) (+) phi2(a), block diagonal output.
MapOperator direct_sum(const MapOperator& phi1, const MapOperator& phi2);
MapOperator scaled(const MapOperator& phi, double factor);

/// Hilbert-Schmidt adjoint: Tr(b^dagger Phi(a)) = Tr(Phi*(b)^dagger a).
MapOperator adjoint_map(const MapOperator& phi);

/// Phi(a) = V^dagger Phi1(a) V with Phi1 unital on H_Phi = Im Phi(1).
struct NormalForm {
    ComplexMatrix bridge;      // V, image_dim x m
    MapOperator unital_part;   // Phi1 : B(C^n) -> B(H_Phi)
    int image_dim;
    ComplexMatrix image_basis; // m x image_dim isometry onto H_Phi
};

/// Throws ZeroMap when Phi(1) = 0. When Phi(1) has full rank the image basis
/// is the standard one, so the bridge is Phi(1)^{1/2}.
NormalForm unital_normalization(const MapOperator& phi, const ToleranceConfig& tol = {});

/// Choi matrix PSD within rank tolerance.
bool is_completely_positive(const MapOperator& phi, const ToleranceConfig& tol = {});

struct PositivityReport {
    bool positive;
    double worst_value;          // min eigenvalue of Phi(|x><x|) found
    ComplexVector worst_input;   // the x attaining it
};

/// Sampling plus alternating-eigenvector descent from the worst sample.
/// Returns positive iff worst_value >= -residual_rel_tol * scale.
PositivityReport is_positive_heuristic(const MapOperator& phi, int samples, const ToleranceConfig& tol = {},
                                       std::uint64_t seed = 0);

}  // namespace expocert

#endif  // EXPOCERT_MAP_MODEL_HPP
