#ifndef EXPOCERT_THEOREM_LAB_HPP
#define EXPOCERT_THEOREM_LAB_HPP

#include "expocert/certificates.hpp"
#include "expocert/random.hpp"

#include <cstdint>
#include <string>
#include <utility>

namespace expocert {

struct RankInfeasible : Error {
    using Error::Error;
};

struct RankDeficient : Error {
    using Error::Error;
};

enum class Agreement { Stated, Derived, Both, Neither };

const char* to_string(Agreement a);
Agreement agreement_from_string(const std::string& s);

/// One cell of a dimension experiment on Phi(a) = V^dagger a^t V.
struct SweepReport {
    int n = 0;
    int m = 0;
    int rank_v = 0;
    int measured_strong_dim = 0;   // analytic enumeration
    int harvest_strong_dim = 0;    // numeric multi-start harvest
    int oracle_strong_dim = 0;     // brute-force oracle at the doubled grid
    bool oracle_stable = false;    // oracle unchanged when its grid doubled
    int formula_stated = 0;        // as printed in the proposition
    int formula_derived = 0;       // as derived in its proof
    int strong_target = 0;         // n^2 m - rank
    Agreement agrees_with = Agreement::Neither;
    std::uint64_t seed = 0;

    /// Analytic, harvest and a stable oracle all report the same dimension.
    bool cross_checked() const {
        return oracle_stable && measured_strong_dim == harvest_strong_dim && measured_strong_dim == oracle_strong_dim;
    }

    bool operator==(const SweepReport&) const = default;
};

Agreement classify_agreement(int measured, int stated, int derived);

/// n = 2, rank-2 V, checks the 4m - 2 count. Both printed formulas equal 4m-2.
SweepReport run_theorem_main_check(int m, std::uint64_t seed, const ToleranceConfig& tol = {});

/// Random V (n x m) of exact rank `rank_v`; throws RankInfeasible unless
/// 1 <= rank_v <= min(n, m).
SweepReport run_dimension_sweep(int n, int m, int rank_v, std::uint64_t seed, const ToleranceConfig& tol = {});

struct DecomposableWitness {
    ComplexMatrix q;  // sum_ij |i><j| (x) V^t|i><j|conj(V), rank-one PSD
    ComplexMatrix w;  // partial transpose of q on the second factor
};

/// Throws RankDeficient when rank V < 2.
DecomposableWitness build_decomposable_witness(const ComplexMatrix& v, const ToleranceConfig& tol = {});

struct ImageInclusionReport {
    int trials = 0;
    double worst_inclusion_residual = 0.0;  // ||(1 - P_{Im Phi(a)}) Phi(b)|| / scale
    double worst_equality_residual = 0.0;   // ||P_{Im Phi(a1)} - P_{Im Phi(a2)}||
    bool holds = false;
};

/// b random PSD of unit trace, a random PSD + 0.1 * 1 (strictly positive).
ImageInclusionReport check_image_inclusion(const MapOperator& phi, int trials, std::uint64_t seed,
                                           const ToleranceConfig& tol = {});

struct OracleResult {
    int dim = 0;          // at grid_size samples
    int doubled_dim = 0;  // at 2 grid_size samples
    bool stable() const { return dim == doubled_dim; }
};

/**
 * Brute-force strong dimension of a positive map. For fixed x the h with
 * Phi(|conj x><conj x|) h = 0 form ker Phi(|conj x><conj x|); for fixed h the
 * admissible conj x form ker Phi*(|h><h|) (a PSD matrix). The oracle samples
 * grid_size random x and grid_size random h, collects every generator of each
 * fibre, and returns the span dimension, repeating with twice the samples.
 */
OracleResult brute_force_strong_dim(const MapOperator& phi, int grid_size, std::uint64_t seed,
                                    const ToleranceConfig& tol = {});

OracleResult brute_force_strong_dim_oracle(const ComplexMatrix& v, bool transposed, int grid_size,
                                           const ToleranceConfig& tol = {}, std::uint64_t seed = 1);

/// Random unital map with trivial commutant: a random CP map with `kraus`
/// Ginibre operators, unitally normalized, rejection-sampled on commutant
/// dimension 1. Throws InvalidArgument after 200 rejected draws.
MapOperator random_irreducible_unital_map(int n, int m, int kraus, Rng& rng, const ToleranceConfig& tol = {});

MapOperator random_cp_map(int n, int m, int kraus, Rng& rng);

/// Psi1 + Psi2 o t with Ginibre Kraus operators: positive, generally not CP.
MapOperator random_decomposable_map(int n, int m, int kraus, Rng& rng);

}  // namespace expocert

#endif  // EXPOCERT_THEOREM_LAB_HPP
