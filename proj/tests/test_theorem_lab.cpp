#include "doctest.h"

#include "expocert/theorem_lab.hpp"

using namespace expocert;

TEST_CASE("classify_agreement") {
    CHECK(classify_agreement(6, 6, 6) == Agreement::Both);
    CHECK(classify_agreement(6, 6, 7) == Agreement::Stated);
    CHECK(classify_agreement(7, 6, 7) == Agreement::Derived);
    CHECK(classify_agreement(8, 6, 7) == Agreement::Neither);
    for (auto a : {Agreement::Stated, Agreement::Derived, Agreement::Both, Agreement::Neither})
        CHECK(agreement_from_string(to_string(a)) == a);
    CHECK_THROWS_AS(agreement_from_string("Maybe"), InvalidArgument);
}

TEST_CASE("run_theorem_main_check examples") {
    for (auto [m, want] : {std::pair{2, 6}, {3, 10}, {5, 18}}) {
        const SweepReport r = run_theorem_main_check(m, 0);
        CHECK(r.n == 2);
        CHECK(r.rank_v == 2);
        CHECK(r.measured_strong_dim == want);
        CHECK(r.harvest_strong_dim == want);
        CHECK(r.oracle_strong_dim == want);
        CHECK(r.oracle_stable);
        CHECK(r.formula_stated == want);
        CHECK(r.agrees_with == Agreement::Both);
    }
    CHECK_THROWS_AS(run_theorem_main_check(1, 0), InvalidArgument);
}

TEST_CASE("run_dimension_sweep examples") {
    const SweepReport a = run_dimension_sweep(2, 2, 2, 0);
    CHECK(a.measured_strong_dim == 6);
    CHECK(a.formula_stated == 6);
    CHECK(a.formula_derived == 6);
    CHECK(a.agrees_with == Agreement::Both);

    const SweepReport b = run_dimension_sweep(3, 4, 3, 0);
    CHECK(b.formula_derived == 33);
    CHECK(b.formula_stated == 32);
    CHECK(b.strong_target == 33);
    CHECK(b.cross_checked());
    CHECK(b.agrees_with != Agreement::Neither);

    const SweepReport c = run_dimension_sweep(2, 3, 1, 0);
    CHECK(c.formula_derived == 9);
    CHECK(c.formula_stated == 7);
    CHECK(c.strong_target == 11);
    CHECK(c.cross_checked());
    CHECK(c.agrees_with != Agreement::Neither);

    CHECK_THROWS_AS(run_dimension_sweep(2, 3, 3, 0), RankInfeasible);
    CHECK_THROWS_AS(run_dimension_sweep(2, 3, 0, 0), RankInfeasible);
}

TEST_CASE("sweep cells are deterministic") {
    CHECK(run_dimension_sweep(3, 2, 1, 5) == run_dimension_sweep(3, 2, 1, 5));
}

TEST_CASE("build_decomposable_witness examples") {
    const DecomposableWitness id = build_decomposable_witness(ComplexMatrix::Identity(2, 2));
    ComplexVector omega = ComplexVector::Zero(4);
    omega(0) = omega(3) = 1.0;
    CHECK((id.q - outer(omega, omega)).norm() < 1e-14);
    ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) swap(i * 2 + j, j * 2 + i) = 1.0;
    CHECK((id.w - swap).norm() < 1e-14);

    Rng rng(1);
    const ComplexMatrix v = random_rank_matrix(2, 3, 2, rng);
    const DecomposableWitness d = build_decomposable_witness(v);
    const HermitianEigen e = hermitian_eigen(d.q);
    CHECK(e.values.head(5).cwiseAbs().maxCoeff() < 1e-10 * e.values(5));
    // Schmidt rank of the top eigenvector = rank of its 2 x 3 reshaping.
    const ComplexVector psi = e.vectors.col(5);
    ComplexMatrix coeff(2, 3);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 3; ++k) coeff(i, k) = psi(i * 3 + k);
    CHECK(numerical_rank(coeff) == 2);

    // The witness is the Choi matrix of a -> V^dagger a^t V.
    CHECK((d.w - from_conjugation(v, true).choi()).norm() < 1e-12 * d.w.norm());

    CHECK_THROWS_AS(build_decomposable_witness(random_rank_matrix(2, 3, 1, rng)), RankDeficient);
}

TEST_CASE("check_image_inclusion examples") {
    const ImageInclusionReport id = check_image_inclusion(identity_map(3), 20, 0);
    CHECK(id.holds);
    CHECK(id.trials == 20);

    Rng rng(2);
    const MapOperator r1 = from_conjugation(random_rank_matrix(3, 3, 1, rng), true);
    const ImageInclusionReport one = check_image_inclusion(r1, 20, 1);
    CHECK(one.holds);
    CHECK(one.worst_inclusion_residual <= 1e-9);

    const ImageInclusionReport cp = check_image_inclusion(random_cp_map(3, 4, 3, rng), 100, 2);
    CHECK(cp.holds);
}

TEST_CASE("brute-force oracle examples") {
    const OracleResult t = brute_force_strong_dim_oracle(ComplexMatrix::Identity(2, 2), true, 200);
    CHECK(t.dim == 6);
    CHECK(t.stable());

    Rng rng(3);
    const OracleResult r1 = brute_force_strong_dim_oracle(random_rank_matrix(2, 2, 1, rng), true, 20);
    CHECK(r1.doubled_dim == 5);
    CHECK(r1.stable());

    for (int n : {2, 3}) {
        const OracleResult id = brute_force_strong_dim_oracle(ComplexMatrix::Identity(n, n), false, 4 * n * n);
        CHECK(id.doubled_dim == n * n * n - n);
        CHECK(id.stable());
        CHECK(strong_span_dim(harvest_zeros(identity_map(n), 0)) == id.doubled_dim);
    }

    CHECK(brute_force_strong_dim(trace_map(2, 2), 10, 0).doubled_dim == 0);
    CHECK_THROWS_AS(brute_force_strong_dim(trace_map(2, 2), 0, 0), InvalidArgument);
}

TEST_CASE("random map generators") {
    Rng rng(4);
    for (int t = 0; t < 5; ++t) {
        const MapOperator cp = random_cp_map(2, 3, 2, rng);
        CHECK(is_completely_positive(cp));
        const MapOperator dec = random_decomposable_map(2, 3, 1, rng);
        CHECK(is_positive_heuristic(dec, 50).positive);
        const MapOperator u = random_irreducible_unital_map(2, 3, 2, rng);
        CHECK(is_irreducible(u));
        const ComplexMatrix one = apply_map(u, ComplexMatrix(ComplexMatrix::Identity(2, 2)));
        CHECK((one - ComplexMatrix::Identity(3, 3)).norm() < 1e-9);
    }
}
