#include "doctest.h"

#include "expocert/theorem_lab.hpp"

using namespace expocert;

namespace {

double zero_residual(const MapOperator& phi, const ZeroPair& p) {
    const ComplexVector xb = p.x.conjugate();
    return (apply_map(phi, outer(xb, xb)) * p.h).norm();
}

}  // namespace

TEST_CASE("weak and strong vectors") {
    ZeroPair p;
    p.x = ComplexVector(2);
    p.x << Complex(0, 1), 0.0;
    p.h = ComplexVector::Unit(3, 1);
    const ComplexVector w = weak_vector(p);
    REQUIRE(w.size() == 6);
    CHECK(w(1) == Complex(0, 1));
    const ComplexVector s = strong_vector(p);
    REQUIRE(s.size() == 12);
    // conj(i) * i = 1 at index (0, 0, 1).
    CHECK(s(1) == Complex(1, 0));
    CHECK(s.norm() == doctest::Approx(1.0));
}

TEST_CASE("ZeroSet keeps its lists aligned") {
    ZeroSet zs(2, 2);
    CHECK(zs.empty());
    CHECK(weak_span_dim(zs) == 0);
    CHECK(strong_span_dim(zs) == 0);
    zs.add({ComplexVector::Unit(2, 0), ComplexVector::Unit(2, 1), 0.0});
    zs.add({ComplexVector::Unit(2, 1), ComplexVector::Unit(2, 0), 0.0});
    CHECK(zs.size() == 2);
    CHECK(zs.weak_vectors().size() == 2);
    CHECK(zs.strong_vectors().size() == 2);
    CHECK(weak_span_dim(zs) == 2);
    CHECK_THROWS_AS(zs.add({ComplexVector::Unit(3, 0), ComplexVector::Unit(2, 0), 0.0}), DimensionMismatch);
}

TEST_CASE("strong_span_ceiling") {
    CHECK(strong_span_ceiling(transpose_map(2)) == 6);
    CHECK(strong_span_ceiling(trace_map(2, 3)) == 12 - 3);
    ComplexMatrix v = ComplexMatrix::Zero(2, 3);
    v(0, 0) = 1.0;
    CHECK(strong_span_ceiling(from_conjugation(v, true)) == 11);
}

TEST_CASE("local_zero_search on the transpose map") {
    const MapOperator phi = transpose_map(2);
    const ZeroSearchResult r = local_zero_search(phi, ComplexVector::Unit(2, 0));
    REQUIRE(r.converged);
    CHECK(r.best.residual < 1e-10);
    CHECK(r.best.x.norm() == doctest::Approx(1.0));
    CHECK(r.best.h.norm() == doctest::Approx(1.0));
    // Phi(|conj x><conj x|) = |x><x|, so the zero condition is <x|h> = 0.
    CHECK(std::abs(r.best.x.dot(r.best.h)) < 1e-10);
}

TEST_CASE("local_zero_search from random starts on the transpose map") {
    const MapOperator phi = transpose_map(3);
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
        const ComplexVector x0 = random_unit_vector(3, rng);
        const ComplexVector h0 = random_unit_vector(3, rng);
        const ZeroSearchResult r = local_zero_search(phi, x0, {}, t % 2 ? std::optional<ComplexVector>(h0) : std::nullopt);
        REQUIRE(r.converged);
        CHECK(std::abs(r.best.x.dot(r.best.h)) < 1e-10);
    }
}

TEST_CASE("local_zero_search on a strictly positive map does not converge") {
    const MapOperator phi = trace_map(2, 2);
    Rng rng(5);
    const ZeroSearchResult r = local_zero_search(phi, random_unit_vector(2, rng));
    CHECK_FALSE(r.converged);
    CHECK(r.objective >= 1.0 - 1e-12);
    CHECK(r.best.residual >= 1.0 - 1e-12);
}

TEST_CASE("local_zero_search on a rank-2 transposed conjugation map") {
    Rng rng(6);
    const ComplexMatrix v = random_rank_matrix(2, 3, 2, rng);
    const MapOperator phi = from_conjugation(v, true);
    const SvdResult dec = svd(v);
    int converged = 0;
    for (int t = 0; t < 20; ++t) {
        const ZeroSearchResult r = local_zero_search(phi, random_unit_vector(2, rng));
        if (!r.converged) continue;
        ++converged;
        // Normal frame: x' = U^dagger x, h' = S W^dagger h; zero iff sum conj(x'_i) h'_i = 0.
        const ComplexVector xp = dec.left_vectors.adjoint() * r.best.x;
        ComplexVector hp = dec.right_vectors.adjoint() * r.best.h;
        for (int i = 0; i < 2; ++i) hp(i) *= dec.singular_values(i);
        CHECK(std::abs(std::conj(xp(0)) * hp(0) + std::conj(xp(1)) * hp(1)) < 1e-9 * dec.singular_values(0));
        CHECK(zero_residual(phi, r.best) < 1e-9 * phi.scale());
    }
    CHECK(converged > 0);
}

TEST_CASE("local_zero_search objective never increases") {
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + t % 3;
        const int m = 2 + (t / 3) % 3;
        const MapOperator phi = t % 2 ? random_decomposable_map(n, m, 1, rng) : trace_map(n, m);
        const ComplexVector x0 = random_unit_vector(n, rng);
        const ComplexVector h0 = random_unit_vector(m, rng);
        for (const bool use_h : {false, true}) {
            const ZeroSearchResult r = local_zero_search(phi, x0, {}, use_h ? std::optional<ComplexVector>(h0) : std::nullopt);
            REQUIRE(!r.objective_trace.empty());
            for (std::size_t k = 1; k < r.objective_trace.size(); ++k)
                CHECK(r.objective_trace[k] <= r.objective_trace[k - 1] + 1e-12 * phi.scale());
        }
    }
}

TEST_CASE("local_zero_search rejects bad starts") {
    const MapOperator phi = transpose_map(2);
    CHECK_THROWS_AS(local_zero_search(phi, ComplexVector::Zero(2)), InvalidArgument);
    CHECK_THROWS_AS(local_zero_search(phi, ComplexVector::Unit(3, 0)), DimensionMismatch);
    CHECK_THROWS_AS(local_zero_search(phi, ComplexVector::Unit(2, 0), {}, ComplexVector(ComplexVector::Zero(2))),
                    InvalidArgument);
    CHECK_THROWS_AS(local_zero_search(phi, ComplexVector::Unit(2, 0), {}, ComplexVector(ComplexVector::Unit(3, 0))),
                    DimensionMismatch);
}

TEST_CASE("harvest_zeros examples") {
    const ZeroSet tr = harvest_zeros(transpose_map(2), 0);
    CHECK(strong_span_dim(tr) == 6);
    CHECK(weak_span_dim(tr) == 4);
    CHECK(tr.saturated);
    for (const auto& p : tr.pairs()) CHECK(p.residual <= 1e-9 * transpose_map(2).scale());

    const ZeroSet none = harvest_zeros(trace_map(2, 2), 0);
    CHECK(none.empty());
    CHECK(none.saturated);

    const ZeroSet id = harvest_zeros(identity_map(2), 0);
    CHECK(strong_span_dim(id) == 6);
    CHECK(weak_span_dim(id) == 3);
}

TEST_CASE("harvest_zeros pair invariants") {
    Rng rng(8);
    const MapOperator phi = from_conjugation(random_rank_matrix(3, 3, 2, rng), true);
    const ZeroSet zs = harvest_zeros(phi, 3);
    for (const auto& p : zs.pairs()) {
        CHECK(p.x.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p.h.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p.residual <= 1e-9 * phi.scale());
        CHECK(zero_residual(phi, p) == doctest::Approx(p.residual).epsilon(1e-6));
    }
}

TEST_CASE("harvest_zeros is deterministic and scale invariant") {
    Rng rng(9);
    for (int t = 0; t < 6; ++t) {
        const int n = 2 + t % 2;
        const int m = 2 + t % 3;
        const MapOperator phi = from_conjugation(random_rank_matrix(n, m, 1 + t % 2, rng), true);
        const ZeroSet a = harvest_zeros(phi, 42);
        const ZeroSet b = harvest_zeros(phi, 42);
        const ZeroSet c = harvest_zeros(scaled(phi, 3.0), 42);
        CHECK(a.size() == b.size());
        CHECK(strong_span_dim(a) == strong_span_dim(c));
        CHECK(weak_span_dim(a) == weak_span_dim(c));
    }
}

TEST_CASE("analytic_zeros_conjugation examples") {
    const ToleranceConfig tol;
    const ZeroSet id = analytic_zeros_conjugation(ComplexMatrix::Identity(2, 2), true, tol);
    CHECK(strong_span_dim(id) == 6);
    CHECK(id.saturated);

    Rng rng(10);
    CHECK(strong_span_dim(analytic_zeros_conjugation(random_rank_matrix(2, 3, 2, rng), true)) == 10);
    CHECK(strong_span_dim(analytic_zeros_conjugation(random_rank_matrix(2, 2, 1, rng), true)) == 5);
    CHECK(strong_span_dim(analytic_zeros_conjugation(random_rank_matrix(2, 3, 1, rng), true)) == 9);

    CHECK_THROWS_AS(analytic_zeros_conjugation(ComplexMatrix::Zero(2, 2), true), ZeroOperator);
}

TEST_CASE("analytic zeros are exact") {
    Rng rng(11);
    for (const bool transposed : {true, false})
        for (int r = 1; r <= 3; ++r) {
            const ComplexMatrix v = random_rank_matrix(3, 4, r, rng);
            const MapOperator phi = from_conjugation(v, transposed);
            const ZeroSet zs = analytic_zeros_conjugation(v, transposed);
            REQUIRE(!zs.empty());
            for (const auto& p : zs.pairs()) CHECK(zero_residual(phi, p) <= 1e-12 * phi.scale());
        }
}

TEST_CASE("untransposed conjugation has the same zero count") {
    // Identity map: n^3 - n.
    for (int n : {2, 3}) {
        const ZeroSet zs = analytic_zeros_conjugation(ComplexMatrix::Identity(n, n), false);
        CHECK(strong_span_dim(zs) == n * n * n - n);
        CHECK(strong_span_dim(harvest_zeros(identity_map(n), 1)) == n * n * n - n);
    }
}

TEST_CASE("weak span of a rank-1 conjugation map is short") {
    Rng rng(12);
    const MapOperator phi = from_conjugation(random_rank_matrix(2, 2, 1, rng), true);
    const int w = weak_span_dim(harvest_zeros(phi, 0));
    CHECK(w < 4);
    CHECK(w > 0);
}

TEST_CASE("kernel ceiling and harvest equals analytic") {
    Rng rng(13);
    for (int n = 2; n <= 3; ++n)
        for (int m = 2; m <= 4; ++m)
            for (int r = 1; r <= std::min(n, m); ++r) {
                const ComplexMatrix v = random_rank_matrix(n, m, r, rng);
                const MapOperator phi = from_conjugation(v, true);
                const int h = strong_span_dim(harvest_zeros(phi, std::uint64_t(n * 100 + m * 10 + r)));
                const int a = strong_span_dim(analytic_zeros_conjugation(v, true));
                CHECK(h == a);
                CHECK(a <= strong_span_ceiling(phi));
            }
}

TEST_CASE("positive-semidefinite zeros span the same space as rank-one zeros") {
    // For a PSD a with Phi(a) h = 0 every rank-one component is itself a zero,
    // so vec(a) (x) h lies in the span of the strong vectors.
    Rng rng(14);
    const ComplexMatrix v = random_rank_matrix(3, 3, 2, rng);
    const MapOperator phi = from_conjugation(v, true);
    const ZeroSet zs = analytic_zeros_conjugation(v, true);
    const int base = strong_span_dim(zs);
    std::vector<ComplexVector> extended = zs.strong_vectors();
    for (int t = 0; t < 30; ++t) {
        const ComplexVector h = random_unit_vector(3, rng);
        const auto fibre = kernel_basis(apply_map(adjoint_map(phi), outer(h, h)));
        if (fibre.empty()) continue;
        ComplexMatrix a = ComplexMatrix::Zero(3, 3);
        for (const auto& k : fibre) {
            const ComplexVector c = ginibre(1, 1, rng)(0, 0) * k;
            a += outer(c, c);
        }
        REQUIRE((apply_map(phi, a) * h).norm() < 1e-10 * phi.scale() * (1.0 + a.norm()));
        ComplexVector va(9);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) va(i * 3 + j) = a(i, j);
        extended.push_back(kron(va, h));
    }
    CHECK(span_dimension(extended) == base);
}
