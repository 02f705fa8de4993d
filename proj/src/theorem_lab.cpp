#include "expocert/theorem_lab.hpp"

namespace expocert {

const char* to_string(Agreement a) {
    switch (a) {
        case Agreement::Stated: return "Stated";
        case Agreement::Derived: return "Derived";
        case Agreement::Both: return "Both";
        case Agreement::Neither: return "Neither";
    }
    return "Neither";
}

Agreement agreement_from_string(const std::string& s) {
    if (s == "Stated") return Agreement::Stated;
    if (s == "Derived") return Agreement::Derived;
    if (s == "Both") return Agreement::Both;
    if (s == "Neither") return Agreement::Neither;
    throw InvalidArgument("unknown agreement label: " + s);
}

Agreement classify_agreement(int measured, int stated, int derived) {
    const bool s = measured == stated;
    const bool d = measured == derived;
    if (s && d) return Agreement::Both;
    if (s) return Agreement::Stated;
    if (d) return Agreement::Derived;
    return Agreement::Neither;
}

SweepReport run_dimension_sweep(int n, int m, int rank_v, std::uint64_t seed, const ToleranceConfig& tol) {
    if (n < 1 || m < 1 || rank_v < 1 || rank_v > std::min(n, m))
        throw RankInfeasible("run_dimension_sweep: need 1 <= rank <= min(n, m)");
    Rng rng(seed);
    const ComplexMatrix v = random_rank_matrix(n, m, rank_v, rng, tol);
    const MapOperator phi = from_conjugation(v, true);

    SweepReport rep;
    rep.n = n;
    rep.m = m;
    rep.rank_v = rank_v;
    rep.seed = seed;
    rep.measured_strong_dim = strong_span_dim(analytic_zeros_conjugation(v, true, tol), tol);
    rep.harvest_strong_dim = strong_span_dim(harvest_zeros(phi, seed, tol), tol);
    const OracleResult oracle = brute_force_strong_dim(phi, n * n * m, seed, tol);
    rep.oracle_strong_dim = oracle.doubled_dim;
    rep.oracle_stable = oracle.stable();
    if (rank_v > 1) {
        rep.formula_stated = m * (n * n - 1);
        rep.formula_derived = n * n * m - n;
    } else {
        rep.formula_stated = m * n * n - (2 * m - 1);
        rep.formula_derived = n * n * m - (2 * n - 1);
    }
    rep.strong_target = n * n * m - rank_v;
    rep.agrees_with = classify_agreement(rep.measured_strong_dim, rep.formula_stated, rep.formula_derived);
    return rep;
}

SweepReport run_theorem_main_check(int m, std::uint64_t seed, const ToleranceConfig& tol) {
    if (m < 2) throw InvalidArgument("run_theorem_main_check: m must be >= 2");
    SweepReport rep = run_dimension_sweep(2, m, 2, seed, tol);
    rep.formula_stated = 4 * m - 2;
    rep.formula_derived = 4 * (m - 2) + 6;
    rep.agrees_with = classify_agreement(rep.measured_strong_dim, rep.formula_stated, rep.formula_derived);
    return rep;
}

DecomposableWitness build_decomposable_witness(const ComplexMatrix& v, const ToleranceConfig& tol) {
    if (numerical_rank(v, tol) < 2) throw RankDeficient("build_decomposable_witness: V must have rank >= 2");
    const Eigen::Index n = v.rows();
    const Eigen::Index m = v.cols();
    // V^t|i> is row i of V read as a column.
    ComplexVector psi = ComplexVector::Zero(n * m);
    for (Eigen::Index i = 0; i < n; ++i) psi.segment(i * m, m) = v.row(i).transpose();
    DecomposableWitness out;
    out.q = outer(psi, psi);
    out.w = out.q;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) out.w.block(i * m, j * m, m, m) = out.q.block(i * m, j * m, m, m).transpose();
    return out;
}

ImageInclusionReport check_image_inclusion(const MapOperator& phi, int trials, std::uint64_t seed,
                                           const ToleranceConfig& tol) {
    const int n = phi.dim_in();
    const int m = phi.dim_out();
    const double scale = phi.scale() > 0.0 ? phi.scale() : 1.0;
    const ComplexMatrix id_n = ComplexMatrix::Identity(n, n);
    const ComplexMatrix id_m = ComplexMatrix::Identity(m, m);
    Rng rng(seed);
    std::uniform_int_distribution<int> rank_dist(1, n);

    ImageInclusionReport rep;
    rep.trials = trials;
    for (int t = 0; t < trials; ++t) {
        const ComplexMatrix b = random_psd(n, rank_dist(rng), rng);
        const ComplexMatrix a1 = random_psd(n, n, rng) + 0.1 * id_n;
        const ComplexMatrix a2 = random_psd(n, rank_dist(rng), rng) + 0.1 * id_n;
        const ComplexMatrix p1 = range_projector(apply_map(phi, a1), tol);
        const ComplexMatrix p2 = range_projector(apply_map(phi, a2), tol);
        rep.worst_inclusion_residual =
            std::max(rep.worst_inclusion_residual, ((id_m - p1) * apply_map(phi, b)).norm() / scale);
        rep.worst_equality_residual = std::max(rep.worst_equality_residual, (p1 - p2).norm());
    }
    rep.holds = rep.worst_inclusion_residual <= tol.residual_rel_tol && rep.worst_equality_residual <= tol.residual_rel_tol;
    return rep;
}

namespace {

void sample_fibres(const MapOperator& phi, const MapOperator& adj, int count, Rng& rng, const ToleranceConfig& tol,
                   std::vector<ComplexVector>& out) {
    const int n = phi.dim_in();
    const int m = phi.dim_out();
    for (int s = 0; s < count; ++s) {
        const ComplexVector x = random_unit_vector(n, rng);
        const ComplexVector xb = x.conjugate();
        const ComplexVector xx = kron(xb, x);
        for (const auto& h : kernel_basis(apply_map(phi, outer(xb, xb)), tol)) out.push_back(kron(xx, h));

        const ComplexVector h = random_unit_vector(m, rng);
        const std::vector<ComplexVector> fibre = kernel_basis(apply_map(adj, outer(h, h)), tol);
        for (const auto& ka : fibre)
            for (const auto& kb : fibre) out.push_back(kron(kron(ka, ComplexVector(kb.conjugate())), h));
    }
}

}  // namespace

OracleResult brute_force_strong_dim(const MapOperator& phi, int grid_size, std::uint64_t seed, const ToleranceConfig& tol) {
    if (grid_size < 1) throw InvalidArgument("brute_force_strong_dim: grid_size must be >= 1");
    const MapOperator adj = adjoint_map(phi);
    Rng rng(seed);
    std::vector<ComplexVector> gens;
    OracleResult res;
    sample_fibres(phi, adj, grid_size, rng, tol, gens);
    res.dim = span_dimension(gens, tol);
    sample_fibres(phi, adj, grid_size, rng, tol, gens);
    res.doubled_dim = span_dimension(gens, tol);
    return res;
}

OracleResult brute_force_strong_dim_oracle(const ComplexMatrix& v, bool transposed, int grid_size,
                                           const ToleranceConfig& tol, std::uint64_t seed) {
    return brute_force_strong_dim(from_conjugation(v, transposed), grid_size, seed, tol);
}

MapOperator random_cp_map(int n, int m, int kraus, Rng& rng) {
    std::vector<ComplexMatrix> ops;
    for (int k = 0; k < kraus; ++k) ops.push_back(ginibre(m, n, rng));
    return from_kraus(ops);
}

MapOperator random_decomposable_map(int n, int m, int kraus, Rng& rng) {
    const MapOperator cp = random_cp_map(n, m, kraus, rng);
    const MapOperator co = random_cp_map(n, m, kraus, rng);
    std::vector<ComplexMatrix> images;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) images.push_back(cp.image_of_unit(i, j) + co.image_of_unit(j, i));
    return from_apply_table(n, images);
}

MapOperator random_irreducible_unital_map(int n, int m, int kraus, Rng& rng, const ToleranceConfig& tol) {
    // With n * kraus <= m the map is unitarily a -> a (x) 1 on part of the
    // output and can never be irreducible, so sampling is capped.
    for (int attempt = 0; attempt < 200; ++attempt) {
        const NormalForm nf = unital_normalization(random_cp_map(n, m, kraus, rng), tol);
        if (nf.image_dim != m) continue;
        if (is_irreducible(nf.unital_part, tol)) return nf.unital_part;
    }
    throw InvalidArgument("random_irreducible_unital_map: no irreducible sample in 200 draws");
}

}  // namespace expocert
