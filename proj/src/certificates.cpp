#include "expocert/certificates.hpp"

namespace expocert {

const char* to_string(Property p) { return p == Property::Optimal ? "Optimal" : "Exposed"; }

const char* to_string(Verdict v) { return v == Verdict::Certified ? "Certified" : "Inconclusive"; }

namespace {

// Hermitian basis of M_n: e_ii, e_ij + e_ji, i(e_ij - e_ji).
std::vector<ComplexMatrix> hermitian_generators(int n) {
    std::vector<ComplexMatrix> out;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            ComplexMatrix a = ComplexMatrix::Zero(n, n);
            if (i == j) {
                a(i, i) = 1.0;
                out.push_back(a);
                continue;
            }
            a(i, j) = 1.0;
            a(j, i) = 1.0;
            out.push_back(a);
            ComplexMatrix b = ComplexMatrix::Zero(n, n);
            b(i, j) = Complex(0.0, 1.0);
            b(j, i) = Complex(0.0, -1.0);
            out.push_back(b);
        }
    return out;
}

std::vector<ComplexMatrix> hermitian_images(const MapOperator& phi) {
    std::vector<ComplexMatrix> imgs;
    for (const auto& g : hermitian_generators(phi.dim_in())) imgs.push_back(apply_map(phi, g));
    return imgs;
}

ComplexVector vec_rows(const ComplexMatrix& x) {
    ComplexVector v(x.size());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j) v(i * x.cols() + j) = x(i, j);
    return v;
}

ComplexMatrix unvec_rows(const ComplexVector& v, Eigen::Index m) {
    ComplexMatrix x(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) x(i, j) = v(i * m + j);
    return x;
}

const char* kPositivityNote =
    "valid only if the input map is positive; positivity was checked by sampling and local descent, not decided exactly";

}  // namespace

std::vector<ComplexMatrix> commutant_basis(const MapOperator& phi, const ToleranceConfig& tol) {
    const int m = phi.dim_out();
    const std::vector<ComplexMatrix> imgs = hermitian_images(phi);
    const ComplexMatrix id = ComplexMatrix::Identity(m, m);
    // Row-major vec: vec(A X) = (A (x) 1) vec X, vec(X A) = (1 (x) A^t) vec X.
    ComplexMatrix system(Eigen::Index(imgs.size()) * m * m, m * m);
    for (std::size_t g = 0; g < imgs.size(); ++g)
        system.middleRows(Eigen::Index(g) * m * m, m * m) = kron(imgs[g], id) - kron(id, ComplexMatrix(imgs[g].transpose()));

    std::vector<ComplexMatrix> basis;
    for (const auto& k : kernel_basis(system, tol)) basis.push_back(unvec_rows(k, m));
    return basis;
}

bool is_irreducible(const MapOperator& phi, const ToleranceConfig& tol) { return commutant_basis(phi, tol).size() == 1; }

bool is_irreducible_on_image(const MapOperator& phi, const ToleranceConfig& tol) {
    const int n = phi.dim_in();
    const ComplexMatrix p = range_projector(apply_map(phi, ComplexMatrix::Identity(n, n)), tol);
    std::vector<ComplexVector> compressed;
    for (const auto& x : commutant_basis(phi, tol)) compressed.push_back(vec_rows(p * x * p));
    return span_dimension(compressed, tol) == 1;
}

IntertwinerSpace intertwiner_space(const MapOperator& phi, const ToleranceConfig& tol) {
    const int m = phi.dim_out();
    const std::vector<ComplexMatrix> imgs = hermitian_images(phi);
    const Eigen::Index block = Eigen::Index(m) * m;
    const Eigen::Index unknowns = 2 * block;

    // Column c is F(X_c) for the real basis X_c = e_kl (c < m^2) or i e_kl,
    // with F(X) = (X A_g - A_g X^dagger)_g split into real and imaginary parts.
    RealMatrix system(2 * block * Eigen::Index(imgs.size()), unknowns);
    for (Eigen::Index c = 0; c < unknowns; ++c) {
        ComplexMatrix x = ComplexMatrix::Zero(m, m);
        const Eigen::Index idx = c % block;
        x(idx / m, idx % m) = c < block ? Complex(1.0) : Complex(0.0, 1.0);
        for (std::size_t g = 0; g < imgs.size(); ++g) {
            const ComplexVector r = vec_rows(x * imgs[g] - imgs[g] * x.adjoint());
            const Eigen::Index off = 2 * block * Eigen::Index(g);
            system.col(c).segment(off, block) = r.real();
            system.col(c).segment(off + block, block) = r.imag();
        }
    }

    IntertwinerSpace out{0, {}};
    for (const auto& k : real_kernel_basis(system, tol)) {
        ComplexMatrix x(m, m);
        for (Eigen::Index idx = 0; idx < block; ++idx) x(idx / m, idx % m) = Complex(k(idx), k(idx + block));
        out.basis.push_back(x);
    }
    out.real_dimension = int(out.basis.size());
    return out;
}

Certificate certify_optimal(const MapOperator& phi, const ZeroSet& zs, const ToleranceConfig& tol) {
    Certificate c;
    c.property = Property::Optimal;
    c.measured_dim = weak_span_dim(zs, tol);
    c.required_dim = phi.dim_in() * phi.dim_out();
    c.verdict = c.measured_dim == c.required_dim ? Verdict::Certified : Verdict::Inconclusive;
    c.tolerances = tol;
    c.conditional_note = kPositivityNote;
    return c;
}

Certificate certify_exposed(const MapOperator& phi, const ZeroSet& zs, const ToleranceConfig& tol) {
    Certificate c;
    c.property = Property::Exposed;
    c.measured_dim = strong_span_dim(zs, tol);
    c.required_dim = strong_span_ceiling(phi, tol);
    c.irreducible_on_image = is_irreducible_on_image(phi, tol);
    c.verdict = (c.measured_dim == c.required_dim && *c.irreducible_on_image) ? Verdict::Certified : Verdict::Inconclusive;
    c.tolerances = tol;
    c.conditional_note = kPositivityNote;
    const int n = phi.dim_in();
    if (numerical_rank(apply_map(phi, ComplexMatrix::Identity(n, n)), tol) < phi.dim_out())
        c.conditional_note +=
            "; Phi(1) is singular: irreducibility was tested on the compression to Im Phi(1), and the step from "
            "X Phi(a) = Phi(a) X^dagger to X proportional to 1 is only established for Phi(1) > 0";
    return c;
}

double FunctionalWitness::value_at(const MapOperator& psi) const {
    double total = 0.0;
    for (const auto& [a, h] : generators) {
        if (a.rows() != psi.dim_in() || h.size() != psi.dim_out())
            throw DimensionMismatch("FunctionalWitness::value_at: map dimensions differ from the witness");
        total += (h.adjoint() * apply_map(psi, a) * h)(0, 0).real();
    }
    return total;
}

FunctionalWitness exposedness_functional(const ZeroSet& zs, const ToleranceConfig& tol) {
    if (zs.empty()) throw EmptyZeroSet("exposedness_functional: zero set is empty");
    FunctionalWitness f;
    const auto& strong = zs.strong_vectors();
    ComplexMatrix kept(strong.front().size(), 0);
    int dim = 0;
    for (std::size_t k = 0; k < zs.size(); ++k) {
        ComplexMatrix trial(kept.rows(), kept.cols() + 1);
        trial << kept, strong[k];
        const int d = numerical_rank(trial, tol);
        if (d <= dim) continue;
        kept = std::move(trial);
        dim = d;
        const ComplexVector xb = zs.pairs()[k].x.conjugate();
        f.generators.emplace_back(outer(xb, xb), zs.pairs()[k].h);
    }
    return f;
}

}  // namespace expocert
