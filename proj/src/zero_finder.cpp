#include "expocert/zero_finder.hpp"

#include "expocert/random.hpp"

#include <cmath>

namespace expocert {

ComplexVector weak_vector(const ZeroPair& p) { return kron(p.x, p.h); }

ComplexVector strong_vector(const ZeroPair& p) { return kron(kron(ComplexVector(p.x.conjugate()), p.x), p.h); }

void ZeroSet::add(ZeroPair pair) {
    if (pair.x.size() != dim_in_ || pair.h.size() != dim_out_) throw DimensionMismatch("ZeroSet::add: pair has wrong dimensions");
    weak_.push_back(weak_vector(pair));
    strong_.push_back(strong_vector(pair));
    pairs_.push_back(std::move(pair));
}

int weak_span_dim(const ZeroSet& zs, const ToleranceConfig& tol) { return span_dimension(zs.weak_vectors(), tol); }

int strong_span_dim(const ZeroSet& zs, const ToleranceConfig& tol) { return span_dimension(zs.strong_vectors(), tol); }

int strong_span_ceiling(const MapOperator& phi, const ToleranceConfig& tol) {
    const int n = phi.dim_in();
    const int m = phi.dim_out();
    return n * n * m - numerical_rank(apply_map(phi, ComplexMatrix::Identity(n, n)), tol);
}

namespace {

struct HalfStep {
    ComplexVector vec;
    double value;
};

// Lowest eigenvector of a Hermitian matrix; inside a degenerate lowest
// eigenspace prefer the projection of `current`. Never returns a value above
// the one `current` already attains.
HalfStep minimize_quadratic(const ComplexMatrix& m, const ComplexVector* current, double cluster_eps) {
    const HermitianEigen e = hermitian_eigen(m);
    const double lowest = e.values(0);
    if (current != nullptr) {
        const double now = (current->adjoint() * m * *current)(0, 0).real();
        Eigen::Index k = 1;
        while (k < e.values.size() && e.values(k) <= lowest + cluster_eps) ++k;
        if (k > 1) {
            const auto block = e.vectors.leftCols(k);
            ComplexVector p = block * (block.adjoint() * *current);
            const double pn = p.norm();
            if (pn > 1e-6) {
                p /= pn;
                const double val = (p.adjoint() * m * p)(0, 0).real();
                if (val <= now) return {p, val};
            }
        }
        if (now <= lowest) return {*current, now};
    }
    return {e.vectors.col(0), lowest};
}

ComplexMatrix rank_one_conj(const ComplexVector& x) {
    const ComplexVector xb = x.conjugate();
    return outer(xb, xb);
}

}  // namespace

ZeroSearchResult local_zero_search(const MapOperator& phi, const ComplexVector& x0, const ToleranceConfig& tol,
                                   const std::optional<ComplexVector>& h0) {
    return local_zero_search(phi, adjoint_map(phi), x0, tol, h0);
}

ZeroSearchResult local_zero_search(const MapOperator& phi, const MapOperator& phi_adjoint, const ComplexVector& x0,
                                   const ToleranceConfig& tol, const std::optional<ComplexVector>& h0) {
    const int n = phi.dim_in();
    const int m = phi.dim_out();
    if (x0.size() != n) throw DimensionMismatch("local_zero_search: x0 must lie in C^n");
    if (!(x0.norm() > 0.0)) throw InvalidArgument("local_zero_search: x0 must be nonzero");
    if (h0 && h0->size() != m) throw DimensionMismatch("local_zero_search: h0 must lie in C^m");
    if (h0 && !(h0->norm() > 0.0)) throw InvalidArgument("local_zero_search: h0 must be nonzero");

    const double s = phi.scale();
    const double cluster_eps = tol.rank_rel_tol * s;
    ZeroSearchResult out;

    ComplexVector x = x0.normalized();
    ComplexVector h = h0 ? ComplexVector(h0->normalized()) : ComplexVector::Unit(m, 0);
    bool have_h = h0.has_value();

    if (s == 0.0) {
        out.best = {x, h, 0.0};
        out.converged = true;
        return out;
    }

    bool h_turn = !have_h;
    const int max_half_steps = 2 * tol.max_iters;
    for (int k = 0; k < max_half_steps; ++k) {
        double value;
        if (h_turn) {
            const HalfStep st = minimize_quadratic(apply_map(phi, rank_one_conj(x)), have_h ? &h : nullptr, cluster_eps);
            h = st.vec.normalized();
            have_h = true;
            value = st.value;
        } else {
            // g = <conj x| Phi*(|h><h|) |conj x>
            const ComplexVector xb = x.conjugate();
            const HalfStep st = minimize_quadratic(apply_map(phi_adjoint, outer(h, h)), &xb, cluster_eps);
            x = ComplexVector(st.vec.conjugate()).normalized();
            value = st.value;
        }
        out.objective_trace.push_back(value);
        h_turn = !h_turn;
        out.iterations = k / 2 + 1;
        const std::size_t t = out.objective_trace.size();
        if (t >= 2 && std::abs(out.objective_trace[t - 1] - out.objective_trace[t - 2]) < tol.convergence_tol * s) break;
    }

    const ComplexMatrix img = apply_map(phi, rank_one_conj(x));
    out.objective = (h.adjoint() * img * h)(0, 0).real();
    out.best = {x, h, (img * h).norm()};
    out.converged = out.best.residual <= tol.residual_rel_tol * s;
    return out;
}

namespace {

int rank_with_column(ComplexMatrix& mat, const ComplexVector& v, const ToleranceConfig& tol) {
    mat.conservativeResize(v.size(), mat.cols() + 1);
    mat.col(mat.cols() - 1) = v;
    return numerical_rank(mat, tol);
}

}  // namespace

ZeroSet harvest_zeros(const MapOperator& phi, std::uint64_t seed, const ToleranceConfig& tol, const HarvestOptions& opts) {
    const int n = phi.dim_in();
    const int m = phi.dim_out();
    const int starts = opts.starts > 0 ? opts.starts : 50 * n * m;
    const int strong_cap = strong_span_ceiling(phi, tol);
    const int weak_cap = n * m;
    const MapOperator adj = adjoint_map(phi);

    ZeroSet zs(n, m);
    Rng rng(seed);
    ComplexMatrix strong_mat(n * n * m, 0);
    ComplexMatrix weak_mat(n * m, 0);
    int strong_dim = 0;
    int weak_dim = 0;
    int stall = 0;

    for (int s = 0; s < starts; ++s) {
        const ComplexVector x0 = random_unit_vector(n, rng);
        const ComplexVector h0 = random_unit_vector(m, rng);
        // Odd starts run the x-step first, which reaches zero components that
        // project onto a proper subspace of x-space.
        const ZeroSearchResult res =
            local_zero_search(phi, adj, x0, tol, (s % 2 == 1) ? std::optional<ComplexVector>(h0) : std::nullopt);

        bool grew = false;
        if (res.converged) {
            ComplexMatrix strong_try = strong_mat;
            ComplexMatrix weak_try = weak_mat;
            const int sd = rank_with_column(strong_try, strong_vector(res.best), tol);
            const int wd = rank_with_column(weak_try, weak_vector(res.best), tol);
            if (sd > strong_dim || wd > weak_dim) {
                strong_mat = std::move(strong_try);
                weak_mat = std::move(weak_try);
                strong_dim = sd;
                weak_dim = wd;
                zs.add(res.best);
                grew = true;
            }
        }
        stall = grew ? 0 : stall + 1;
        if ((strong_dim >= strong_cap && weak_dim >= weak_cap) || stall >= opts.stall_budget) {
            zs.saturated = true;
            break;
        }
    }
    return zs;
}

ZeroSet analytic_zeros_conjugation(const ComplexMatrix& v, bool transposed, const ToleranceConfig& tol) {
    if (v.size() == 0 || v.isZero(0.0)) throw ZeroOperator("analytic_zeros_conjugation: V must be nonzero");
    const int n = int(v.rows());
    const int m = int(v.cols());
    const MapOperator phi = from_conjugation(v, transposed);
    const SvdResult dec = svd(v);
    const int r = numerical_rank(dec.singular_values, tol);
    if (r == 0) throw ZeroOperator("analytic_zeros_conjugation: V is numerically zero");
    const ComplexMatrix& u = dec.left_vectors;
    const ComplexMatrix& w = dec.right_vectors;

    ZeroSet zs(n, m);
    auto emit = [&](const ComplexVector& xp, const ComplexVector& g) {
        if (xp.norm() == 0.0 || g.norm() == 0.0) return;
        ComplexVector hp = g;
        for (int i = 0; i < r; ++i) hp(i) /= dec.singular_values(i);
        ComplexVector x = (u * xp).normalized();
        const ComplexVector h = (w * hp).normalized();
        // Untransposed zeros are the transposed ones with x conjugated.
        if (!transposed) x = x.conjugate();
        const ComplexVector xb = x.conjugate();
        const double res = (apply_map(phi, outer(xb, xb)) * h).norm();
        zs.add({x, h, res});
    };

    Rng rng(0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<int> coord(-2, 2);
    auto grid_point = [&] {
        for (;;) {
            ComplexVector p(n);
            for (int i = 0; i < n; ++i) p(i) = Complex(coord(rng), coord(rng));
            if (p.norm() > 0.0) return p;
        }
    };

    int points = 0;
    int batch = n * n + n;
    int last_dim = -1;
    for (int round = 0; round < 8; ++round) {
        for (int k = 0; k < batch; ++k, ++points) {
            const ComplexVector xp = grid_point();
            // H_i(x) directions, orthogonal to the first r coordinates of x'
            for (int i = 1; i < r; ++i) {
                ComplexVector g = ComplexVector::Zero(m);
                g(0) = -std::conj(xp(i));
                g(i) = std::conj(xp(0));
                emit(xp, g);
            }
            for (int j = r; j < m; ++j) emit(xp, ComplexVector::Unit(m, j));
            if (r < n) {
                ComplexVector xk = xp;
                xk.head(r).setZero();
                for (int j = 0; j < m; ++j) emit(xk, ComplexVector::Unit(m, j));
            }
        }
        const int dim = strong_span_dim(zs, tol);
        if (dim == last_dim) {
            zs.saturated = true;
            break;
        }
        last_dim = dim;
        batch = points;
    }
    return zs;
}

}  // namespace expocert
