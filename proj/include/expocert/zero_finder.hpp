#ifndef EXPOCERT_ZERO_FINDER_HPP
#define EXPOCERT_ZERO_FINDER_HPP

#include "expocert/map_model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace expocert {

/// Product-vector zero: Phi(|conj x><conj x|) h = 0, with x and h unit.
struct ZeroPair {
    ComplexVector x;
    ComplexVector h;
    double residual = 0.0;  // ||Phi(|conj x><conj x|) h||
};

/// x (x) h, the vector whose span is tested by the (weak) spanning property.
ComplexVector weak_vector(const ZeroPair& p);
/// conj(x) (x) x (x) h, i.e. vec(|conj x><conj x|) (x) h in C^{n^2 m}.
ComplexVector strong_vector(const ZeroPair& p);

/**
 * A collection of zero pairs together with their weak and strong vectors.
 * The three lists are kept in one-to-one correspondence.
 */
class ZeroSet {
public:
    ZeroSet(int dim_in, int dim_out) : dim_in_(dim_in), dim_out_(dim_out) {}

    void add(ZeroPair pair);

    int dim_in() const { return dim_in_; }
    int dim_out() const { return dim_out_; }
    const std::vector<ZeroPair>& pairs() const { return pairs_; }
    const std::vector<ComplexVector>& weak_vectors() const { return weak_; }
    const std::vector<ComplexVector>& strong_vectors() const { return strong_; }
    bool empty() const { return pairs_.empty(); }
    std::size_t size() const { return pairs_.size(); }

    bool saturated = false;

private:
    int dim_in_;
    int dim_out_;
    std::vector<ZeroPair> pairs_;
    std::vector<ComplexVector> weak_;
    std::vector<ComplexVector> strong_;
};

int weak_span_dim(const ZeroSet& zs, const ToleranceConfig& tol = {});
int strong_span_dim(const ZeroSet& zs, const ToleranceConfig& tol = {});

/// n^2 m - rank Phi(1): the dimension of the kernel of a (x) h -> Phi(a) h,
/// which bounds the strong span from above.
int strong_span_ceiling(const MapOperator& phi, const ToleranceConfig& tol = {});

struct ZeroSearchResult {
    ZeroPair best;
    bool converged = false;            // residual within tolerance
    double objective = 0.0;            // final g = <h|Phi(|conj x><conj x|)|h>
    int iterations = 0;
    std::vector<double> objective_trace;  // g after every half-step
};

/**
 * Alternating eigen-descent on g(x, h) = <h|Phi(|conj x><conj x|)|h>.
 *
 * The h-step takes a lowest eigenvector of Phi(|conj x><conj x|); the x-step
 * takes conj of a lowest eigenvector of Phi*(|h><h|). Inside a degenerate
 * lowest eigenspace the projection of the current vector is kept. Without h0
 * the h-step goes first; with h0 the x-step goes first.
 *
 * Throws InvalidArgument for a zero or wrongly sized start.
 */
ZeroSearchResult local_zero_search(const MapOperator& phi, const ComplexVector& x0, const ToleranceConfig& tol = {},
                                   const std::optional<ComplexVector>& h0 = std::nullopt);

/// Same, with the adjoint map precomputed.
ZeroSearchResult local_zero_search(const MapOperator& phi, const MapOperator& phi_adjoint, const ComplexVector& x0,
                                   const ToleranceConfig& tol, const std::optional<ComplexVector>& h0);

struct HarvestOptions {
    int starts = 0;        // 0 selects 50 n m
    int stall_budget = 20;
};

/**
 * Multi-start driver. A converged pair is kept only when it grows the span of
 * the strong or the weak vectors; the run stops after `stall_budget`
 * consecutive starts without growth (saturated), when both spans reach their
 * ceilings (saturated), or when the start budget runs out.
 */
ZeroSet harvest_zeros(const MapOperator& phi, std::uint64_t seed, const ToleranceConfig& tol = {},
                      const HarvestOptions& opts = {});

/**
 * Exact zeros of a -> V^dagger a^t V (or V^dagger a V) from the normal frame
 * V = U S W^dagger. In primed coordinates x' = U^dagger x, g = S W^dagger h the
 * transposed zero condition is sum_{i<=r} conj(x'_i) g_i = 0, generated by
 *   g = (-conj x'_i, 0.., conj x'_1, 0..)   for i = 2..r,
 *   g = f_j                                for j > r   (h in ker V),
 *   x' supported on coordinates > r        (x in ker V^dagger), any h.
 * The untransposed case uses conj(x) in place of x. Grid points are drawn
 * with Gaussian-integer coordinates until the strong span stops growing.
 */
ZeroSet analytic_zeros_conjugation(const ComplexMatrix& v, bool transposed, const ToleranceConfig& tol = {});

}  // namespace expocert

#endif  // EXPOCERT_ZERO_FINDER_HPP
