#ifndef EXPOCERT_CERTIFICATES_HPP
#define EXPOCERT_CERTIFICATES_HPP

#include "expocert/zero_finder.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace expocert {

struct EmptyZeroSet : Error {
    using Error::Error;
};

enum class Property { Optimal, Exposed };
enum class Verdict { Certified, Inconclusive };

const char* to_string(Property p);
const char* to_string(Verdict v);

/// Both conditions are sufficient only, so there is no "refuted" verdict.
struct Certificate {
    Property property = Property::Optimal;
    Verdict verdict = Verdict::Inconclusive;
    int measured_dim = 0;
    int required_dim = 0;
    std::optional<bool> irreducible_on_image;  // Exposed only
    ToleranceConfig tolerances;
    std::string conditional_note;

    bool operator==(const Certificate&) const = default;
};

/// Basis of {X : [Phi(a), X] = 0 for all a}, from Hermitian generators.
std::vector<ComplexMatrix> commutant_basis(const MapOperator& phi, const ToleranceConfig& tol = {});

bool is_irreducible(const MapOperator& phi, const ToleranceConfig& tol = {});

/// Compressions P X P of the commutant onto Im Phi(1) span one dimension.
bool is_irreducible_on_image(const MapOperator& phi, const ToleranceConfig& tol = {});

struct IntertwinerSpace {
    int real_dimension;
    std::vector<ComplexMatrix> basis;  // real-linear basis
};

/// {X : X Phi(a) = Phi(a) X^dagger for all Hermitian a}, a real vector space.
IntertwinerSpace intertwiner_space(const MapOperator& phi, const ToleranceConfig& tol = {});

/// Certified iff weak_span_dim(zs) = n m.
Certificate certify_optimal(const MapOperator& phi, const ZeroSet& zs, const ToleranceConfig& tol = {});

/// Certified iff strong_span_dim(zs) = n^2 m - rank Phi(1) and Phi is
/// irreducible on its image.
Certificate certify_exposed(const MapOperator& phi, const ZeroSet& zs, const ToleranceConfig& tol = {});

/**
 * Supporting functional f(Psi) = sum_i <h_i| Psi(a_i) |h_i> with
 * a_i = |conj x_i><conj x_i| over a subset of pairs whose strong vectors form
 * a basis of the harvested span. f vanishes on the certified map and is
 * non-negative on every positive map.
 */
struct FunctionalWitness {
    std::vector<std::pair<ComplexMatrix, ComplexVector>> generators;

    double value_at(const MapOperator& psi) const;
};

/// Throws EmptyZeroSet when zs has no pairs.
FunctionalWitness exposedness_functional(const ZeroSet& zs, const ToleranceConfig& tol = {});

}  // namespace expocert

#endif  // EXPOCERT_CERTIFICATES_HPP
