#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "kha/laurent.hpp"
#include "kha/quiver.hpp"
#include "kha/shuffle.hpp"

namespace kha {

/// An ordered partition (d_1, ..., d_k) of d with k >= 2 and strictly decreasing slopes.
class HNStratum {
public:
    /// Validates k >= 2, nonzero parts, the sum, and strict slope descent.
    HNStratum(const StabilityCondition& theta, const DimVector& d, std::vector<DimVector> parts);

    const std::vector<DimVector>& parts() const noexcept { return parts_; }
    const std::vector<Rational>& slopes() const noexcept { return slopes_; }
    std::size_t length() const noexcept { return parts_.size(); }

    friend bool operator==(const HNStratum&, const HNStratum&) = default;

private:
    std::vector<DimVector> parts_;
    std::vector<Rational> slopes_;
};

struct HNStrata {
    DimVector d;
    /// Sorted by length (longest first), then lexicographically by parts.
    std::vector<HNStratum> strata;
    /// Pairs (i, j) with strata[i] < strata[j], i.e. strata[i] has more parts.
    std::vector<std::pair<std::size_t, std::size_t>> order;
};

HNStrata hn_strata(const Quiver& q, const StabilityCondition& theta, const DimVector& d);

/// The strictly ordered-partition relation: a < b iff a has more parts.
bool hn_less(const HNStratum& a, const HNStratum& b);

/// True when q is the linear quiver 1 -> 2 -> ... -> n in vertex order.
bool is_type_a(const Quiver& q);

/// Generator dimension vectors of the semistable pieces for a strictly monotone theta:
/// unit vectors when increasing, all intervals (by length, then start) when decreasing.
std::vector<DimVector> typeA_semistable_dims(std::size_t n, const StabilityCondition& theta);

struct GenerationReport {
    DimVector d;
    Window window;
    int gen_degree = 0;
    std::size_t achieved_rank = 0;
    std::size_t target_rank = 0;
    /// Monomial-symmetric basis elements outside the pivot set, one representative
    /// monomial each (per vertex exponents nonincreasing).
    std::vector<LaurentPoly> missing;
    /// Number of generator products that were evaluated.
    std::size_t products = 0;
};

/// Checks that ordered products of z^k at the unit vectors, |k| <= gen_degree, taken
/// from the highest-theta vertex down, span the symmetric Laurent polynomials at d
/// with z-exponents in the window. Requires a type-A quiver and increasing theta.
GenerationReport verify_generation(const ShuffleAlgebra& algebra, const StabilityCondition& theta,
                                   const DimVector& d, Window window, int gen_degree);

/// Representative monomials of the monomial-symmetric basis at d inside the window.
std::vector<Exponents> symmetric_window_basis(const VarSpace& space, Window window);

/// Rank over the fraction field of the q-parameters of the rows truncated to the window,
/// with columns the window z-monomials in canonical order.
std::size_t exact_rank(const std::vector<LaurentPoly>& rows, Window window);

/// Fraction-free elimination on a matrix over Z[q^{+-1}]; returns the pivot columns.
/// Pivots are the first nonzero entry in column order.
std::vector<std::size_t> rank_profile(std::vector<std::vector<LaurentPoly>> matrix, const VarSpace& coeffs);

} // namespace kha
