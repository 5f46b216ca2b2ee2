#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kha/laurent.hpp"

namespace kha {

/// Fraction of Laurent polynomials with a factored denominator.
///
/// The denominator is kept as a sorted multiset of normalized factors: each
/// factor has no monomial content and a positive leading coefficient, with the
/// unit (signed monomial) split off into the numerator. Reduction only divides
/// the numerator by these tracked factors; no multivariate gcd is attempted.
class RationalFunction {
public:
    RationalFunction() = default;
    explicit RationalFunction(LaurentPoly numerator);
    /// Throws kha::Error for a zero denominator.
    RationalFunction(LaurentPoly numerator, const LaurentPoly& denominator);

    const VarSpace& space() const noexcept { return num_.space(); }
    const LaurentPoly& numerator() const noexcept { return num_; }
    const std::vector<LaurentPoly>& denominator_factors() const noexcept { return factors_; }
    /// Product of the denominator factors.
    LaurentPoly denominator() const;
    bool is_zero() const noexcept { return num_.is_zero(); }
    /// The polynomial value when every denominator factor has cancelled.
    std::optional<LaurentPoly> as_laurent() const;

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& x, const RationalFunction& y);
    friend RationalFunction operator-(const RationalFunction& x, const RationalFunction& y);
    friend RationalFunction operator*(const RationalFunction& x, const RationalFunction& y);
    /// Throws kha::Error when y is zero.
    friend RationalFunction operator/(const RationalFunction& x, const RationalFunction& y);
    /// Cross-multiplied equality.
    friend bool operator==(const RationalFunction& x, const RationalFunction& y);

    std::string to_string() const;

private:
    void divide_by(const LaurentPoly& factor);
    void reduce();

    LaurentPoly num_;
    std::vector<LaurentPoly> factors_;
};

/// Splits p = unit * normalized; returns the normalized factor and writes the unit.
LaurentPoly normalize_factor(const LaurentPoly& p, LaurentPoly* unit);

} // namespace kha
