#include "kha/rational_function.hpp"

#include <algorithm>

#include "kha/error.hpp"

namespace kha {

namespace {

// Total order on canonical polynomials, used to keep factor lists sorted.
bool poly_less(const LaurentPoly& a, const LaurentPoly& b) {
    const auto& x = a.terms();
    const auto& y = b.terms();
    for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k) {
        if (x[k].exps != y[k].exps) return lex_greater(x[k].exps, y[k].exps);
        if (x[k].coeff != y[k].coeff) return x[k].coeff < y[k].coeff;
    }
    return x.size() < y.size();
}

LaurentPoly product(const VarSpace& space, const std::vector<LaurentPoly>& factors) {
    LaurentPoly r = LaurentPoly::constant(space, 1);
    for (const auto& f : factors) r *= f;
    return r;
}

// Factors of `have` missing from `want` (both sorted multisets).
std::vector<LaurentPoly> multiset_missing(const std::vector<LaurentPoly>& want,
                                          const std::vector<LaurentPoly>& have) {
    std::vector<LaurentPoly> out;
    std::size_t j = 0;
    for (const auto& f : want) {
        while (j < have.size() && poly_less(have[j], f)) ++j;
        if (j < have.size() && have[j] == f) {
            ++j;
        } else {
            out.push_back(f);
        }
    }
    return out;
}

std::vector<LaurentPoly> multiset_union(const std::vector<LaurentPoly>& a, const std::vector<LaurentPoly>& b) {
    std::vector<LaurentPoly> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && poly_less(a[i], b[j]))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || poly_less(b[j], a[i])) {
            out.push_back(b[j++]);
        } else {
            out.push_back(a[i]);
            ++i;
            ++j;
        }
    }
    return out;
}

void insert_sorted(std::vector<LaurentPoly>& v, LaurentPoly f) {
    auto it = std::upper_bound(v.begin(), v.end(), f, poly_less);
    v.insert(it, std::move(f));
}

} // namespace

LaurentPoly normalize_factor(const LaurentPoly& p, LaurentPoly* unit) {
    if (p.is_zero()) throw Error("cannot normalize the zero polynomial");
    Exponents lo = p.min_exponents();
    Exponents neg(lo.size());
    for (std::size_t k = 0; k < lo.size(); ++k) neg[k] = -lo[k];
    LaurentPoly shifted = p.mul_monomial(neg);
    int sign = sgn(shifted.leading_term().coeff) < 0 ? -1 : 1;
    if (unit) *unit = LaurentPoly::monomial(p.space(), lo, sign);
    return sign < 0 ? -shifted : shifted;
}

RationalFunction::RationalFunction(LaurentPoly numerator) : num_(std::move(numerator)) {}

RationalFunction::RationalFunction(LaurentPoly numerator, const LaurentPoly& denominator)
    : num_(std::move(numerator)) {
    if (!(num_.space() == denominator.space())) throw SpaceMismatch("numerator and denominator");
    if (denominator.is_zero()) throw Error("division by zero denominator");
    divide_by(denominator);
    reduce();
}

void RationalFunction::divide_by(const LaurentPoly& f) {
    LaurentPoly unit;
    LaurentPoly g = normalize_factor(f, &unit);
    // 1/unit is the signed monomial with negated exponents.
    const Term& u = unit.leading_term();
    Exponents inv(u.exps.size());
    for (std::size_t k = 0; k < inv.size(); ++k) inv[k] = -u.exps[k];
    num_ = num_.mul_monomial(inv, u.coeff);
    if (!g.is_one()) insert_sorted(factors_, std::move(g));
}

void RationalFunction::reduce() {
    if (num_.is_zero()) {
        factors_.clear();
        return;
    }
    std::vector<LaurentPoly> kept;
    for (auto& f : factors_) {
        if (auto q = try_exact_div(num_, f)) {
            num_ = std::move(*q);
        } else {
            kept.push_back(std::move(f));
        }
    }
    factors_ = std::move(kept);
}

LaurentPoly RationalFunction::denominator() const { return product(space(), factors_); }

std::optional<LaurentPoly> RationalFunction::as_laurent() const {
    if (factors_.empty()) return num_;
    return std::nullopt;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& x, const RationalFunction& y) {
    if (!(x.space() == y.space())) throw SpaceMismatch("rational function sum");
    RationalFunction r;
    r.factors_ = multiset_union(x.factors_, y.factors_);
    LaurentPoly a = x.num_ * product(x.space(), multiset_missing(r.factors_, x.factors_));
    LaurentPoly b = y.num_ * product(y.space(), multiset_missing(r.factors_, y.factors_));
    r.num_ = a + b;
    r.reduce();
    return r;
}

RationalFunction operator-(const RationalFunction& x, const RationalFunction& y) { return x + (-y); }

RationalFunction operator*(const RationalFunction& x, const RationalFunction& y) {
    if (!(x.space() == y.space())) throw SpaceMismatch("rational function product");
    RationalFunction r;
    r.num_ = x.num_ * y.num_;
    r.factors_ = x.factors_;
    for (const auto& f : y.factors_) insert_sorted(r.factors_, f);
    r.reduce();
    return r;
}

RationalFunction operator/(const RationalFunction& x, const RationalFunction& y) {
    if (!(x.space() == y.space())) throw SpaceMismatch("rational function quotient");
    if (y.is_zero()) throw Error("division by zero rational function");
    RationalFunction r;
    r.num_ = x.num_ * product(y.space(), y.factors_);
    r.factors_ = x.factors_;
    r.divide_by(y.num_);
    r.reduce();
    return r;
}

bool operator==(const RationalFunction& x, const RationalFunction& y) {
    if (!(x.space() == y.space())) return false;
    return x.num_ * y.denominator() == y.num_ * x.denominator();
}

std::string RationalFunction::to_string() const {
    if (factors_.empty()) return num_.to_string();
    std::string s = "(" + num_.to_string() + ") / (";
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (k) s += ")*(";
        s += factors_[k].to_string();
    }
    return s + ")";
}

} // namespace kha
