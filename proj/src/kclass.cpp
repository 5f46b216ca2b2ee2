#include "kha/kclass.hpp"

#include <limits>

#include "kha/error.hpp"

namespace kha {

namespace {

void check_length(const VarSpace& space, const Exponents& beta) {
    if (beta.size() != space.size()) throw Error("weight length differs from the variable count");
}

} // namespace

long long pair(const Cocharacter& lambda, const Exponents& beta) {
    if (lambda.pairing.size() != beta.size()) throw Error("cocharacter length differs from the weight length");
    long long s = 0;
    for (std::size_t k = 0; k < beta.size(); ++k) s += static_cast<long long>(lambda.pairing[k]) * beta[k];
    return s;
}

LaurentPoly euler_class(const WeightList& s) {
    const LaurentPoly one = LaurentPoly::constant(s.space, 1);
    LaurentPoly e = one;
    for (const auto& beta : s.weights) {
        check_length(s.space, beta);
        e *= one - LaurentPoly::monomial(s.space, beta);
    }
    return e;
}

LaurentPoly lowest_graded_piece(const LaurentPoly& p, const Cocharacter& lambda) {
    long long best = std::numeric_limits<long long>::max();
    for (const auto& t : p.terms()) best = std::min(best, pair(lambda, t.exps));
    std::vector<Term> piece;
    for (const auto& t : p.terms())
        if (pair(lambda, t.exps) == best) piece.push_back(t);
    return LaurentPoly::from_canonical_terms(p.space(), std::move(piece));
}

LowestWeight lowest_weight_certificate(const WeightList& s, const Cocharacter& lambda) {
    if (lambda.pairing.size() != s.space.size()) throw Error("cocharacter length differs from the weight length");
    for (const auto& beta : s.weights) {
        check_length(s.space, beta);
        if (pair(lambda, beta) == 0) throw Error("fixed-locus hypothesis fails");
    }
    LaurentPoly piece = lowest_graded_piece(euler_class(s), lambda);
    if (!piece.is_monomial()) throw Error("lowest graded piece is not a single monomial");
    const Term& t = piece.leading_term();
    if (abs(t.coeff) != 1) throw Error("lowest graded piece is not a signed monomial");
    return {pair(lambda, t.exps), sgn(t.coeff)};
}

LaurentPoly localized_pushpull(const LaurentPoly& x, const WeightList& attracting) {
    if (!(x.space() == attracting.space)) throw SpaceMismatch("class and weights");
    return euler_class(attracting) * x;
}

} // namespace kha
