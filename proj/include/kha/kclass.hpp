#pragma once

#include <vector>

#include "kha/laurent.hpp"

namespace kha {

/// A finite multiset of torus characters, each an exponent vector over `space`.
struct WeightList {
    VarSpace space;
    std::vector<Exponents> weights;
};

/// Pairing vector lambda over the full variable list of a space.
struct Cocharacter {
    std::vector<int> pairing;
};

long long pair(const Cocharacter& lambda, const Exponents& beta);

/// prod_{beta in S} (1 - q^beta).
LaurentPoly euler_class(const WeightList& s);

struct LowestWeight {
    long long v = 0;
    int sign = 1;
};

/// Smallest lambda-weight v among the monomials of euler_class(S) and the sign of
/// its graded piece, which is checked to be a single monomial.
/// Throws "fixed-locus hypothesis fails" when some weight pairs to zero with lambda.
LowestWeight lowest_weight_certificate(const WeightList& s, const Cocharacter& lambda);

/// Lowest-weight graded piece of p under lambda.
LaurentPoly lowest_graded_piece(const LaurentPoly& p, const Cocharacter& lambda);

/// euler_class(S_attracting) * x.
LaurentPoly localized_pushpull(const LaurentPoly& x, const WeightList& attracting);

} // namespace kha
