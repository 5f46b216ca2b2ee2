#pragma once

// Independent oracles and random generators shared by the unit and acceptance tests.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "kha/error.hpp"
#include "kha/kclass.hpp"
#include "kha/laurent.hpp"
#include "kha/quiver.hpp"
#include "kha/rational_function.hpp"
#include "kha/shuffle.hpp"
#include "kha/wallcross.hpp"

namespace kha::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Sum over the S_d-orbit of one monomial, each term with coefficient c.
inline LaurentPoly orbit_sum(const VarSpace& s, const Exponents& seed, const Integer& c) {
    std::map<Exponents, bool> seen;
    std::vector<Term> terms;
    std::function<void(std::size_t, Exponents)> rec = [&](std::size_t i, Exponents e) {
        if (i == s.num_vertices()) {
            if (!seen[e]) {
                seen[e] = true;
                terms.push_back({e, c});
            }
            return;
        }
        std::size_t off = s.z_offset(i);
        std::vector<int> block(e.begin() + static_cast<long>(off), e.begin() + static_cast<long>(off) + s.count(i));
        std::sort(block.begin(), block.end());
        do {
            std::copy(block.begin(), block.end(), e.begin() + static_cast<long>(off));
            rec(i + 1, e);
        } while (std::next_permutation(block.begin(), block.end()));
    };
    rec(0, seed);
    return LaurentPoly::from_terms(s, std::move(terms));
}

// Random symmetric element: one or two orbit sums with z-exponents in [lo, hi],
// q-exponents in [-1, 1] and coefficients in {-2, ..., 2} \ {0}.
inline LaurentPoly random_symmetric(Rng& rng, const VarSpace& s, int lo = -2, int hi = 2) {
    LaurentPoly out(s);
    int pieces = uniform(rng, 1, 2);
    for (int k = 0; k < pieces; ++k) {
        Exponents e(s.size(), 0);
        for (int x = 0; x < s.rank(); ++x) e[static_cast<std::size_t>(x)] = uniform(rng, -1, 1);
        for (std::size_t x = static_cast<std::size_t>(s.rank()); x < s.size(); ++x) e[x] = uniform(rng, lo, hi);
        int c = 0;
        while (c == 0) c = uniform(rng, -2, 2);
        out += orbit_sum(s, e, c);
    }
    if (out.is_zero()) out = LaurentPoly::constant(s, 1);
    return out;
}

inline LaurentPoly random_laurent(Rng& rng, const VarSpace& s, int terms, int lo = -2, int hi = 2) {
    std::vector<Term> t;
    for (int k = 0; k < terms; ++k) {
        Exponents e(s.size(), 0);
        for (auto& x : e) x = uniform(rng, lo, hi);
        t.push_back({e, uniform(rng, -3, 3)});
    }
    return LaurentPoly::from_terms(s, std::move(t));
}

// Shuffle product straight from the definition: sum over coset representatives of
// w(f g prod zeta) accumulated as rational functions, then reduced.
inline LaurentPoly oracle_shuffle(const ShuffleAlgebra& algebra, const ShuffleElement& f, const ShuffleElement& g) {
    const DimVector a = f.dim(), b = g.dim(), d = a + b;
    const VarSpace space = algebra.space(d);
    const auto r = static_cast<std::size_t>(space.rank());
    const Quiver& q = algebra.quiver();

    auto embed = [&](const LaurentPoly& p, const std::vector<int>& offset) {
        std::vector<std::size_t> map(p.space().size());
        for (std::size_t k = 0; k < r; ++k) map[k] = k;
        for (std::size_t i = 0; i < p.space().num_vertices(); ++i)
            for (int j = 0; j < p.space().count(i); ++j)
                map[p.space().z_index(i, static_cast<std::size_t>(j))] =
                    space.z_index(i, static_cast<std::size_t>(offset[i] + j));
        return relabel(p, space, map);
    };
    LaurentPoly fg = embed(f.payload(), std::vector<int>(d.size(), 0)) * embed(g.payload(), a.entries());

    const LaurentPoly one = LaurentPoly::constant(space, 1);
    RationalFunction integrand(fg);
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t ip = 0; ip < d.size(); ++ip)
            for (int j = 0; j < a[i]; ++j)
                for (int jp = a[ip]; jp < d[ip]; ++jp) {
                    std::size_t x = space.z_index(i, static_cast<std::size_t>(j));
                    std::size_t y = space.z_index(ip, static_cast<std::size_t>(jp));
                    // ratio z = z_x / z_y, so z^{-1} = z_y / z_x
                    Exponents inv(space.size(), 0);
                    inv[x] = -1;
                    inv[y] = 1;
                    LaurentPoly zinv = LaurentPoly::monomial(space, inv);
                    LaurentPoly num = one;
                    for (std::size_t e = 0; e < q.num_edges(); ++e) {
                        if (q.source_index(e) != i || q.target_index(e) != ip) continue;
                        Exponents w(space.size(), 0);
                        auto wt = algebra.torus().weight(q.edge(e).id);
                        for (std::size_t k = 0; k < r; ++k) w[k] = -wt[k];
                        num *= one - LaurentPoly::monomial(space, w) * zinv;
                    }
                    integrand = integrand * (i == ip ? RationalFunction(num, one - zinv) : RationalFunction(num));
                }

    RationalFunction total{LaurentPoly(space)};
    const LaurentPoly& n = integrand.numerator();
    const LaurentPoly den = integrand.denominator();
    for (const auto& rep : weyl_coset_reps(a, b)) {
        auto w = rep.permutation(d);
        total = total + RationalFunction(permute(n, w), permute(den, w));
    }
    auto value = total.as_laurent();
    if (!value) throw Error("oracle: sum is not a Laurent polynomial");
    return *value;
}

// Rank over Q after substituting distinct primes for the q-parameters.
inline std::size_t specialized_rank(const std::vector<LaurentPoly>& rows, Window window) {
    static const int primes[] = {3, 5, 7, 11, 13, 17, 19, 23};
    if (rows.empty()) return 0;
    const VarSpace& s = rows.front().space();
    const auto r = static_cast<std::size_t>(s.rank());
    std::map<std::vector<int>, std::size_t> cols;
    std::vector<std::map<std::vector<int>, mpq_class>> sparse;
    for (const auto& row : rows) {
        std::map<std::vector<int>, mpq_class> m;
        const LaurentPoly cut = truncate(row, window);
        for (const auto& t : cut.terms()) {
            mpq_class v = t.coeff;
            for (std::size_t k = 0; k < r; ++k) {
                mpz_class p;
                mpz_pow_ui(p.get_mpz_t(), mpz_class(primes[k]).get_mpz_t(), static_cast<unsigned long>(std::abs(t.exps[k])));
                if (t.exps[k] >= 0) v *= p; else v /= p;
            }
            std::vector<int> z(t.exps.begin() + static_cast<long>(r), t.exps.end());
            m[z] += v;
            cols.emplace(z, 0);
        }
        sparse.push_back(std::move(m));
    }
    std::size_t c = 0;
    for (auto& [_, idx] : cols) idx = c++;
    std::vector<std::vector<mpq_class>> m(rows.size(), std::vector<mpq_class>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [z, v] : sparse[i]) m[i][cols[z]] = v;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols.size() && rank < m.size(); ++col) {
        std::size_t p = rank;
        while (p < m.size() && m[p][col] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t i = rank + 1; i < m.size(); ++i) {
            if (m[i][col] == 0) continue;
            mpq_class f = m[i][col] / m[rank][col];
            for (std::size_t j = col; j < cols.size(); ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

// All ordered sequences of nonzero vectors summing to d, with no pruning.
inline void all_ordered_partitions(const DimVector& rest, std::vector<DimVector>& prefix,
                                   std::vector<std::vector<DimVector>>& out) {
    if (rest.is_zero()) {
        out.push_back(prefix);
        return;
    }
    std::vector<int> c(rest.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == rest.size()) {
            DimVector part(c);
            if (part.is_zero()) return;
            prefix.push_back(part);
            all_ordered_partitions(rest - part, prefix, out);
            prefix.pop_back();
            return;
        }
        for (int v = 0; v <= rest[i]; ++v) {
            c[i] = v;
            rec(i + 1);
        }
        c[i] = 0;
    };
    rec(0);
}

inline std::vector<std::vector<DimVector>> brute_force_strata(const StabilityCondition& theta, const DimVector& d) {
    std::vector<std::vector<DimVector>> all, kept;
    std::vector<DimVector> prefix;
    all_ordered_partitions(d, prefix, all);
    for (auto& p : all) {
        if (p.size() < 2) continue;
        bool ok = true;
        for (std::size_t k = 1; k < p.size(); ++k) ok = ok && slope(theta, p[k - 1]) > slope(theta, p[k]);
        if (ok) kept.push_back(p);
    }
    return kept;
}

// Lowest lambda-weight of prod (1 - q^beta): take -q^beta exactly when the pairing is negative.
inline LowestWeight oracle_lowest_weight(const WeightList& s, const Cocharacter& lambda) {
    LowestWeight w{0, 1};
    for (const auto& beta : s.weights) {
        long long p = pair(lambda, beta);
        if (p < 0) {
            w.v += p;
            w.sign = -w.sign;
        }
    }
    return w;
}

inline Quiver random_quiver(Rng& rng, int max_vertices, int max_edges) {
    int n = uniform(rng, 1, max_vertices);
    int m = uniform(rng, 0, max_edges);
    std::vector<std::string> vs;
    for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
    std::vector<Edge> es;
    for (int e = 0; e < m; ++e)
        es.push_back({"e" + std::to_string(e), vs[static_cast<std::size_t>(uniform(rng, 0, n - 1))],
                      vs[static_cast<std::size_t>(uniform(rng, 0, n - 1))]});
    return Quiver(vs, es);
}

// Tripled Jordan quiver with a rank-2 torus fixing the potential.
inline ShuffleAlgebra tripled_jordan_algebra() {
    TripledQuiver t = tripled_quiver(jordan_quiver("x"));
    TorusWeighting w(t.quiver, 2, {{"x", {1, 0}}, {"x_bar", {0, 1}}, {"omega_0", {-1, -1}}});
    return ShuffleAlgebra(t.quiver, w);
}

inline ShuffleAlgebra a2_algebra() {
    Quiver q = type_a_quiver(2);
    TorusWeighting w(q, 1, {{"a1", {1}}});
    return ShuffleAlgebra(q, w);
}

} // namespace kha::testing
