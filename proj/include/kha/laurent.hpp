#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include "kha/quiver.hpp"

namespace kha {

using Integer = mpz_class;

/// Exponent vector over the full variable list of a VarSpace: the torus
/// parameters q_1..q_r first, then z_{i,j} by (vertex order, copy index).
using Exponents = boost::container::small_vector<std::int32_t, 12>;

/// The variables of a Laurent ring K_0(BT)[z_{i,j}^{+-1}].
///
/// Cheap to copy; the vertex table is shared and immutable.
class VarSpace {
public:
    VarSpace();
    VarSpace(int rank, std::vector<std::pair<std::string, int>> vertex_counts);
    /// Variables for dimension vector `d` over the given vertex ids.
    static VarSpace for_dims(int rank, const std::vector<std::string>& vertices, const DimVector& d);

    int rank() const noexcept;
    std::size_t num_vertices() const noexcept;
    const std::string& vertex(std::size_t i) const;
    int count(std::size_t i) const;
    std::optional<std::size_t> vertex_index(std::string_view id) const;
    /// Position of z_{vertex, copy} in an exponent vector (copy is 0-based).
    std::size_t z_index(std::size_t vertex, std::size_t copy) const;
    std::size_t z_offset(std::size_t vertex) const;
    std::size_t num_z() const noexcept;
    /// rank() + num_z().
    std::size_t size() const noexcept;
    DimVector dims() const;
    /// Same space with the q-parameters only (no z variables).
    VarSpace q_only() const;

    friend bool operator==(const VarSpace& a, const VarSpace& b);

private:
    struct Data;
    std::shared_ptr<const Data> data_;
};

struct Term {
    Exponents exps;
    Integer coeff;
};

/// Exact sparse Laurent polynomial with arbitrary-precision integer coefficients.
///
/// Terms are kept in canonical form: strictly decreasing lexicographic order of
/// exponent vectors, no zero coefficients. The first term is the leading term.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(VarSpace space) : space_(std::move(space)) {}

    static LaurentPoly constant(const VarSpace& space, const Integer& c);
    static LaurentPoly monomial(const VarSpace& space, Exponents exps, const Integer& c = 1);
    /// Single variable by index, raised to `power`.
    static LaurentPoly variable(const VarSpace& space, std::size_t index, int power = 1);
    /// Canonicalizes arbitrary input terms (merges duplicates, drops zeros, sorts).
    static LaurentPoly from_terms(const VarSpace& space, std::vector<Term> terms);
    /// Adopts terms that are already canonical (checked in debug builds).
    static LaurentPoly from_canonical_terms(const VarSpace& space, std::vector<Term> terms);

    const VarSpace& space() const noexcept { return space_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_monomial() const noexcept { return terms_.size() == 1; }
    bool is_one() const;
    const Term& leading_term() const;
    /// Coefficient of the given monomial (zero when absent).
    Integer coefficient(const Exponents& exps) const;

    /// Componentwise minimum / maximum exponent over all terms (zero vector for p = 0).
    Exponents min_exponents() const;
    Exponents max_exponents() const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& other);
    LaurentPoly& operator-=(const LaurentPoly& other);
    LaurentPoly& operator*=(const LaurentPoly& other);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

    /// c * x^exps * (*this); keeps canonical order without re-sorting.
    LaurentPoly mul_monomial(const Exponents& exps, const Integer& c = 1) const;
    LaurentPoly mul_scalar(const Integer& c) const;

    /// Human-readable rendering, e.g. "1 + q1^-1".
    std::string to_string() const;

private:
    VarSpace space_;
    std::vector<Term> terms_;
};

/// Strict lexicographic "greater" on exponent vectors: the canonical term order.
inline bool lex_greater(const Exponents& a, const Exponents& b) {
    const std::size_t n = std::min(a.size(), b.size());
    const std::int32_t* x = a.data();
    const std::int32_t* y = b.data();
    for (std::size_t k = 0; k < n; ++k)
        if (x[k] != y[k]) return x[k] > y[k];
    return a.size() > b.size();
}

struct ExponentsHash {
    std::size_t operator()(const Exponents& e) const noexcept;
};

/// Hash-based accumulation of many terms with repeated exponents.
class TermAccumulator {
public:
    explicit TermAccumulator(VarSpace space) : space_(std::move(space)) {}
    void add(const Exponents& exps, const Integer& c) { map_[exps] += c; }
    void add_product(const Exponents& exps, const Integer& a, const Integer& b) { map_[exps] += a * b; }
    LaurentPoly take();

private:
    VarSpace space_;
    std::unordered_map<Exponents, Integer, ExponentsHash> map_;
};

/// Returns q with q * d == p, or throws NotDivisible.
LaurentPoly exact_div(const LaurentPoly& p, const LaurentPoly& d);
std::optional<LaurentPoly> try_exact_div(const LaurentPoly& p, const LaurentPoly& d);
/// Exact division by the binomial (x_hi - x_lo) of two variables; throws NotDivisible.
LaurentPoly divide_by_difference(const LaurentPoly& p, std::size_t hi, std::size_t lo);

/// perm[i][j] is the new copy index of z_{i,j}; q exponents are untouched.
using VertexPermutation = std::vector<std::vector<int>>;

VertexPermutation identity_permutation(const VarSpace& space);
/// (b . a)(j) = b(a(j)) per vertex.
VertexPermutation compose(const VertexPermutation& b, const VertexPermutation& a);
LaurentPoly permute(const LaurentPoly& p, const VertexPermutation& w);

/// A representative of S_d / (S_a x S_b): per vertex, the sorted positions that
/// receive the first block (in order); the complement receives the second block.
struct WeylCosetRep {
    std::vector<std::vector<int>> first_block;

    VertexPermutation permutation(const DimVector& d) const;
    friend bool operator==(const WeylCosetRep&, const WeylCosetRep&) = default;
};

/// All prod_i C(d_i, a_i) coset representatives, in lexicographic subset order.
std::vector<WeylCosetRep> weyl_coset_reps(const DimVector& a, const DimVector& b);

/// Invariance under every adjacent transposition of z_{i,*} at every vertex.
bool is_symmetric(const LaurentPoly& p);

struct Window {
    int lo = 0;
    int hi = 0;
    friend bool operator==(const Window&, const Window&) = default;
};

/// Drops every term with a z-exponent outside the window. q exponents are never filtered.
LaurentPoly truncate(const LaurentPoly& p, Window window);
/// Per-z-variable windows (one per z variable, in variable order).
LaurentPoly truncate(const LaurentPoly& p, std::span<const Window> windows);

/// Re-expresses p in `target`, sending variable k of p's space to index_map[k].
LaurentPoly relabel(const LaurentPoly& p, const VarSpace& target, std::span<const std::size_t> index_map);

} // namespace kha
