#include "kha/laurent.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "kha/error.hpp"

namespace kha {

// ---------------------------------------------------------------------------
// VarSpace

struct VarSpace::Data {
    int rank = 0;
    std::vector<std::string> ids;
    std::vector<int> counts;
    std::vector<std::size_t> offsets;
    std::size_t num_z = 0;
};

VarSpace::VarSpace() : VarSpace(0, {}) {}

VarSpace::VarSpace(int rank, std::vector<std::pair<std::string, int>> vertex_counts) {
    if (rank < 0) throw Error("torus rank must be nonnegative");
    auto d = std::make_shared<Data>();
    d->rank = rank;
    std::size_t offset = static_cast<std::size_t>(rank);
    for (auto& [id, c] : vertex_counts) {
        if (c < 0) throw Error("variable count must be nonnegative");
        if (std::find(d->ids.begin(), d->ids.end(), id) != d->ids.end())
            throw Error("duplicate vertex id '" + id + "' in variable space");
        d->ids.push_back(std::move(id));
        d->counts.push_back(c);
        d->offsets.push_back(offset);
        offset += static_cast<std::size_t>(c);
        d->num_z += static_cast<std::size_t>(c);
    }
    data_ = std::move(d);
}

VarSpace VarSpace::for_dims(int rank, const std::vector<std::string>& vertices, const DimVector& d) {
    if (vertices.size() != d.size()) throw Error("dimension vector length differs from vertex count");
    std::vector<std::pair<std::string, int>> counts;
    for (std::size_t i = 0; i < vertices.size(); ++i) counts.emplace_back(vertices[i], d[i]);
    return VarSpace(rank, std::move(counts));
}

int VarSpace::rank() const noexcept { return data_->rank; }
std::size_t VarSpace::num_vertices() const noexcept { return data_->ids.size(); }
const std::string& VarSpace::vertex(std::size_t i) const { return data_->ids.at(i); }
int VarSpace::count(std::size_t i) const { return data_->counts.at(i); }
std::size_t VarSpace::z_offset(std::size_t vertex) const { return data_->offsets.at(vertex); }
std::size_t VarSpace::num_z() const noexcept { return data_->num_z; }
std::size_t VarSpace::size() const noexcept {
    return static_cast<std::size_t>(data_->rank) + data_->num_z;
}

std::size_t VarSpace::z_index(std::size_t vertex, std::size_t copy) const {
    if (copy >= static_cast<std::size_t>(count(vertex))) throw Error("z variable copy out of range");
    return data_->offsets[vertex] + copy;
}

std::optional<std::size_t> VarSpace::vertex_index(std::string_view id) const {
    for (std::size_t i = 0; i < data_->ids.size(); ++i)
        if (data_->ids[i] == id) return i;
    return std::nullopt;
}

DimVector VarSpace::dims() const { return DimVector(data_->counts); }

VarSpace VarSpace::q_only() const { return VarSpace(rank(), {}); }

bool operator==(const VarSpace& a, const VarSpace& b) {
    if (a.data_ == b.data_) return true;
    return a.data_->rank == b.data_->rank && a.data_->ids == b.data_->ids &&
           a.data_->counts == b.data_->counts;
}

// ---------------------------------------------------------------------------
// helpers

std::size_t ExponentsHash::operator()(const Exponents& e) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (std::int32_t x : e) {
        h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x));
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

using TermMap = std::unordered_map<Exponents, Integer, ExponentsHash>;

Exponents add_exps(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
    return r;
}

void check_same_space(const LaurentPoly& a, const LaurentPoly& b) {
    if (!(a.space() == b.space())) throw SpaceMismatch("operands live in different variable spaces");
}

// Sorts by index so the comparatively heavy terms are moved only once.
std::vector<Term> sorted_by_exponents(std::vector<Term>& terms) {
    std::vector<std::uint32_t> order(terms.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t x, std::uint32_t y) { return lex_greater(terms[x].exps, terms[y].exps); });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (std::uint32_t k : order) out.push_back(std::move(terms[k]));
    return out;
}

std::vector<Term> canonicalize(std::vector<Term> input) {
    std::vector<Term> terms = sorted_by_exponents(input);
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back().exps == t.exps) {
            out.back().coeff += t.coeff;
        } else {
            if (!out.empty() && out.back().coeff == 0) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().coeff == 0) out.pop_back();
    return out;
}

std::vector<Term> from_map(TermMap& acc) {
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [e, c] : acc)
        if (c != 0) out.push_back(Term{e, std::move(c)});
    return sorted_by_exponents(out);
}

// a + sign * b for canonical inputs.
std::vector<Term> merge_add(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && lex_greater(a[i].exps, b[j].exps))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || lex_greater(b[j].exps, a[i].exps)) {
            out.push_back(Term{b[j].exps, sign > 0 ? b[j].coeff : Integer(-b[j].coeff)});
            ++j;
        } else {
            Integer c = sign > 0 ? Integer(a[i].coeff + b[j].coeff) : Integer(a[i].coeff - b[j].coeff);
            if (c != 0) out.push_back(Term{a[i].exps, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly LaurentPoly::constant(const VarSpace& space, const Integer& c) {
    return monomial(space, Exponents(space.size(), 0), c);
}

LaurentPoly LaurentPoly::monomial(const VarSpace& space, Exponents exps, const Integer& c) {
    if (exps.size() != space.size()) throw Error("exponent vector length differs from variable count");
    LaurentPoly p(space);
    if (c != 0) p.terms_.push_back(Term{std::move(exps), c});
    return p;
}

LaurentPoly LaurentPoly::variable(const VarSpace& space, std::size_t index, int power) {
    Exponents e(space.size(), 0);
    e.at(index) = power;
    return monomial(space, std::move(e));
}

LaurentPoly LaurentPoly::from_terms(const VarSpace& space, std::vector<Term> terms) {
    for (const auto& t : terms)
        if (t.exps.size() != space.size()) throw Error("exponent vector length differs from variable count");
    LaurentPoly p(space);
    p.terms_ = canonicalize(std::move(terms));
    return p;
}

LaurentPoly TermAccumulator::take() {
    LaurentPoly p = LaurentPoly::from_canonical_terms(space_, from_map(map_));
    map_.clear();
    return p;
}

LaurentPoly LaurentPoly::from_canonical_terms(const VarSpace& space, std::vector<Term> terms) {
#ifndef NDEBUG
    for (std::size_t k = 0; k < terms.size(); ++k) {
        assert(terms[k].coeff != 0);
        assert(terms[k].exps.size() == space.size());
        assert(k == 0 || lex_greater(terms[k - 1].exps, terms[k].exps));
    }
#endif
    LaurentPoly p(space);
    p.terms_ = std::move(terms);
    return p;
}

bool LaurentPoly::is_one() const {
    if (terms_.size() != 1 || terms_[0].coeff != 1) return false;
    return std::all_of(terms_[0].exps.begin(), terms_[0].exps.end(), [](int x) { return x == 0; });
}

const Term& LaurentPoly::leading_term() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading term");
    return terms_.front();
}

Integer LaurentPoly::coefficient(const Exponents& exps) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exps,
                               [](const Term& t, const Exponents& e) { return lex_greater(t.exps, e); });
    if (it != terms_.end() && it->exps == exps) return it->coeff;
    return 0;
}

Exponents LaurentPoly::min_exponents() const {
    Exponents m(space_.size(), 0);
    if (terms_.empty()) return m;
    m = terms_.front().exps;
    for (const auto& t : terms_)
        for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::min(m[k], t.exps[k]);
    return m;
}

Exponents LaurentPoly::max_exponents() const {
    Exponents m(space_.size(), 0);
    if (terms_.empty()) return m;
    m = terms_.front().exps;
    for (const auto& t : terms_)
        for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::max(m[k], t.exps[k]);
    return m;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
    check_same_space(*this, other);
    terms_ = merge_add(terms_, other.terms_, +1);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
    check_same_space(*this, other);
    terms_ = merge_add(terms_, other.terms_, -1);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
    *this = *this * other;
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    check_same_space(a, b);
    LaurentPoly r(a.space());
    if (a.is_zero() || b.is_zero()) return r;
    const LaurentPoly& big = a.size() >= b.size() ? a : b;
    const LaurentPoly& small = a.size() >= b.size() ? b : a;
    if (small.size() <= 4) {
        // Sum of shifted copies; shifting preserves the canonical order.
        for (const auto& t : small.terms_) {
            LaurentPoly shifted = big.mul_monomial(t.exps, t.coeff);
            r.terms_ = r.terms_.empty() ? std::move(shifted.terms_) : merge_add(r.terms_, shifted.terms_, +1);
        }
        return r;
    }
    TermMap acc;
    acc.reserve(a.size() * b.size());
    for (const auto& x : big.terms_)
        for (const auto& y : small.terms_) {
            Integer& slot = acc[add_exps(x.exps, y.exps)];
            mpz_addmul(slot.get_mpz_t(), x.coeff.get_mpz_t(), y.coeff.get_mpz_t());
        }
    r.terms_ = from_map(acc);
    return r;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (!(a.space_ == b.space_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k)
        if (a.terms_[k].exps != b.terms_[k].exps || a.terms_[k].coeff != b.terms_[k].coeff) return false;
    return true;
}

LaurentPoly LaurentPoly::mul_monomial(const Exponents& exps, const Integer& c) const {
    if (exps.size() != space_.size()) throw Error("exponent vector length differs from variable count");
    LaurentPoly r(space_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back(Term{add_exps(t.exps, exps), t.coeff * c});
    return r;
}

LaurentPoly LaurentPoly::mul_scalar(const Integer& c) const {
    LaurentPoly r(space_);
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::string> names;
    for (int k = 1; k <= space_.rank(); ++k) names.push_back("q" + std::to_string(k));
    for (std::size_t i = 0; i < space_.num_vertices(); ++i)
        for (int j = 1; j <= space_.count(i); ++j)
            names.push_back("z[" + space_.vertex(i) + "," + std::to_string(j) + "]");
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        std::string mono;
        for (std::size_t k = 0; k < t.exps.size(); ++k) {
            if (t.exps[k] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[k];
            if (t.exps[k] != 1) mono += "^" + std::to_string(t.exps[k]);
        }
        Integer c = t.coeff;
        bool negative = c < 0;
        if (negative) c = -c;
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        if (mono.empty()) {
            os << c.get_str();
        } else {
            if (c != 1) os << c.get_str() << "*";
            os << mono;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Division

namespace {

struct LexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const { return lex_greater(a, b); }
};

std::optional<LaurentPoly> divide_impl(const LaurentPoly& p, const LaurentPoly& d) {
    check_same_space(p, d);
    if (d.is_zero()) throw Error("division by zero polynomial");
    const VarSpace& space = p.space();
    if (p.is_zero()) return LaurentPoly(space);

    if (d.is_monomial()) {
        const Term& m = d.leading_term();
        std::vector<Term> out;
        out.reserve(p.size());
        for (const auto& t : p.terms()) {
            if (!mpz_divisible_p(t.coeff.get_mpz_t(), m.coeff.get_mpz_t())) return std::nullopt;
            Term q{Exponents(t.exps.size()), 0};
            for (std::size_t k = 0; k < q.exps.size(); ++k) q.exps[k] = t.exps[k] - m.exps[k];
            mpz_divexact(q.coeff.get_mpz_t(), t.coeff.get_mpz_t(), m.coeff.get_mpz_t());
            out.push_back(std::move(q));
        }
        return LaurentPoly::from_canonical_terms(space, std::move(out));
    }

    // Shift both into the polynomial ring; the shifted divisor has no monomial
    // content, so a Laurent quotient exists iff a polynomial quotient does.
    const Exponents pmin = p.min_exponents();
    const Exponents dmin = d.min_exponents();
    const std::size_t n = space.size();
    auto shift = [n](const Exponents& e, const Exponents& by, int sign) {
        Exponents r(n);
        for (std::size_t k = 0; k < n; ++k) r[k] = e[k] + sign * by[k];
        return r;
    };

    std::vector<Term> divisor;
    divisor.reserve(d.size());
    for (const auto& t : d.terms()) divisor.push_back(Term{shift(t.exps, dmin, -1), t.coeff});
    const Term& lead = divisor.front();

    std::map<Exponents, Integer, LexGreater> rem;
    for (const auto& t : p.terms()) rem.emplace(shift(t.exps, pmin, -1), t.coeff);

    std::vector<Term> quotient;
    while (!rem.empty()) {
        auto top = rem.begin();
        Exponents qe(n);
        for (std::size_t k = 0; k < n; ++k) {
            qe[k] = top->first[k] - lead.exps[k];
            if (qe[k] < 0) return std::nullopt;
        }
        if (!mpz_divisible_p(top->second.get_mpz_t(), lead.coeff.get_mpz_t())) return std::nullopt;
        Integer qc;
        mpz_divexact(qc.get_mpz_t(), top->second.get_mpz_t(), lead.coeff.get_mpz_t());
        rem.erase(top);
        for (std::size_t k = 1; k < divisor.size(); ++k) {
            Exponents e = add_exps(divisor[k].exps, qe);
            auto [it, inserted] = rem.try_emplace(std::move(e), 0);
            mpz_submul(it->second.get_mpz_t(), qc.get_mpz_t(), divisor[k].coeff.get_mpz_t());
            if (it->second == 0) rem.erase(it);
        }
        quotient.push_back(Term{std::move(qe), std::move(qc)});
    }
    Exponents back(n);
    for (std::size_t k = 0; k < n; ++k) back[k] = pmin[k] - dmin[k];
    for (auto& t : quotient) t.exps = add_exps(t.exps, back);
    return LaurentPoly::from_canonical_terms(space, std::move(quotient));
}

} // namespace

std::optional<LaurentPoly> try_exact_div(const LaurentPoly& p, const LaurentPoly& d) {
    return divide_impl(p, d);
}

LaurentPoly exact_div(const LaurentPoly& p, const LaurentPoly& d) {
    if (auto q = divide_impl(p, d)) return std::move(*q);
    throw NotDivisible();
}

LaurentPoly divide_by_difference(const LaurentPoly& p, std::size_t hi, std::size_t lo) {
    const std::size_t n = p.space().size();
    if (hi >= n || lo >= n || hi == lo) throw Error("invalid variable pair for binomial division");
    if (p.is_zero()) return p;

    // Group terms by (other exponents, e_hi + e_lo); within a group this is
    // synthetic division of a homogeneous bivariate Laurent polynomial by (x - y).
    struct Keyed {
        Exponents key;
        std::int32_t k;
        const Integer* c;
    };
    std::vector<Keyed> items;
    items.reserve(p.size());
    for (const auto& t : p.terms()) {
        Exponents key = t.exps;
        key[hi] = t.exps[hi] + t.exps[lo];
        key[lo] = 0;
        items.push_back(Keyed{std::move(key), t.exps[hi], &t.coeff});
    }
    std::sort(items.begin(), items.end(), [](const Keyed& a, const Keyed& b) {
        if (a.key != b.key) return a.key < b.key;
        return a.k > b.k;
    });

    std::vector<Term> out;
    std::size_t i = 0;
    while (i < items.size()) {
        std::size_t j = i;
        while (j < items.size() && items[j].key == items[i].key) ++j;
        const std::int32_t s = items[i].key[hi];
        // b_{k-1} = c_k + b_k, walking k downwards from the top exponent.
        Integer b = 0;
        std::int32_t k = items[i].k;
        std::size_t idx = i;
        const std::int32_t kmin = items[j - 1].k;
        while (k >= kmin) {
            if (idx < j && items[idx].k == k) {
                b += *items[idx].c;
                ++idx;
            }
            if (k == kmin) break;
            if (b != 0) {
                Exponents e = items[i].key;
                e[hi] = k - 1;
                e[lo] = s - k;
                out.push_back(Term{std::move(e), b});
            }
            --k;
        }
        if (b != 0) throw NotDivisible("remainder modulo the binomial is nonzero");
        i = j;
    }
    return LaurentPoly::from_terms(p.space(), std::move(out));
}

// ---------------------------------------------------------------------------
// Weyl group action

VertexPermutation identity_permutation(const VarSpace& space) {
    VertexPermutation w(space.num_vertices());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i].resize(static_cast<std::size_t>(space.count(i)));
        std::iota(w[i].begin(), w[i].end(), 0);
    }
    return w;
}

VertexPermutation compose(const VertexPermutation& b, const VertexPermutation& a) {
    if (a.size() != b.size()) throw Error("permutation size mismatch");
    VertexPermutation r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) throw Error("permutation size mismatch");
        r[i].resize(a[i].size());
        for (std::size_t j = 0; j < a[i].size(); ++j) r[i][j] = b[i].at(static_cast<std::size_t>(a[i][j]));
    }
    return r;
}

namespace {

void check_permutation(const VarSpace& space, const VertexPermutation& w) {
    if (w.size() != space.num_vertices()) throw Error("permutation size mismatch");
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].size() != static_cast<std::size_t>(space.count(i))) throw Error("permutation size mismatch");
        std::vector<bool> seen(w[i].size(), false);
        for (int x : w[i]) {
            if (x < 0 || static_cast<std::size_t>(x) >= w[i].size() || seen[static_cast<std::size_t>(x)])
                throw Error("not a permutation");
            seen[static_cast<std::size_t>(x)] = true;
        }
    }
}

} // namespace

LaurentPoly permute(const LaurentPoly& p, const VertexPermutation& w) {
    const VarSpace& space = p.space();
    check_permutation(space, w);
    std::vector<std::size_t> target(space.size());
    std::iota(target.begin(), target.end(), 0);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w[i].size(); ++j)
            target[space.z_index(i, j)] = space.z_index(i, static_cast<std::size_t>(w[i][j]));
    return relabel(p, space, target);
}

VertexPermutation WeylCosetRep::permutation(const DimVector& d) const {
    if (first_block.size() != d.size()) throw Error("coset representative size mismatch");
    VertexPermutation w(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto n = static_cast<std::size_t>(d[i]);
        std::vector<bool> in_first(n, false);
        for (int x : first_block[i]) in_first.at(static_cast<std::size_t>(x)) = true;
        for (int x : first_block[i]) w[i].push_back(x);
        for (std::size_t x = 0; x < n; ++x)
            if (!in_first[x]) w[i].push_back(static_cast<int>(x));
    }
    return w;
}

std::vector<WeylCosetRep> weyl_coset_reps(const DimVector& a, const DimVector& b) {
    if (a.size() != b.size()) throw Error("dimension vectors of different length");
    // Per-vertex subset lists, then their cartesian product.
    std::vector<std::vector<std::vector<int>>> per_vertex(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        int n = a[i] + b[i];
        int k = a[i];
        std::vector<int> subset(static_cast<std::size_t>(k));
        std::iota(subset.begin(), subset.end(), 0);
        while (true) {
            per_vertex[i].push_back(subset);
            int pos = k - 1;
            while (pos >= 0 && subset[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
            if (pos < 0) break;
            ++subset[static_cast<std::size_t>(pos)];
            for (int t = pos + 1; t < k; ++t)
                subset[static_cast<std::size_t>(t)] = subset[static_cast<std::size_t>(t - 1)] + 1;
        }
    }
    std::vector<WeylCosetRep> out{WeylCosetRep{}};
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<WeylCosetRep> next;
        for (const auto& rep : out)
            for (const auto& s : per_vertex[i]) {
                WeylCosetRep r = rep;
                r.first_block.push_back(s);
                next.push_back(std::move(r));
            }
        out = std::move(next);
    }
    return out;
}

bool is_symmetric(const LaurentPoly& p) {
    const VarSpace& space = p.space();
    // Group terms by their sorted representative: symmetric iff every orbit is
    // complete and carries a single coefficient.
    struct Orbit {
        const Integer* coeff;
        std::uint64_t seen;
    };
    std::unordered_map<Exponents, Orbit, ExponentsHash> orbits;
    orbits.reserve(p.size());
    for (const auto& t : p.terms()) {
        Exponents rep = t.exps;
        for (std::size_t i = 0; i < space.num_vertices(); ++i) {
            auto first = rep.begin() + static_cast<long>(space.z_offset(i));
            std::sort(first, first + space.count(i), std::greater<>());
        }
        auto [it, fresh] = orbits.try_emplace(std::move(rep), Orbit{&t.coeff, 0});
        if (*it->second.coeff != t.coeff) return false;
        ++it->second.seen;
    }
    for (const auto& [rep, orbit] : orbits) {
        std::uint64_t size = 1;
        for (std::size_t i = 0; i < space.num_vertices(); ++i) {
            const std::size_t off = space.z_offset(i);
            // Multinomial n! / prod m_k! as a product of binomials over runs of equal exponents.
            std::uint64_t placed = 0;
            for (std::size_t j = 0; j < static_cast<std::size_t>(space.count(i));) {
                std::size_t k = j;
                while (k < static_cast<std::size_t>(space.count(i)) && rep[off + k] == rep[off + j]) ++k;
                for (std::uint64_t x = 1; x <= k - j; ++x) size = size * (placed + x) / x;
                placed += k - j;
                j = k;
            }
        }
        if (orbit.seen != size) return false;
    }
    return true;
}

LaurentPoly truncate(const LaurentPoly& p, Window window) {
    std::vector<Window> all(p.space().num_z(), window);
    return truncate(p, all);
}

LaurentPoly truncate(const LaurentPoly& p, std::span<const Window> windows) {
    const VarSpace& space = p.space();
    if (windows.size() != space.num_z()) throw Error("one window per z variable required");
    for (const auto& w : windows)
        if (w.lo > w.hi) throw Error("empty truncation window");
    const auto r = static_cast<std::size_t>(space.rank());
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        bool keep = true;
        for (std::size_t k = 0; k < windows.size() && keep; ++k) {
            int e = t.exps[r + k];
            keep = e >= windows[k].lo && e <= windows[k].hi;
        }
        if (keep) out.push_back(t);
    }
    return LaurentPoly::from_canonical_terms(space, std::move(out));
}

LaurentPoly relabel(const LaurentPoly& p, const VarSpace& target, std::span<const std::size_t> index_map) {
    if (index_map.size() != p.space().size()) throw Error("relabel map length differs from variable count");
    for (std::size_t k : index_map)
        if (k >= target.size()) throw Error("relabel target index out of range");
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
        Exponents e(target.size(), 0);
        for (std::size_t k = 0; k < index_map.size(); ++k) e[index_map[k]] += t.exps[k];
        out.push_back(Term{std::move(e), t.coeff});
    }
    return LaurentPoly::from_terms(target, std::move(out));
}

} // namespace kha
