#include "kha/shuffle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "kha/error.hpp"

namespace kha {

ShuffleElement::ShuffleElement(LaurentPoly payload) : payload_(std::move(payload)) {
    if (!is_symmetric(payload_)) throw Error("shuffle element payload is not symmetric");
}

FramedModuleElement::FramedModuleElement(DimVector framing, LaurentPoly payload)
    : framing_(std::move(framing)), payload_(std::move(payload)) {
    const VarSpace& s = payload_.space();
    if (s.num_vertices() == 0 || s.vertex(0) != kFramingVertex || s.count(0) != 1)
        throw Error("framed module vector needs exactly one variable at the framing vertex, listed first");
    if (framing_.size() + 1 != s.num_vertices()) throw Error("framing vector length differs from vertex count");
    if (!is_symmetric(payload_)) throw Error("framed module payload is not symmetric");
}

DimVector FramedModuleElement::dim() const {
    const DimVector all = payload_.space().dims();
    return DimVector(std::vector<int>(all.entries().begin() + 1, all.entries().end()));
}

std::vector<int> block_cocharacter(const DimVector& a, const DimVector& b) {
    if (a.size() != b.size()) throw Error("dimension vectors of different length");
    std::vector<int> lambda;
    for (std::size_t i = 0; i < a.size(); ++i) {
        lambda.insert(lambda.end(), static_cast<std::size_t>(a[i]), 1);
        lambda.insert(lambda.end(), static_cast<std::size_t>(b[i]), 0);
    }
    return lambda;
}

LaurentPoly twist_weight(const CutBundleWeights& cut) {
    const VarSpace& space = cut.space;
    if (cut.cocharacter.size() != space.num_z()) throw Error("cocharacter length differs from z-variable count");
    const auto r = static_cast<std::size_t>(space.rank());
    Exponents total(space.size(), 0);
    for (const auto& chi : cut.characters) {
        if (chi.size() != space.size()) throw Error("cut character length differs from variable count");
        long long pairing = 0;
        for (std::size_t k = 0; k < cut.cocharacter.size(); ++k)
            pairing += static_cast<long long>(cut.cocharacter[k]) * chi[r + k];
        if (pairing < 0)
            for (std::size_t k = 0; k < total.size(); ++k) total[k] += chi[k];
    }
    return LaurentPoly::monomial(space, std::move(total));
}

namespace {

// Sum over coset representatives over the common denominator, valid for any integrand.
LaurentPoly coset_symmetrize(const LaurentPoly& h, const DimVector& a, const DimVector& b,
                             const std::vector<std::size_t>& active) {
    const VarSpace& space = h.space();
    const DimVector d = a + b;

    const LaurentPoly one = LaurentPoly::constant(space, 1);
    std::vector<Term> collected;
    for (const WeylCosetRep& rep : weyl_coset_reps(a, b)) {
        LaurentPoly term = permute(h, rep.permutation(d));
        // Bring w(h / Delta) over the common denominator D = prod_{p<r} (1 - z_r / z_p).
        Exponents shift(space.size(), 0);
        Integer sign = 1;
        for (std::size_t i : active) {
            const auto n = static_cast<std::size_t>(d[i]);
            std::vector<bool> left(n, false);
            for (int x : rep.first_block[i]) left[static_cast<std::size_t>(x)] = true;
            for (std::size_t p = 0; p < n; ++p) {
                for (std::size_t r = p + 1; r < n; ++r) {
                    std::size_t zp = space.z_index(i, p), zr = space.z_index(i, r);
                    if (left[p] == left[r]) {
                        Exponents e(space.size(), 0);
                        e[zr] = 1;
                        e[zp] = -1;
                        term *= one - LaurentPoly::monomial(space, std::move(e));
                    } else if (!left[p]) {
                        sign = -sign;
                        shift[zr] += 1;
                        shift[zp] -= 1;
                    }
                }
            }
        }
        term = term.mul_monomial(shift, sign);
        for (const auto& t : term.terms()) collected.push_back(t);
    }
    LaurentPoly sum = LaurentPoly::from_terms(space, std::move(collected));

    try {
        for (std::size_t i : active) {
            const auto n = static_cast<std::size_t>(d[i]);
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t r = p + 1; r < n; ++r) {
                    std::size_t zp = space.z_index(i, p), zr = space.z_index(i, r);
                    // 1 / (1 - z_r/z_p) = z_p / (z_p - z_r)
                    sum = divide_by_difference(sum, zp, zr);
                    Exponents e(space.size(), 0);
                    e[zp] = 1;
                    sum = sum.mul_monomial(e);
                }
        }
    } catch (const NotDivisible&) {
        throw PolynomialityError("Weyl denominators do not cancel");
    }
    return sum;
}

// Invariance of h under S_a x S_b at every active vertex.
bool block_symmetric(const LaurentPoly& h, const DimVector& a, const std::vector<std::size_t>& active) {
    const VarSpace& space = h.space();
    for (std::size_t i : active) {
        for (int j = 0; j + 1 < space.count(i); ++j) {
            if (j + 1 == a[i]) continue;
            std::size_t x = space.z_index(i, static_cast<std::size_t>(j)), y = x + 1;
            for (const auto& t : h.terms()) {
                if (t.exps[x] == t.exps[y]) continue;
                Exponents swapped = t.exps;
                std::swap(swapped[x], swapped[y]);
                if (h.coefficient(swapped) != t.coeff) return false;
            }
        }
    }
    return true;
}

// Monomials of the Schur polynomial s_lambda in n variables, lambda nonincreasing.
using SchurTerms = std::vector<std::pair<std::vector<int>, Integer>>;

// Shared across calls; entries are never erased, so references stay valid.
const SchurTerms& schur_terms(const std::vector<int>& lambda) {
    static std::mutex mutex;
    static std::map<std::vector<int>, SchurTerms> cache;
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(lambda);
        if (it != cache.end()) return it->second;
    }
    const std::size_t n = lambda.size();
    VarSpace s(0, {{"z", static_cast<int>(n)}});
    std::vector<int> mu(n);
    for (std::size_t p = 0; p < n; ++p) mu[p] = lambda[p] + static_cast<int>(n - 1 - p);
    // Alternant a_mu, then divide by the Vandermonde product of (z_p - z_r).
    std::vector<Term> alt;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        Exponents e(n, 0);
        int sign = 1;
        for (std::size_t p = 0; p < n; ++p) {
            e[perm[p]] = mu[p];
            for (std::size_t r = p + 1; r < n; ++r)
                if (perm[p] > perm[r]) sign = -sign;
        }
        alt.push_back(Term{std::move(e), sign});
    } while (std::next_permutation(perm.begin(), perm.end()));
    LaurentPoly q = LaurentPoly::from_terms(s, std::move(alt));
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t r = p + 1; r < n; ++r) q = divide_by_difference(q, p, r);
    SchurTerms out;
    for (const auto& t : q.terms()) out.emplace_back(std::vector<int>(t.exps.begin(), t.exps.end()), t.coeff);
    std::lock_guard lock(mutex);
    return cache.emplace(lambda, std::move(out)).first->second;
}

// For block-symmetric h the coset sum equals the full antisymmetrization of
// h z^rho divided by the Vandermonde, i.e. a sum of Schur polynomials.
LaurentPoly schur_symmetrize(const LaurentPoly& h, const DimVector& d, const std::vector<std::size_t>& active) {
    const VarSpace& space = h.space();
    std::vector<Term> alternants;
    alternants.reserve(h.size());
    std::vector<int> block;
    for (const auto& t : h.terms()) {
        Exponents e = t.exps;
        int sign = 1;
        bool vanishes = false;
        for (std::size_t i : active) {
            const auto n = static_cast<std::size_t>(d[i]);
            const std::size_t off = space.z_index(i, 0);
            block.assign(n, 0);
            for (std::size_t p = 0; p < n; ++p) block[p] = e[off + p] + static_cast<int>(n - 1 - p);
            for (std::size_t p = 1; p < n; ++p)
                for (std::size_t r = p; r > 0 && block[r - 1] <= block[r]; --r) {
                    if (block[r - 1] == block[r]) vanishes = true;
                    std::swap(block[r - 1], block[r]);
                    sign = -sign;
                }
            if (vanishes) break;
            for (std::size_t p = 0; p < n; ++p) e[off + p] = block[p];
        }
        if (vanishes) continue;
        alternants.push_back(Term{std::move(e), sign < 0 ? Integer(-t.coeff) : t.coeff});
    }
    const LaurentPoly strict = LaurentPoly::from_terms(space, std::move(alternants));

    TermAccumulator out(space);
    std::vector<const SchurTerms*> factors(active.size());
    std::vector<int> shifts(active.size());
    for (const auto& t : strict.terms()) {
        for (std::size_t k = 0; k < active.size(); ++k) {
            const std::size_t i = active[k];
            const auto n = static_cast<std::size_t>(d[i]);
            const std::size_t off = space.z_index(i, 0);
            std::vector<int> lambda(n);
            for (std::size_t p = 0; p < n; ++p) lambda[p] = t.exps[off + p] - static_cast<int>(n - 1 - p);
            shifts[k] = lambda.back();
            for (auto& x : lambda) x -= shifts[k];
            factors[k] = &schur_terms(lambda);
        }
        std::function<void(std::size_t, Exponents&, const Integer&)> expand = [&](std::size_t k, Exponents& e,
                                                                                 const Integer& c) {
            const std::size_t off = space.z_index(active[k], 0);
            const bool last = k + 1 == active.size();
            for (const auto& [m, coeff] : *factors[k]) {
                for (std::size_t p = 0; p < m.size(); ++p) e[off + p] = m[p] + shifts[k];
                if (last) {
                    out.add_product(e, c, coeff);
                } else {
                    expand(k + 1, e, c * coeff);
                }
            }
        };
        Exponents e = t.exps;
        expand(0, e, t.coeff);
    }
    return out.take();
}

} // namespace

LaurentPoly weyl_symmetrize(const LaurentPoly& h, const DimVector& a, const DimVector& b) {
    const VarSpace& space = h.space();
    const DimVector d = a + b;
    if (!(d == space.dims())) throw SpaceMismatch("split does not match the integrand's dimension vector");

    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (a[i] > 0 && b[i] > 0) active.push_back(i);
    if (active.empty()) return h;
    if (block_symmetric(h, a, active)) return schur_symmetrize(h, d, active);
    return coset_symmetrize(h, a, b, active);
}

// ---------------------------------------------------------------------------
// ShuffleAlgebra

ShuffleAlgebra::ShuffleAlgebra(Quiver quiver, TorusWeighting torus)
    : quiver_(std::move(quiver)), torus_(std::move(torus)), cache_(std::make_shared<Cache>()) {
    for (const auto& [edge, _] : torus_.weights()) quiver_.require_edge(edge);
    const std::size_t n = quiver_.num_vertices();
    edge_weights_.assign(n, std::vector<std::vector<std::vector<int>>>(n));
    for (std::size_t e = 0; e < quiver_.num_edges(); ++e)
        edge_weights_[quiver_.source_index(e)][quiver_.target_index(e)].push_back(
            torus_.weight(quiver_.edge(e).id));
}

VarSpace ShuffleAlgebra::space(const DimVector& d) const {
    return VarSpace::for_dims(torus_.rank(), quiver_.vertices(), d);
}

VarSpace ShuffleAlgebra::framed_space(const DimVector& d) const {
    if (d.size() != quiver_.num_vertices()) throw Error("dimension vector length differs from vertex count");
    std::vector<std::pair<std::string, int>> counts{{std::string(kFramingVertex), 1}};
    for (std::size_t i = 0; i < d.size(); ++i) counts.emplace_back(quiver_.vertices()[i], d[i]);
    return VarSpace(torus_.rank(), std::move(counts));
}

void ShuffleAlgebra::check_element_space(const VarSpace& space) const {
    if (space.rank() != torus_.rank()) throw SpaceMismatch("torus rank differs from the algebra's");
    if (space.num_vertices() != quiver_.num_vertices()) throw SpaceMismatch("vertex set differs from the algebra's");
    for (std::size_t i = 0; i < space.num_vertices(); ++i)
        if (space.vertex(i) != quiver_.vertices()[i]) throw SpaceMismatch("vertex set differs from the algebra's");
}

ShuffleElement ShuffleAlgebra::element(const LaurentPoly& payload) const {
    check_element_space(payload.space());
    return ShuffleElement(payload);
}

ShuffleElement ShuffleAlgebra::unit() const {
    return ShuffleElement(LaurentPoly::constant(space(DimVector::zero(quiver_.num_vertices())), 1));
}

ShuffleElement ShuffleAlgebra::generator(std::size_t vertex, int power) const {
    VarSpace s = space(DimVector::unit(quiver_.num_vertices(), vertex));
    return ShuffleElement(LaurentPoly::variable(s, s.z_index(vertex, 0), power));
}

FramedModuleElement ShuffleAlgebra::framed_element(const DimVector& framing, const LaurentPoly& payload) const {
    if (framing.size() != quiver_.num_vertices()) throw Error("framing vector length differs from vertex count");
    const VarSpace& s = payload.space();
    if (s.rank() != torus_.rank()) throw SpaceMismatch("torus rank differs from the algebra's");
    if (s.num_vertices() != quiver_.num_vertices() + 1) throw SpaceMismatch("framed vertex set differs");
    for (std::size_t i = 0; i < quiver_.num_vertices(); ++i)
        if (s.vertex(i + 1) != quiver_.vertices()[i]) throw SpaceMismatch("framed vertex set differs");
    return FramedModuleElement(framing, payload);
}

RationalFunction ShuffleAlgebra::zeta(std::string_view i, std::string_view i_prime) const {
    std::size_t s = quiver_.require_vertex(i);
    std::size_t t = quiver_.require_vertex(i_prime);
    VarSpace space(torus_.rank(), {{"z", 1}});
    const std::size_t z = space.z_index(0, 0);
    const LaurentPoly one = LaurentPoly::constant(space, 1);
    LaurentPoly num = one;
    for (const auto& w : edge_weights_[s][t]) {
        Exponents e(space.size(), 0);
        for (std::size_t k = 0; k < w.size(); ++k) e[k] = -w[k];
        e[z] = -1;
        num *= one - LaurentPoly::monomial(space, std::move(e));
    }
    if (s != t) return RationalFunction(num);
    return RationalFunction(num, one - LaurentPoly::variable(space, z, -1));
}

LaurentPoly ShuffleAlgebra::normal_factor_in(const VarSpace& target, const DimVector& a, std::size_t shift) const {
    const LaurentPoly one = LaurentPoly::constant(target, 1);
    LaurentPoly acc = one;
    const std::size_t n = quiver_.num_vertices();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t ip = 0; ip < n; ++ip) {
            for (const auto& w : edge_weights_[i][ip]) {
                const auto left = static_cast<std::size_t>(a[i + shift]);
                const auto total = static_cast<std::size_t>(target.count(ip + shift));
                const auto right_start = static_cast<std::size_t>(a[ip + shift]);
                for (std::size_t j = 0; j < left; ++j) {
                    for (std::size_t jp = right_start; jp < total; ++jp) {
                        Exponents e(target.size(), 0);
                        for (std::size_t k = 0; k < w.size(); ++k) e[k] = -w[k];
                        e[target.z_index(i + shift, j)] -= 1;
                        e[target.z_index(ip + shift, jp)] += 1;
                        acc *= one - LaurentPoly::monomial(target, std::move(e));
                    }
                }
            }
        }
    }
    return acc;
}

LaurentPoly ShuffleAlgebra::normal_factor(const DimVector& a, const DimVector& b) const {
    auto key = std::make_pair(a, b);
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->normal.find(key);
        if (it != cache_->normal.end()) return it->second;
    }
    LaurentPoly value = normal_factor_in(space(a + b), a, 0);
    std::lock_guard<std::mutex> lock(cache_->mutex);
    cache_->normal.emplace(std::move(key), value);
    return value;
}

namespace {

// Index map from a block's space into the target space: q's fixed, z_{i,j} -> z_{i+shift, offset_i + j}.
std::vector<std::size_t> block_map(const VarSpace& from, const VarSpace& to, std::size_t shift,
                                   const std::vector<int>& offsets) {
    std::vector<std::size_t> map(from.size());
    for (int k = 0; k < from.rank(); ++k) map[static_cast<std::size_t>(k)] = static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < from.num_vertices(); ++i)
        for (int j = 0; j < from.count(i); ++j)
            map[from.z_index(i, static_cast<std::size_t>(j))] =
                to.z_index(i + shift, static_cast<std::size_t>(offsets[i] + j));
    return map;
}

} // namespace

ShuffleElement ShuffleAlgebra::multiply_weighted(const ShuffleElement& f, const ShuffleElement& g,
                                                 const LaurentPoly& weight) const {
    check_element_space(f.payload().space());
    check_element_space(g.payload().space());
    const DimVector a = f.dim(), b = g.dim(), d = a + b;
    const VarSpace target = space(d);
    if (!(weight.space() == target)) throw SpaceMismatch("integrand weight lives in a different space");

    std::vector<int> zeros(d.size(), 0);
    LaurentPoly lhs = relabel(f.payload(), target, block_map(f.payload().space(), target, 0, zeros));
    LaurentPoly rhs = relabel(g.payload(), target, block_map(g.payload().space(), target, 0, a.entries()));

    LaurentPoly h = normal_factor(a, b) * (lhs * rhs);
    if (!weight.is_one()) h *= weight;
    LaurentPoly result = weyl_symmetrize(h, a, b);
    if (!is_symmetric(result)) throw PolynomialityError("shuffle product is not symmetric");
    return ShuffleElement(std::move(result));
}

ShuffleElement ShuffleAlgebra::multiply(const ShuffleElement& f, const ShuffleElement& g) const {
    const DimVector d = f.dim() + g.dim();
    return multiply_weighted(f, g, LaurentPoly::constant(space(d), 1));
}

CutBundleWeights ShuffleAlgebra::cut_bundle(std::span<const std::string> cut_edges, const DimVector& a,
                                            const DimVector& b) const {
    CutBundleWeights cut;
    const DimVector d = a + b;
    cut.space = space(d);
    cut.left = a;
    cut.right = b;
    cut.cocharacter = block_cocharacter(a, b);
    for (const auto& id : cut_edges) {
        std::size_t e = quiver_.require_edge(id);
        std::size_t s = quiver_.source_index(e), t = quiver_.target_index(e);
        std::vector<int> w = torus_.weight(id);
        for (int j = 0; j < d[s]; ++j)
            for (int k = 0; k < d[t]; ++k) {
                Exponents chi(cut.space.size(), 0);
                for (std::size_t x = 0; x < w.size(); ++x) chi[x] = w[x];
                chi[cut.space.z_index(s, static_cast<std::size_t>(j))] -= 1;
                chi[cut.space.z_index(t, static_cast<std::size_t>(k))] += 1;
                cut.characters.push_back(std::move(chi));
            }
    }
    return cut;
}

ShuffleElement ShuffleAlgebra::twisted_multiply(const ShuffleElement& f, const ShuffleElement& g,
                                                const CutBundleWeights& cut) const {
    if (!(cut.left == f.dim()) || !(cut.right == g.dim()))
        throw SpaceMismatch("cut bundle was built for a different split");
    if (cut.cocharacter != block_cocharacter(cut.left, cut.right))
        throw Error("cut bundle cocharacter is not the block cocharacter of its split");
    return multiply_weighted(f, g, twist_weight(cut));
}

FramedModuleElement ShuffleAlgebra::act(const ShuffleElement& f, const FramedModuleElement& m) const {
    check_element_space(f.payload().space());
    const DimVector a = f.dim(), d = m.dim();
    const VarSpace target = framed_space(a + d);
    if (!(m.payload().space() == framed_space(d))) throw SpaceMismatch("module vector lives over a different quiver");

    std::vector<int> zeros(a.size(), 0);
    LaurentPoly lhs = relabel(f.payload(), target, block_map(f.payload().space(), target, 1, zeros));
    // m's space has "inf" at vertex 0; shift the remaining vertices past the left block.
    std::vector<int> offsets{0};
    offsets.insert(offsets.end(), a.entries().begin(), a.entries().end());
    LaurentPoly rhs = relabel(m.payload(), target, block_map(m.payload().space(), target, 0, offsets));

    const LaurentPoly nf = normal_factor(a, d);
    std::vector<std::size_t> nf_map(nf.space().size());
    std::iota(nf_map.begin(), nf_map.begin() + torus_.rank(), 0);
    for (std::size_t i = 0; i < quiver_.num_vertices(); ++i)
        for (int j = 0; j < nf.space().count(i); ++j)
            nf_map[nf.space().z_index(i, static_cast<std::size_t>(j))] =
                target.z_index(i + 1, static_cast<std::size_t>(j));
    LaurentPoly h = relabel(nf, target, nf_map) * (lhs * rhs);

    std::vector<int> left{0}, right{1};
    left.insert(left.end(), a.entries().begin(), a.entries().end());
    right.insert(right.end(), d.entries().begin(), d.entries().end());
    LaurentPoly result = weyl_symmetrize(h, DimVector(left), DimVector(right));
    return FramedModuleElement(m.framing(), std::move(result));
}

ShuffleAlgebra jordan_algebra() {
    Quiver q = jordan_quiver("x");
    TorusWeighting t(q, 1, {{"x", {1}}});
    return ShuffleAlgebra(std::move(q), std::move(t));
}

// ---------------------------------------------------------------------------
// Quantum loop relation search

RelationSearchReport relation_search(const ShuffleAlgebra& algebra, int r_max,
                                     const std::vector<LaurentPoly>& candidates) {
    const Quiver& q = algebra.quiver();
    if (q.num_vertices() != 1 || q.num_edges() != 1 || algebra.torus().rank() != 1)
        throw Error("relation search requires the Jordan quiver with a rank-1 torus");
    if (r_max < 0) throw Error("degree bound must be nonnegative");

    RelationSearchReport report;
    report.r_max = r_max;
    report.candidates = candidates;
    if (candidates.empty()) {
        report.message = "no candidates supplied";
        return report;
    }

    const VarSpace two = algebra.space(DimVector({2}));
    std::vector<std::vector<LaurentPoly>> prod(static_cast<std::size_t>(r_max) + 2);
    for (int x = 0; x <= r_max + 1; ++x)
        for (int y = 0; y <= r_max + 1; ++y)
            prod[static_cast<std::size_t>(x)].push_back(
                algebra.multiply(algebra.generator(0, x), algebra.generator(0, y)).payload());
    auto e = [&](int x, int y) -> const LaurentPoly& {
        return prod[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    };

    std::vector<std::size_t> hits;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const LaurentPoly& cand = candidates[c];
        if (!(cand.space() == two.q_only()) || !cand.is_monomial())
            throw Error("relation candidates must be monomials in the torus parameter");
        std::vector<std::size_t> map{0};
        LaurentPoly alpha = relabel(cand, two, map);
        bool ok = true;
        for (int r = 0; r <= r_max && ok; ++r)
            for (int s = 0; s <= r_max && ok; ++s) {
                LaurentPoly lhs = e(r, s + 1) - alpha * e(s + 1, r);
                LaurentPoly rhs = alpha * e(r + 1, s) - e(s, r + 1);
                ok = lhs == rhs;
            }
        report.satisfied.push_back(ok);
        if (ok) hits.push_back(c);
    }
    if (hits.size() == 1) {
        report.alpha = candidates[hits.front()];
        report.message = "unique constant found";
    } else if (hits.empty()) {
        report.message = "no candidate satisfies the relations";
    } else {
        report.message = "several candidates satisfy the relations";
    }
    return report;
}

} // namespace kha
