#include "kha/wallcross.hpp"

#include <algorithm>
#include <map>

#include "kha/error.hpp"

namespace kha {

HNStratum::HNStratum(const StabilityCondition& theta, const DimVector& d, std::vector<DimVector> parts)
    : parts_(std::move(parts)) {
    if (parts_.size() < 2) throw Error("a stratum needs at least two parts");
    DimVector sum = DimVector::zero(d.size());
    for (const auto& p : parts_) {
        if (p.size() != d.size()) throw Error("part length differs from the dimension vector");
        if (p.is_zero()) throw Error("stratum parts must be nonzero");
        sum = sum + p;
        slopes_.push_back(slope(theta, p));
    }
    if (!(sum == d)) throw Error("stratum parts do not sum to the dimension vector");
    for (std::size_t k = 1; k < slopes_.size(); ++k)
        if (!(slopes_[k - 1] > slopes_[k])) throw Error("stratum slopes are not strictly decreasing");
}

bool hn_less(const HNStratum& a, const HNStratum& b) { return a.length() > b.length(); }

namespace {

// Calls f on every nonzero c <= rest in lexicographic order.
template <class F>
void for_each_subvector(const DimVector& rest, F&& f) {
    std::vector<int> c(rest.size(), 0);
    while (true) {
        std::size_t k = c.size();
        while (k > 0) {
            --k;
            if (c[k] < rest[k]) {
                ++c[k];
                std::fill(c.begin() + static_cast<long>(k) + 1, c.end(), 0);
                break;
            }
            if (k == 0) return;
        }
        if (c.empty()) return;
        DimVector part(c);
        if (!part.is_zero()) f(part);
    }
}

void extend(const StabilityCondition& theta, const DimVector& rest, const Rational* last,
            std::vector<DimVector>& prefix, std::vector<std::vector<DimVector>>& out) {
    if (rest.is_zero()) {
        if (prefix.size() >= 2) out.push_back(prefix);
        return;
    }
    for_each_subvector(rest, [&](const DimVector& part) {
        Rational mu = slope(theta, part);
        if (last && !(mu < *last)) return;
        prefix.push_back(part);
        extend(theta, rest - part, &mu, prefix, out);
        prefix.pop_back();
    });
}

} // namespace

HNStrata hn_strata(const Quiver& q, const StabilityCondition& theta, const DimVector& d) {
    if (d.size() != q.num_vertices() || theta.size() != q.num_vertices())
        throw Error("stability and dimension vectors must have one entry per vertex");
    if (d.is_zero()) throw Error("HN strata need a nonzero dimension vector");
    std::vector<std::vector<DimVector>> found;
    std::vector<DimVector> prefix;
    extend(theta, d, nullptr, prefix, found);
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    HNStrata result;
    result.d = d;
    for (auto& parts : found) result.strata.emplace_back(theta, d, std::move(parts));
    for (std::size_t i = 0; i < result.strata.size(); ++i)
        for (std::size_t j = 0; j < result.strata.size(); ++j)
            if (hn_less(result.strata[i], result.strata[j])) result.order.emplace_back(i, j);
    return result;
}

bool is_type_a(const Quiver& q) {
    const std::size_t n = q.num_vertices();
    if (n == 0 || q.num_edges() + 1 != n) return false;
    std::vector<bool> seen(n, false);
    for (std::size_t e = 0; e < q.num_edges(); ++e) {
        std::size_t s = q.source_index(e);
        if (q.target_index(e) != s + 1 || seen[s]) return false;
        seen[s] = true;
    }
    return true;
}

std::vector<DimVector> typeA_semistable_dims(std::size_t n, const StabilityCondition& theta) {
    if (theta.size() != n || n == 0) throw Error("stability vector length differs from vertex count");
    bool inc = true, dec = true;
    for (std::size_t k = 1; k < n; ++k) {
        inc = inc && theta[k - 1] < theta[k];
        dec = dec && theta[k - 1] > theta[k];
    }
    std::vector<DimVector> out;
    if (inc) {
        for (std::size_t i = 0; i < n; ++i) out.push_back(DimVector::unit(n, i));
        return out;
    }
    if (!dec) throw Error("unsupported stability for closed-form semistable support");
    for (std::size_t len = 1; len <= n; ++len)
        for (std::size_t a = 0; a + len <= n; ++a) out.push_back(DimVector::interval(n, a, a + len - 1));
    return out;
}

std::vector<std::size_t> rank_profile(std::vector<std::vector<LaurentPoly>> m, const VarSpace& coeffs) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m.front().size();
    LaurentPoly prev = LaurentPoly::constant(coeffs, 1);
    std::size_t k = 0;
    for (std::size_t c = 0; c < cols && k < m.size(); ++c) {
        std::size_t r = k;
        while (r < m.size() && m[r][c].is_zero()) ++r;
        if (r == m.size()) continue;
        std::swap(m[k], m[r]);
        const LaurentPoly& piv = m[k][c];
        for (std::size_t i = k + 1; i < m.size(); ++i) {
            const LaurentPoly f = m[i][c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                LaurentPoly v = piv * m[i][j];
                if (!f.is_zero() && !m[k][j].is_zero()) v -= f * m[k][j];
                m[i][j] = prev.is_one() ? std::move(v) : exact_div(v, prev);
            }
            m[i][c] = LaurentPoly(coeffs);
        }
        prev = piv;
        pivots.push_back(c);
        ++k;
    }
    return pivots;
}

namespace {

// Splits an exponent vector into its q part and its z part.
Exponents q_part(const Exponents& e, int rank) { return Exponents(e.begin(), e.begin() + rank); }
Exponents z_part(const Exponents& e, int rank) { return Exponents(e.begin() + rank, e.end()); }

// Coefficient matrix of `rows` against the given z-monomial columns.
std::vector<std::vector<LaurentPoly>> coefficient_matrix(const std::vector<LaurentPoly>& rows,
                                                         const std::vector<Exponents>& columns,
                                                         const VarSpace& coeffs) {
    std::map<Exponents, std::size_t> col_of;
    for (std::size_t c = 0; c < columns.size(); ++c) col_of.emplace(columns[c], c);
    const int rank = coeffs.rank();
    std::vector<std::vector<LaurentPoly>> m;
    for (const auto& row : rows) {
        std::vector<std::vector<Term>> cells(columns.size());
        for (const auto& t : row.terms()) {
            auto it = col_of.find(z_part(t.exps, rank));
            if (it != col_of.end()) cells[it->second].push_back({q_part(t.exps, rank), t.coeff});
        }
        std::vector<LaurentPoly> out;
        for (auto& cell : cells) out.push_back(LaurentPoly::from_terms(coeffs, std::move(cell)));
        m.push_back(std::move(out));
    }
    return m;
}

} // namespace

std::size_t exact_rank(const std::vector<LaurentPoly>& rows, Window window) {
    if (rows.empty()) return 0;
    const VarSpace& space = rows.front().space();
    std::vector<LaurentPoly> cut;
    std::vector<Exponents> columns;
    for (const auto& r : rows) {
        if (!(r.space() == space)) throw SpaceMismatch("rank rows live in different spaces");
        cut.push_back(truncate(r, window));
        for (const auto& t : cut.back().terms()) columns.push_back(z_part(t.exps, space.rank()));
    }
    std::sort(columns.begin(), columns.end(), lex_greater);
    columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
    VarSpace coeffs = space.q_only();
    return rank_profile(coefficient_matrix(cut, columns, coeffs), coeffs).size();
}

std::vector<Exponents> symmetric_window_basis(const VarSpace& space, Window window) {
    std::vector<Exponents> out{Exponents{}};
    for (std::size_t i = 0; i < space.num_vertices(); ++i) {
        // Nonincreasing sequences of length count(i) in [lo, hi].
        std::vector<Exponents> seqs{Exponents{}};
        for (int j = 0; j < space.count(i); ++j) {
            std::vector<Exponents> next;
            for (const auto& s : seqs) {
                int top = s.empty() ? window.hi : s.back();
                for (int v = top; v >= window.lo; --v) {
                    Exponents t = s;
                    t.push_back(v);
                    next.push_back(std::move(t));
                }
            }
            seqs = std::move(next);
        }
        std::vector<Exponents> combined;
        for (const auto& prefix : out)
            for (const auto& s : seqs) {
                Exponents t = prefix;
                t.insert(t.end(), s.begin(), s.end());
                combined.push_back(std::move(t));
            }
        out = std::move(combined);
    }
    return out;
}

GenerationReport verify_generation(const ShuffleAlgebra& algebra, const StabilityCondition& theta,
                                   const DimVector& d, Window window, int gen_degree) {
    const Quiver& q = algebra.quiver();
    if (!is_type_a(q)) throw Error("generation check requires a linear type-A quiver");
    const std::size_t n = q.num_vertices();
    if (theta.size() != n || d.size() != n) throw Error("stability and dimension vectors must have one entry per vertex");
    for (std::size_t k = 1; k < n; ++k)
        if (!(theta[k - 1] < theta[k])) throw Error("generation check requires strictly increasing stability");
    if (d.is_zero()) throw Error("generation check needs a nonzero dimension vector");
    if (window.lo > window.hi) throw Error("empty truncation window");
    if (gen_degree < 0) throw Error("generator degree bound must be nonnegative");

    GenerationReport report;
    report.d = d;
    report.window = window;
    report.gen_degree = gen_degree;

    // Vertex of each factor, highest stability first.
    std::vector<std::size_t> slots;
    for (std::size_t i = n; i-- > 0;) slots.insert(slots.end(), static_cast<std::size_t>(d[i]), i);

    std::vector<LaurentPoly> rows;
    auto descend = [&](auto&& self, std::size_t depth, const ShuffleElement& acc) -> void {
        if (depth == slots.size()) {
            rows.push_back(truncate(acc.payload(), window));
            return;
        }
        for (int k = -gen_degree; k <= gen_degree; ++k)
            self(self, depth + 1, algebra.multiply(acc, algebra.generator(slots[depth], k)));
    };
    descend(descend, 0, algebra.unit());
    report.products = rows.size();

    const VarSpace space = algebra.space(d);
    const VarSpace coeffs = space.q_only();
    std::vector<Exponents> basis = symmetric_window_basis(space, window);
    report.target_rank = basis.size();
    std::vector<std::size_t> pivots = rank_profile(coefficient_matrix(rows, basis, coeffs), coeffs);
    report.achieved_rank = pivots.size();
    std::vector<bool> hit(basis.size(), false);
    for (std::size_t c : pivots) hit[c] = true;
    for (std::size_t c = 0; c < basis.size(); ++c) {
        if (hit[c]) continue;
        Exponents e(space.size(), 0);
        std::copy(basis[c].begin(), basis[c].end(), e.begin() + space.rank());
        report.missing.push_back(LaurentPoly::monomial(space, std::move(e)));
    }
    return report;
}

} // namespace kha
