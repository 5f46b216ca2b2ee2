#include "kha/quiver.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "kha/error.hpp"

namespace kha {

// ---------------------------------------------------------------------------
// DimVector / slope

DimVector::DimVector(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_)
        if (e < 0) throw Error("dimension vector entries must be nonnegative");
}

DimVector DimVector::unit(std::size_t n, std::size_t i) {
    std::vector<int> v(n, 0);
    v.at(i) = 1;
    return DimVector(std::move(v));
}

DimVector DimVector::interval(std::size_t n, std::size_t first, std::size_t last) {
    if (first > last || last >= n) throw Error("invalid vertex interval");
    std::vector<int> v(n, 0);
    for (std::size_t i = first; i <= last; ++i) v[i] = 1;
    return DimVector(std::move(v));
}

int DimVector::total() const noexcept {
    return std::accumulate(entries_.begin(), entries_.end(), 0);
}

bool DimVector::fits_in(const DimVector& other) const {
    if (size() != other.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (entries_[i] > other.entries_[i]) return false;
    return true;
}

DimVector DimVector::operator+(const DimVector& other) const {
    if (size() != other.size()) throw Error("dimension vectors of different length");
    std::vector<int> v(size());
    for (std::size_t i = 0; i < size(); ++i) v[i] = entries_[i] + other.entries_[i];
    return DimVector(std::move(v));
}

DimVector DimVector::operator-(const DimVector& other) const {
    if (size() != other.size()) throw Error("dimension vectors of different length");
    std::vector<int> v(size());
    for (std::size_t i = 0; i < size(); ++i) v[i] = entries_[i] - other.entries_[i];
    return DimVector(std::move(v));
}

DimVector DimVector::operator*(int k) const {
    if (k < 0) throw Error("negative scaling of a dimension vector");
    std::vector<int> v(entries_);
    for (int& e : v) e *= k;
    return DimVector(std::move(v));
}

Rational slope(const StabilityCondition& theta, const DimVector& d) {
    if (theta.size() != d.size()) throw Error("stability condition and dimension vector differ in length");
    if (d.is_zero()) throw Error("slope undefined for zero vector");
    Rational num = 0;
    for (std::size_t i = 0; i < d.size(); ++i) num += theta[i] * d[i];
    Rational result = num / d.total();
    result.canonicalize();
    return result;
}

// ---------------------------------------------------------------------------
// Quiver

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (!vertex_pos_.emplace(vertices_[i], i).second)
            throw Error("duplicate vertex id '" + vertices_[i] + "'");
    }
    src_index_.reserve(edges_.size());
    tgt_index_.reserve(edges_.size());
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        const Edge& e = edges_[k];
        if (!edge_pos_.emplace(e.id, k).second) throw Error("duplicate edge id '" + e.id + "'");
        auto s = vertex_pos_.find(e.src);
        auto t = vertex_pos_.find(e.tgt);
        if (s == vertex_pos_.end())
            throw Error("edge '" + e.id + "' has undeclared source '" + e.src + "'");
        if (t == vertex_pos_.end())
            throw Error("edge '" + e.id + "' has undeclared target '" + e.tgt + "'");
        src_index_.push_back(s->second);
        tgt_index_.push_back(t->second);
    }
}

std::optional<std::size_t> Quiver::vertex_index(std::string_view id) const {
    auto it = vertex_pos_.find(std::string(id));
    if (it == vertex_pos_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Quiver::edge_index(std::string_view id) const {
    auto it = edge_pos_.find(std::string(id));
    if (it == edge_pos_.end()) return std::nullopt;
    return it->second;
}

std::size_t Quiver::require_vertex(std::string_view id) const {
    if (auto i = vertex_index(id)) return *i;
    throw Error("unknown vertex id '" + std::string(id) + "'");
}

std::size_t Quiver::require_edge(std::string_view id) const {
    if (auto i = edge_index(id)) return *i;
    throw Error("unknown edge id '" + std::string(id) + "'");
}

Quiver jordan_quiver(const std::string& loop) {
    return Quiver({"0"}, {Edge{loop, "0", "0"}});
}

Quiver type_a_quiver(std::size_t n) {
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    for (std::size_t i = 1; i <= n; ++i) vertices.push_back(std::to_string(i));
    for (std::size_t i = 1; i < n; ++i)
        edges.push_back(Edge{"a" + std::to_string(i), std::to_string(i), std::to_string(i + 1)});
    return Quiver(std::move(vertices), std::move(edges));
}

// ---------------------------------------------------------------------------
// Potential / paths

namespace {

// Throws with `where` prefixed unless `path` is a composable walk from `from` to `to`.
void check_walk(const Quiver& q, const std::vector<std::string>& path, const std::string& where,
                std::optional<std::size_t> from, std::optional<std::size_t> to) {
    std::optional<std::size_t> at;
    for (std::size_t k = 0; k < path.size(); ++k) {
        auto e = q.edge_index(path[k]);
        if (!e) throw Error(where + ": unknown edge id '" + path[k] + "'");
        std::size_t s = q.source_index(*e);
        if (k == 0) {
            if (from && *from != s) throw Error(where + ": path does not start at its declared source");
        } else if (*at != s) {
            throw Error(where + ": edges " + path[k - 1] + " and " + path[k] + " are not composable");
        }
        at = q.target_index(*e);
    }
    if (path.empty()) {
        if (from != to) throw Error(where + ": empty path between distinct vertices");
        return;
    }
    if (to && *at != *to) throw Error(where + ": path does not end at its declared target");
}

} // namespace

Potential::Potential(const Quiver& quiver, std::vector<PotentialTerm> terms)
    : terms_(std::move(terms)) {
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        const auto& cycle = terms_[k].cycle;
        std::string where = "potential term " + std::to_string(k);
        if (cycle.empty()) throw Error(where + ": empty cycle");
        auto first = quiver.edge_index(cycle.front());
        if (!first) throw Error(where + ": unknown edge id '" + cycle.front() + "'");
        std::size_t base = quiver.source_index(*first);
        check_walk(quiver, cycle, where, base, std::nullopt);
        auto last = quiver.require_edge(cycle.back());
        if (quiver.target_index(last) != base) throw Error(where + ": cycle is not closed");
    }
}

TorusWeighting::TorusWeighting(const Quiver& quiver, int rank,
                               std::map<std::string, std::vector<int>> weights)
    : rank_(rank), weights_(std::move(weights)) {
    if (rank_ < 0) throw Error("torus rank must be nonnegative");
    for (const auto& [edge, w] : weights_) {
        if (!quiver.edge_index(edge)) throw Error("torus weight on unknown edge '" + edge + "'");
        if (static_cast<int>(w.size()) != rank_)
            throw Error("torus weight of edge '" + edge + "' has length " + std::to_string(w.size()) +
                        ", expected " + std::to_string(rank_));
    }
}

std::vector<int> TorusWeighting::weight(std::string_view edge) const {
    auto it = weights_.find(std::string(edge));
    if (it == weights_.end()) return std::vector<int>(static_cast<std::size_t>(rank_), 0);
    return it->second;
}

NoncommPathPoly::NoncommPathPoly(const Quiver& quiver, std::string source, std::string target,
                                 std::vector<PathTerm> terms)
    : source_(std::move(source)), target_(std::move(target)) {
    std::size_t s = quiver.require_vertex(source_);
    std::size_t t = quiver.require_vertex(target_);
    std::map<std::vector<std::string>, long long> merged;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        check_walk(quiver, terms[k].path, "path term " + std::to_string(k), s, t);
        merged[terms[k].path] += terms[k].coeff;
    }
    for (auto& [path, c] : merged)
        if (c != 0) terms_.push_back(PathTerm{c, path});
}

// ---------------------------------------------------------------------------
// Constructions

Quiver double_quiver(const Quiver& q) {
    std::vector<Edge> edges = q.edges();
    for (const Edge& e : q.edges()) edges.push_back(Edge{e.id + "_bar", e.tgt, e.src});
    return Quiver(q.vertices(), std::move(edges));
}

TripledQuiver tripled_quiver(const Quiver& q) {
    Quiver doubled = double_quiver(q);
    std::vector<Edge> edges = doubled.edges();
    for (const auto& v : q.vertices()) edges.push_back(Edge{"omega_" + v, v, v});
    Quiver tripled(q.vertices(), std::move(edges));

    std::vector<PotentialTerm> terms;
    for (const Edge& e : q.edges()) {
        std::string bar = e.id + "_bar";
        terms.push_back(PotentialTerm{1, {"omega_" + e.src, e.id, bar}});
        terms.push_back(PotentialTerm{-1, {"omega_" + e.tgt, bar, e.id}});
    }
    Potential w(tripled, std::move(terms));
    return TripledQuiver{std::move(tripled), std::move(w)};
}

Quiver framed_quiver(const Quiver& q, const DimVector& framing) {
    if (framing.size() != q.num_vertices()) throw Error("framing vector length differs from vertex count");
    std::string inf(kFramingVertex);
    if (q.vertex_index(inf)) throw Error("quiver already has a vertex named '" + inf + "'");
    std::vector<std::string> vertices{inf};
    vertices.insert(vertices.end(), q.vertices().begin(), q.vertices().end());
    std::vector<Edge> edges = q.edges();
    for (std::size_t i = 0; i < q.num_vertices(); ++i) {
        const auto& v = q.vertices()[i];
        for (int k = 1; k <= framing[i]; ++k)
            edges.push_back(Edge{"frame_" + v + "_" + std::to_string(k), inf, v});
    }
    return Quiver(std::move(vertices), std::move(edges));
}

StabilityCondition extend_stability(const StabilityCondition& theta, const Rational& mu,
                                    const Rational& eps) {
    if (sgn(eps) <= 0) throw Error("framing epsilon must be positive");
    std::vector<Rational> out;
    out.reserve(theta.size() + 1);
    Rational at_inf = mu + eps;
    at_inf.canonicalize();
    out.push_back(at_inf);
    out.insert(out.end(), theta.entries().begin(), theta.entries().end());
    return StabilityCondition(std::move(out));
}

Rational default_framing_epsilon(int total_dimension_bound) {
    if (total_dimension_bound < 0) throw Error("dimension bound must be nonnegative");
    Rational eps(1, 2 * (total_dimension_bound + 1));
    eps.canonicalize();
    return eps;
}

NoncommPathPoly cyclic_derivative(const Quiver& quiver, const Potential& w, std::string_view edge) {
    std::size_t e = quiver.require_edge(edge);
    std::vector<PathTerm> out;
    for (const auto& term : w.terms()) {
        const auto& c = term.cycle;
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (c[j] != edge) continue;
            std::vector<std::string> path;
            path.reserve(c.size() - 1);
            for (std::size_t k = 1; k < c.size(); ++k) path.push_back(c[(j + k) % c.size()]);
            out.push_back(PathTerm{term.coeff, std::move(path)});
        }
    }
    const Edge& ed = quiver.edge(e);
    return NoncommPathPoly(quiver, ed.tgt, ed.src, std::move(out));
}

NoncommPathPoly preprojective_relation(const Quiver& q, std::string_view vertex) {
    q.require_vertex(vertex);
    Quiver doubled = double_quiver(q);
    std::vector<PathTerm> terms;
    for (const Edge& e : q.edges()) {
        std::string bar = e.id + "_bar";
        if (e.src == vertex) terms.push_back(PathTerm{1, {e.id, bar}});
        if (e.tgt == vertex) terms.push_back(PathTerm{-1, {bar, e.id}});
    }
    return NoncommPathPoly(doubled, std::string(vertex), std::string(vertex), std::move(terms));
}

// ---------------------------------------------------------------------------
// Assumption A and torus invariance

namespace {

struct CycleSystem {
    // rows[t][e] = multiplicity of edge e in cycle t
    std::vector<std::vector<int>> rows;
};

CycleSystem cycle_system(const Quiver& quiver, const Potential& w) {
    CycleSystem sys;
    for (const auto& term : w.terms()) {
        std::vector<int> row(quiver.num_edges(), 0);
        for (const auto& e : term.cycle) ++row[quiver.require_edge(e)];
        sys.rows.push_back(std::move(row));
    }
    return sys;
}

// Lexicographically first nonnegative solution: every edge in a cycle has weight <= 2.
class NonnegativeSearch {
public:
    explicit NonnegativeSearch(const CycleSystem& sys, std::size_t num_edges)
        : sys_(sys), value_(num_edges, 0), partial_(sys.rows.size(), 0) {
        for (std::size_t e = 0; e < num_edges; ++e) {
            bool used = false;
            for (const auto& row : sys.rows) used = used || row[e] != 0;
            if (used) vars_.push_back(e);
        }
        last_var_.assign(sys.rows.size(), -1);
        for (std::size_t t = 0; t < sys.rows.size(); ++t)
            for (std::size_t k = 0; k < vars_.size(); ++k)
                if (sys.rows[t][vars_[k]] != 0) last_var_[t] = static_cast<int>(k);
    }

    std::optional<std::vector<long long>> run() {
        if (!descend(0)) return std::nullopt;
        return std::vector<long long>(value_.begin(), value_.end());
    }

private:
    bool descend(std::size_t k) {
        if (k == vars_.size()) return true;
        std::size_t e = vars_[k];
        for (int v = 0; v <= 2; ++v) {
            bool ok = true;
            for (std::size_t t = 0; t < sys_.rows.size(); ++t) {
                partial_[t] += sys_.rows[t][e] * v;
                if (partial_[t] > 2 || (last_var_[t] == static_cast<int>(k) && partial_[t] != 2)) ok = false;
            }
            value_[e] = v;
            if (ok && descend(k + 1)) return true;
            for (std::size_t t = 0; t < sys_.rows.size(); ++t) partial_[t] -= sys_.rows[t][e] * v;
        }
        value_[e] = 0;
        return false;
    }

    const CycleSystem& sys_;
    std::vector<std::size_t> vars_;
    std::vector<long long> value_;
    std::vector<long long> partial_;
    std::vector<int> last_var_;
};

} // namespace

std::optional<std::vector<mpz_class>> solve_integer_system(
    const std::vector<std::vector<mpz_class>>& a, const std::vector<mpz_class>& b) {
    const std::size_t m = a.size();
    if (b.size() != m) throw Error("integer system: right-hand side length mismatch");
    const std::size_t n = m == 0 ? 0 : a.front().size();
    std::vector<std::vector<mpz_class>> h = a;
    for (const auto& row : h)
        if (row.size() != n) throw Error("integer system: ragged matrix");
    // u is n x n, tracked column-wise alongside h so that a * u = h.
    std::vector<std::vector<mpz_class>> u(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

    auto swap_cols = [&](std::size_t x, std::size_t y) {
        for (auto& row : h) std::swap(row[x], row[y]);
        for (auto& row : u) std::swap(row[x], row[y]);
    };
    auto axpy_cols = [&](std::size_t dst, std::size_t src, const mpz_class& f) {
        for (auto& row : h) row[dst] -= f * row[src];
        for (auto& row : u) row[dst] -= f * row[src];
    };
    auto negate_col = [&](std::size_t c) {
        for (auto& row : h) row[c] = -row[c];
        for (auto& row : u) row[c] = -row[c];
    };

    std::vector<std::size_t> pivot_row;
    std::size_t col = 0;
    for (std::size_t i = 0; i < m && col < n; ++i) {
        while (true) {
            std::optional<std::size_t> best;
            for (std::size_t c = col; c < n; ++c)
                if (h[i][c] != 0 && (!best || abs(h[i][c]) < abs(h[i][*best]))) best = c;
            if (!best) break;
            if (*best != col) swap_cols(*best, col);
            bool done = true;
            for (std::size_t c = col + 1; c < n; ++c) {
                if (h[i][c] == 0) continue;
                mpz_class f;
                mpz_fdiv_q(f.get_mpz_t(), h[i][c].get_mpz_t(), h[i][col].get_mpz_t());
                axpy_cols(c, col, f);
                if (h[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (h[i][col] == 0) continue;
        if (h[i][col] < 0) negate_col(col);
        pivot_row.push_back(i);
        ++col;
    }

    std::vector<mpz_class> y(n, 0);
    for (std::size_t k = 0; k < pivot_row.size(); ++k) {
        std::size_t i = pivot_row[k];
        mpz_class r = b[i];
        for (std::size_t j = 0; j < k; ++j) r -= h[i][j] * y[j];
        if (!mpz_divisible_p(r.get_mpz_t(), h[i][k].get_mpz_t())) return std::nullopt;
        mpz_divexact(y[k].get_mpz_t(), r.get_mpz_t(), h[i][k].get_mpz_t());
    }
    for (std::size_t i = 0; i < m; ++i) {
        mpz_class s = 0;
        for (std::size_t j = 0; j < n; ++j) s += h[i][j] * y[j];
        if (s != b[i]) return std::nullopt;
    }
    std::vector<mpz_class> x(n, 0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) x[r] += u[r][c] * y[c];
    return x;
}

std::optional<std::vector<long long>> check_assumption_a(const Quiver& quiver, const Potential& w) {
    CycleSystem sys = cycle_system(quiver, w);
    if (auto nonneg = NonnegativeSearch(sys, quiver.num_edges()).run()) return nonneg;

    std::vector<std::vector<mpz_class>> a;
    for (const auto& row : sys.rows) a.emplace_back(row.begin(), row.end());
    std::vector<mpz_class> b(sys.rows.size(), 2);
    auto x = solve_integer_system(a, b);
    if (!x) return std::nullopt;
    std::vector<long long> out;
    for (const auto& v : *x) {
        if (!v.fits_slong_p()) throw Error("assumption A weight exceeds machine range");
        out.push_back(v.get_si());
    }
    return out;
}

bool satisfies_assumption_a(const Quiver& quiver, const Potential& w,
                            std::span<const long long> weights) {
    if (weights.size() != quiver.num_edges()) throw Error("weight vector length differs from edge count");
    for (const auto& term : w.terms()) {
        long long sum = 0;
        for (const auto& e : term.cycle) sum += weights[quiver.require_edge(e)];
        if (sum != 2) return false;
    }
    return true;
}

bool check_invariance(const Quiver& quiver, const Potential& w, const TorusWeighting& torus) {
    for (const auto& [edge, _] : torus.weights())
        if (!quiver.edge_index(edge)) throw Error("unknown edge in weighting: '" + edge + "'");
    for (const auto& term : w.terms()) {
        std::vector<long long> sum(static_cast<std::size_t>(torus.rank()), 0);
        for (const auto& e : term.cycle) {
            quiver.require_edge(e);
            auto wt = torus.weight(e);
            for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += wt[k];
        }
        for (long long s : sum)
            if (s != 0) return false;
    }
    return true;
}

} // namespace kha
