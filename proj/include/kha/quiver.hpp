#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

namespace kha {

using Rational = mpq_class;

/// Per-vertex nonnegative integers, in the vertex order of the owning quiver.
class DimVector {
public:
    DimVector() = default;
    explicit DimVector(std::vector<int> entries);

    static DimVector zero(std::size_t n) { return DimVector(std::vector<int>(n, 0)); }
    /// The unit vector with a single 1 at vertex `i`.
    static DimVector unit(std::size_t n, std::size_t i);
    /// Sum of unit vectors over the vertex interval [first, last] (a type-A positive root).
    static DimVector interval(std::size_t n, std::size_t first, std::size_t last);

    std::size_t size() const noexcept { return entries_.size(); }
    int operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<int>& entries() const noexcept { return entries_; }
    int total() const noexcept;
    bool is_zero() const noexcept { return total() == 0; }
    /// Componentwise `*this <= other`.
    bool fits_in(const DimVector& other) const;

    DimVector operator+(const DimVector& other) const;
    /// Componentwise difference; throws if any entry would become negative.
    DimVector operator-(const DimVector& other) const;
    DimVector operator*(int k) const;

    friend bool operator==(const DimVector&, const DimVector&) = default;
    friend auto operator<=>(const DimVector&, const DimVector&) = default;

private:
    std::vector<int> entries_;
};

/// King stability weights, one exact rational per vertex.
class StabilityCondition {
public:
    StabilityCondition() = default;
    explicit StabilityCondition(std::vector<Rational> theta) : theta_(std::move(theta)) {}

    std::size_t size() const noexcept { return theta_.size(); }
    const Rational& operator[](std::size_t i) const { return theta_[i]; }
    const std::vector<Rational>& entries() const noexcept { return theta_; }

    friend bool operator==(const StabilityCondition&, const StabilityCondition&) = default;

private:
    std::vector<Rational> theta_;
};

/// (sum_i theta^i d^i) / (sum_i d^i), reduced. Throws for d = 0.
Rational slope(const StabilityCondition& theta, const DimVector& d);

struct Edge {
    std::string id;
    std::string src;
    std::string tgt;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// A finite quiver with string-labelled vertices and edges. Immutable once built.
class Quiver {
public:
    Quiver() = default;
    Quiver(std::vector<std::string> vertices, std::vector<Edge> edges);

    const std::vector<std::string>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t num_vertices() const noexcept { return vertices_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }

    std::optional<std::size_t> vertex_index(std::string_view id) const;
    std::optional<std::size_t> edge_index(std::string_view id) const;
    /// Throws kha::Error naming the unknown id.
    std::size_t require_vertex(std::string_view id) const;
    std::size_t require_edge(std::string_view id) const;
    const Edge& edge(std::size_t i) const { return edges_[i]; }
    std::size_t source_index(std::size_t edge) const { return src_index_[edge]; }
    std::size_t target_index(std::size_t edge) const { return tgt_index_[edge]; }

    friend bool operator==(const Quiver& a, const Quiver& b) {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> src_index_;
    std::vector<std::size_t> tgt_index_;
    std::unordered_map<std::string, std::size_t> vertex_pos_;
    std::unordered_map<std::string, std::size_t> edge_pos_;
};

/// One vertex "0" with a single loop.
Quiver jordan_quiver(const std::string& loop = "x");
/// Vertices "1".."n" with edges "a<i>": i -> i+1.
Quiver type_a_quiver(std::size_t n);

struct PotentialTerm {
    long long coeff = 0;
    std::vector<std::string> cycle;

    friend bool operator==(const PotentialTerm&, const PotentialTerm&) = default;
};

/// A formal integer combination of cycles. The empty combination is the zero potential.
class Potential {
public:
    Potential() = default;
    /// Rejects empty, non-composable or non-closed cycles, naming the offending term index.
    Potential(const Quiver& quiver, std::vector<PotentialTerm> terms);

    const std::vector<PotentialTerm>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    friend bool operator==(const Potential&, const Potential&) = default;

private:
    std::vector<PotentialTerm> terms_;
};

/// A rank-r torus acting on edges; edges without an explicit weight carry the trivial character.
class TorusWeighting {
public:
    TorusWeighting() = default;
    TorusWeighting(const Quiver& quiver, int rank, std::map<std::string, std::vector<int>> weights);

    int rank() const noexcept { return rank_; }
    const std::map<std::string, std::vector<int>>& weights() const noexcept { return weights_; }
    /// Weight vector of `edge` (all zeros when unset).
    std::vector<int> weight(std::string_view edge) const;

    friend bool operator==(const TorusWeighting&, const TorusWeighting&) = default;

private:
    int rank_ = 0;
    std::map<std::string, std::vector<int>> weights_;
};

struct PathTerm {
    long long coeff = 0;
    std::vector<std::string> path;

    friend bool operator==(const PathTerm&, const PathTerm&) = default;
};

/// Element of the path algebra spanned by paths between one fixed pair of vertices.
/// Paths compose left to right: the target of path[k] is the source of path[k+1].
class NoncommPathPoly {
public:
    NoncommPathPoly() = default;
    NoncommPathPoly(const Quiver& quiver, std::string source, std::string target,
                    std::vector<PathTerm> terms);

    const std::string& source() const noexcept { return source_; }
    const std::string& target() const noexcept { return target_; }
    /// Sorted by path, like paths merged, no zero coefficients.
    const std::vector<PathTerm>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    friend bool operator==(const NoncommPathPoly&, const NoncommPathPoly&) = default;

private:
    std::string source_;
    std::string target_;
    std::vector<PathTerm> terms_;
};

/// Adds a reversed edge "<e>_bar" for every edge e, appended after the originals.
Quiver double_quiver(const Quiver& q);

struct TripledQuiver {
    Quiver quiver;
    Potential potential;
};

/// Doubled quiver plus a loop "omega_<v>" per vertex, with the potential
/// sum_e ( [omega_{s(e)}, e, e_bar] - [omega_{t(e)}, e_bar, e] ).
TripledQuiver tripled_quiver(const Quiver& q);

/// Id of the framing vertex added by framed_quiver.
inline constexpr std::string_view kFramingVertex = "inf";

/// Prepends the vertex "inf" and adds f^i edges "frame_<v>_<k>" from it to each vertex v.
Quiver framed_quiver(const Quiver& q, const DimVector& framing);

/// Stability on the framed quiver: mu + eps at "inf", followed by theta.
StabilityCondition extend_stability(const StabilityCondition& theta, const Rational& mu,
                                    const Rational& eps);

/// 1 / (2 (N + 1)) for a caller-declared total-dimension bound N.
Rational default_framing_epsilon(int total_dimension_bound);

/// d(W)/d(edge): every occurrence of the edge is removed and the cycle is read from the next position.
NoncommPathPoly cyclic_derivative(const Quiver& quiver, const Potential& w, std::string_view edge);

/// The preprojective relation at `vertex`, as a loop combination in the doubled quiver of `q`:
/// sum_{s(e)=v} [e, e_bar] - sum_{t(e)=v} [e_bar, e].
NoncommPathPoly preprojective_relation(const Quiver& q, std::string_view vertex);

/// Integer edge weights making every cycle of W sum to 2, or nullopt if none exist.
/// Prefers the lexicographically smallest nonnegative solution.
std::optional<std::vector<long long>> check_assumption_a(const Quiver& quiver, const Potential& w);

bool satisfies_assumption_a(const Quiver& quiver, const Potential& w,
                            std::span<const long long> weights);

/// True iff every term of W has total torus weight zero.
bool check_invariance(const Quiver& quiver, const Potential& w, const TorusWeighting& torus);

/// Integer solution of A x = b via column Hermite normal form, or nullopt when none exists.
/// Free coordinates are set to zero.
std::optional<std::vector<mpz_class>> solve_integer_system(
    const std::vector<std::vector<mpz_class>>& a, const std::vector<mpz_class>& b);

} // namespace kha
