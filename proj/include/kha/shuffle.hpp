#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kha/laurent.hpp"
#include "kha/quiver.hpp"
#include "kha/rational_function.hpp"

namespace kha {

/// An element of the zero-potential K-theoretic Hall algebra at one dimension
/// vector: a symmetric Laurent polynomial whose z-variables are counted by d.
class ShuffleElement {
public:
    ShuffleElement() = default;
    /// Throws unless the payload is symmetric in z_{i,*} at every vertex.
    explicit ShuffleElement(LaurentPoly payload);

    DimVector dim() const { return payload_.space().dims(); }
    const LaurentPoly& payload() const noexcept { return payload_; }

    friend bool operator==(const ShuffleElement&, const ShuffleElement&) = default;

private:
    LaurentPoly payload_;
};

/// A vector of the framed module: payload in z_inf (one variable at the framing
/// vertex, which comes first) and the z_{i,j}, symmetric in each z_{i,*}.
class FramedModuleElement {
public:
    FramedModuleElement() = default;
    FramedModuleElement(DimVector framing, LaurentPoly payload);

    const DimVector& framing() const noexcept { return framing_; }
    /// Dimension vector over the unframed vertices.
    DimVector dim() const;
    const LaurentPoly& payload() const noexcept { return payload_; }

    friend bool operator==(const FramedModuleElement&, const FramedModuleElement&) = default;

private:
    DimVector framing_;
    LaurentPoly payload_;
};

/// Torus x maximal-torus characters of the cut bundle C(a+b), together with the
/// block cocharacter of the split (a, b): weight 1 on the first a_i copies of
/// every vertex and 0 on the rest.
struct CutBundleWeights {
    VarSpace space;
    DimVector left;
    DimVector right;
    std::vector<Exponents> characters;
    /// Pairing vector over the z variables of `space`.
    std::vector<int> cocharacter;
};

/// Block cocharacter of the split (a, b), one entry per z variable.
std::vector<int> block_cocharacter(const DimVector& a, const DimVector& b);

/// Product of the cut characters with strictly negative cocharacter pairing.
LaurentPoly twist_weight(const CutBundleWeights& cut);

/// sum over w in S_d/(S_a x S_b) of w( h / prod_{i, j <= a_i < k} (1 - z_{ij}^{-1} z_{ik}) ),
/// asserted to be a Laurent polynomial. Vertices with a_i = 0 or b_i = 0 contribute
/// neither cosets nor denominators.
LaurentPoly weyl_symmetrize(const LaurentPoly& h, const DimVector& a, const DimVector& b);

/// The shuffle algebra KHA_T(Q, 0) of a quiver with a torus weighting.
///
/// Immutable after construction; every operation is a const pure function.
class ShuffleAlgebra {
public:
    ShuffleAlgebra(Quiver quiver, TorusWeighting torus);

    const Quiver& quiver() const noexcept { return quiver_; }
    const TorusWeighting& torus() const noexcept { return torus_; }

    VarSpace space(const DimVector& d) const;
    /// Space of a framed module vector at (1, d): "inf" first, then the quiver vertices.
    VarSpace framed_space(const DimVector& d) const;

    /// Wraps a payload after checking it lives over this algebra's vertices and torus rank.
    ShuffleElement element(const LaurentPoly& payload) const;
    ShuffleElement unit() const;
    /// z^power at the unit vector of `vertex`.
    ShuffleElement generator(std::size_t vertex, int power) const;
    FramedModuleElement framed_element(const DimVector& framing, const LaurentPoly& payload) const;

    /// prod_{e: i -> i'} (1 - q_e^{-1} z^{-1}) / (1 - z^{-1})^{delta_{ii'}} in one variable z.
    RationalFunction zeta(std::string_view i, std::string_view i_prime) const;

    /// The normal-bundle factor prod_{i,i'} prod_{j <= a_i, j' > a_i'} prod_{e: i -> i'}
    /// (1 - q_e^{-1} z_{ij}^{-1} z_{i'j'}) in the space of a + b.
    LaurentPoly normal_factor(const DimVector& a, const DimVector& b) const;

    ShuffleElement multiply(const ShuffleElement& f, const ShuffleElement& g) const;
    /// Multiplication with the integrand additionally multiplied by `weight`
    /// (a Laurent polynomial in the space of a + b) before symmetrization.
    ShuffleElement multiply_weighted(const ShuffleElement& f, const ShuffleElement& g,
                                     const LaurentPoly& weight) const;
    ShuffleElement twisted_multiply(const ShuffleElement& f, const ShuffleElement& g,
                                    const CutBundleWeights& cut) const;

    /// Characters of C(a+b) = sum_{c in cut} Hom(V_{s(c)}, V_{t(c)}) and the block cocharacter of (a, b).
    CutBundleWeights cut_bundle(std::span<const std::string> cut_edges, const DimVector& a,
                                const DimVector& b) const;

    /// The action of f on a framed vector; z_inf is a spectator.
    FramedModuleElement act(const ShuffleElement& f, const FramedModuleElement& m) const;

private:
    void check_element_space(const VarSpace& space) const;
    // Integrand factor with algebra vertex k placed at target vertex k + shift.
    LaurentPoly normal_factor_in(const VarSpace& target, const DimVector& a, std::size_t shift) const;

    Quiver quiver_;
    TorusWeighting torus_;
    // For each (source vertex, target vertex), the torus weights of the edges between them.
    std::vector<std::vector<std::vector<std::vector<int>>>> edge_weights_;

    // Memoized normal factors; shared between copies since they depend only on (Q, T).
    struct Cache {
        std::mutex mutex;
        std::map<std::pair<DimVector, DimVector>, LaurentPoly> normal;
    };
    std::shared_ptr<Cache> cache_;
};

/// The Jordan quiver with a rank-1 torus acting with weight 1 on the loop.
ShuffleAlgebra jordan_algebra();

struct RelationSearchReport {
    int r_max = 0;
    std::vector<LaurentPoly> candidates;
    /// Per candidate: whether every relation with 0 <= r, s <= r_max holds.
    std::vector<bool> satisfied;
    /// The unique satisfying candidate, if exactly one exists.
    std::optional<LaurentPoly> alpha;
    std::string message;
};

/// Searches for alpha with e_r e_{s+1} - alpha e_{s+1} e_r = alpha e_{r+1} e_s - e_s e_{r+1},
/// e_k = z^k at dimension 1, for all 0 <= r, s <= r_max.
RelationSearchReport relation_search(const ShuffleAlgebra& algebra, int r_max,
                                     const std::vector<LaurentPoly>& candidates);

} // namespace kha
