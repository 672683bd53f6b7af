#pragma once

#include <optional>

#include "ocfat/graph.hpp"

namespace ocfat {

/// Fat (ribbon) graph: a carrier plus a cyclic ordering of H(v) at each
/// vertex, stored as the permutation σ whose cycles are exactly the H(v).
class FatGraph {
public:
    FatGraph() = default;

    /// `orders` gives, per vertex, the cyclic sequence of its half-edges.
    /// Throws WrongSupport if a sequence is not a permutation of H(v).
    static FatGraph attach(Graph carrier, std::map<Id, std::vector<Id>> orders);

    const Graph& carrier() const { return carrier_; }
    const IdMap& sigma() const { return sigma_; }
    const Id& sigma_at(const Id& h) const { return sigma_.at(h); }

    /// σ̂ = σ ∘ r.
    Id sigma_hat(const Id& h) const { return sigma_.at(carrier_.reversal(h)); }

    /// Cyclic order at v, rotated to start at the least half-edge.
    std::vector<Id> order_at(const Id& v) const;

    /// Disjoint cycles of σ̂, each rotated to its least element, sorted.
    std::vector<std::vector<Id>> boundary_cycles() const;

private:
    Graph carrier_;
    IdMap sigma_;
};

/// Boundary graph ∂Γ (Def-11 style): one vertex per half-edge of Γ, one
/// oriented edge per half-edge, components cycling along σ̂.
/// Half-edge names are "<h>:0" and "<h>:1", with s(h:0)=h, s(h:1)=σ̂(h).
struct BoundaryGraph {
    Graph graph;
    GraphMorphism iota; // ∂Γ -> Γ (on vertices: h ↦ s(h); on halves: h:0 ↦ h, h:1 ↦ r(h))

    /// The preferred direction of boundary edge `h` is (h,0) → (h,1).
    static Id half0(const Id& h) { return h + ":0"; }
    static Id half1(const Id& h) { return h + ":1"; }
    /// Inverse of the naming convention: boundary-edge id from either half.
    static Id edge_of_half(const Id& bh) { return bh.substr(0, bh.size() - 2); }
};

BoundaryGraph boundary_graph(const FatGraph& fat);

/// Genus via g = 1 - (#π₀(∂Γ) + χ)/2 for a connected fat graph.
/// A single isolated vertex thickens to a disc and counts one boundary
/// circle, keeping the formula integral; see boundary_circle_count.
long long genus(const FatGraph& fat);

/// Per-component genus for possibly disconnected input, keyed by component id.
std::map<Id, long long> genus_by_component(const FatGraph& fat);

/// σ̂-cycle count, except an isolated vertex counts as one circle (disc).
std::size_t boundary_circle_count(const FatGraph& fat);

/// Reconstruct a fat structure from σ̂-cycles (Lemma-6 direction): given
/// oriented cycles covering every half-edge exactly once, set σ := σ̂ ∘ r and
/// verify one σ-cycle per vertex. Throws MultipleCyclesPerVertex otherwise.
FatGraph fat_from_boundary(const Graph& carrier, const std::vector<std::vector<Id>>& cycles);

/// Restriction of a fat graph to one connected component of its carrier.
FatGraph restrict_to_component(const FatGraph& fat, const Component& c);

} // namespace ocfat
