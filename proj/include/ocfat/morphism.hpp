#pragma once

#include "ocfat/open_closed.hpp"

namespace ocfat {

/// Morphism of B-graphs: vertices to vertices, half-edges to half-edges or
/// vertices, satisfying the source/reversal conditions (structure maps extend
/// to target vertices as the identity) and preserving the marked part.
struct BGraphMorphism {
    BGraph source;
    BGraph target;
    IdMap vertex_map;
    IdMap half_map; // values may be target half-edges or target vertices

    bool half_maps_to_vertex(const Id& h) const {
        return target.graph.has_vertex(half_map.at(h));
    }
    Id apply_vertex(const Id& v) const { return vertex_map.at(v); }
    Id apply_half(const Id& h) const { return half_map.at(h); }
};

/// Validates the Def-8 conditions plus label preservation on the marked part.
/// Errors: SourceCondition, ReversalCondition, LabelCondition, TotalityCondition.
BGraphMorphism build_morphism(BGraph src, BGraph dst, IdMap phi_V, IdMap phi_H);

BGraphMorphism identity_morphism(const BGraph& g);
BGraphMorphism compose(const BGraphMorphism& first, const BGraphMorphism& second);

/// Simple morphism: every vertex preimage subgraph is a tree and φ_H is
/// injective on the half-edge preimages; for B-graphs the restriction to the
/// marked parts must be simple as well.
bool is_simple(const BGraphMorphism& phi);

/// Graph_B^! membership: φ_H injects half-edges into half-edges and carries
/// unlabeled edges to unlabeled edges.
bool is_shriek(const BGraphMorphism& phi);

/// Prop-3 hypothesis: φ_H bijective on half-edges and unlabeled-to-unlabeled;
/// when it holds, the square over the vertex B-graphs is verified to be a
/// pushout by explicit re-gluing.
bool satisfies_prop3(const BGraphMorphism& phi);

/// The φ = φ''' ∘ φ''⁻¹-ish factorization through Γ₁ ⊔ Ξ_φ and Γ₁ ⊔ ξ_φ.
struct ShriekFactorization {
    BGraph Xi;            // Ξ_φ: one two-vertex edge ê per edge of Γ₂ missed by φ
    BGraph xi;            // ξ_φ: each ê collapsed to a labeled vertex
    BGraph src_sqcup_xi;  // Γ₁ ⊔ ξ_φ
    BGraph src_sqcup_Xi;  // Γ₁ ⊔ Ξ_φ
    BGraphMorphism phi1;  // φ'  : Γ₁ → Γ₁ ⊔ ξ_φ (inclusion)
    BGraphMorphism phi2;  // φ'' : Γ₁ ⊔ Ξ_φ → Γ₁ ⊔ ξ_φ (collapse each ê)
    BGraphMorphism phi3;  // φ''': Γ₁ ⊔ Ξ_φ → Γ₂ (φ extended by ê ↦ e)
    BGraphMorphism inclusion; // Γ₁ → Γ₁ ⊔ Ξ_φ
};

/// Requires is_shriek(phi); throws NotShriek otherwise.
ShriekFactorization factorize_shriek(const BGraphMorphism& phi);

/// ι₋ : ∂⁻Γ → Γ as a morphism of B-graphs (Γ viewed per Example-5 marking).
BGraphMorphism iota_minus(const Partitioning& p);

/// Disjoint union of B-graphs; identifiers must not collide.
BGraph disjoint_union(const BGraph& a, const BGraph& b);

} // namespace ocfat
