#pragma once

#include "ocfat/open_closed.hpp"

namespace ocfat {

/// One matched pair of boundary components: an outgoing component of Γ₁
/// against an incoming component of Γ₂ of the same type and length, glued
/// orientation-reversingly. For cyclic components `rotation` selects the
/// alignment; linear components have a unique endpoint-respecting one.
struct InterfaceMatch {
    Id plus_component;  // ∂⁺Γ₁ string component
    Id minus_component; // ∂⁻Γ₂ string component
    std::size_t rotation = 0;
};

/// Δ together with γ₁, γ₂, presented as the induced matching. A valid
/// interface covers all of ∂⁺Γ₁ and all of ∂⁻Γ₂.
struct GlueInterface {
    std::vector<InterfaceMatch> matches;
};

struct GlueOptions {
    bool bypass_very_admissible_gate = false; // test hook for the Remark-7 failure
    bool cross_check_routes = true;           // compare boundary route vs direct splice
};

struct GlueResult {
    Partitioning graph;
    IdMap vertex_map_1, vertex_map_2; // V(Γᵢ) -> V(Γ₁#Γ₂)
    IdMap half_map_1, half_map_2;     // H(Γᵢ) -> H(Γ₁#Γ₂)
    IdMap minus_comp_map;             // ∂⁻Γ₁ component -> result component
    IdMap plus_comp_map;              // ∂⁺Γ₂ component -> result component
};

/// All complete type/length-compatible matchings of ∂⁺Γ₁ against ∂⁻Γ₂,
/// including every rotation of cyclic components. Empty when the boundary
/// type multisets disagree.
std::vector<GlueInterface> interface_candidates(const Partitioning& g1, const Partitioning& g2);

/// Γ₁#Γ₂ with the induced partitioned open-closed fat structure. Identifier
/// spaces of the inputs must be disjoint (see rename_prefixed). Errors:
/// NotVeryAdmissible, InterfaceMismatch, SpliceFailure.
GlueResult glue(const Partitioning& g1, const Partitioning& g2, const GlueInterface& iface,
                const GlueOptions& opts = {});

/// Copy with every vertex and half-edge id prefixed; brane labels unchanged.
Partitioning rename_prefixed(const Partitioning& p, const std::string& prefix);

} // namespace ocfat
