#pragma once

#include "ocfat/morphism.hpp"

namespace ocfat {

/// Replayable move record. Collapse names the collapsed edge by its least
/// half; expansion records the split vertex, the arc kept at it, and the name
/// of the half-edge created on its side.
struct Move {
    enum class Kind { Collapse, Expand };
    Kind kind = Kind::Collapse;
    Id edge;             // collapse: least half of the collapsed edge
    Id vertex;           // expand: the vertex that was split
    std::vector<Id> arc; // expand: cyclic arc kept at `vertex`
    Id new_half;         // expand: created half-edge at `vertex`

    std::string describe() const;
};

/// Result of collapsing a non-loop edge of a partitioned open-closed fat
/// graph. `vertex_map`/`half_map` give the connecting morphism Γ → Γ/e;
/// component maps track string components across the move.
struct CollapseResult {
    Partitioning result;
    IdMap vertex_map;           // V(Γ) -> V(Γ/e)
    IdMap half_map;             // H(Γ) -> H(Γ/e) ∪ V(Γ/e)
    IdMap string_comp_map;      // old string comp id -> new
    IdMap free_comp_map;        // old free comp id -> new
    Move move;
};

/// Def-13 edge collapse for partitioned open-closed fat graphs: requires a
/// non-loop edge whose deletion induces a labeling-preserving simple morphism
/// on the free boundary. Errors: LoopEdge, BreaksOpenClosedStructure.
CollapseResult collapse_edge(const Partitioning& p, const Id& edge_half);

/// True iff collapse_edge would succeed.
bool can_collapse(const Partitioning& p, const Id& edge_half);

/// Remark-5 edge collapse for plain B-graphs: the edge must additionally be
/// wholly monochromatic. Errors: LoopEdge, NotMonochromatic.
struct BCollapseResult {
    BGraph result;
    BGraphMorphism morphism; // source -> result
};
BCollapseResult collapse_edge(const BGraph& b, const Id& edge_half);

/// Vertex expansion: splits H(v) into two contiguous cyclic arcs joined by a
/// fresh edge; collapsing the new edge recovers the input exactly.
/// Errors: NotContiguous, BreaksOpenClosedStructure.
struct ExpandResult {
    Partitioning result;
    Id new_vertex;
    Id new_half;      // at the original vertex
    Id new_half_far;  // at the new vertex
    Move move;
};
ExpandResult expand_vertex(const Partitioning& p, const Id& v, const std::vector<Id>& arc);

Partitioning apply_move(const Partitioning& p, const Move& m);
Partitioning apply_moves(Partitioning p, const std::vector<Move>& moves);

/// All legal moves from p whose results stay within `max_half_edges`.
std::vector<Move> legal_moves(const Partitioning& p, std::size_t max_half_edges);

/// Prop-14 reduction to special form: greedy free-forest collapse and valence
/// fixes, with a bounded deterministic move search to finish. Returns the
/// reached graph (is_special-true whenever a special form is reachable within
/// the search horizon) and the move list connecting it to the input.
struct MakeSpecialResult {
    Partitioning graph;
    std::vector<Move> moves;
    bool special = false;
};
MakeSpecialResult make_special(const Partitioning& p);

} // namespace ocfat
