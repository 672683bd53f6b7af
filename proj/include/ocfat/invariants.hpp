#pragma once

#include "ocfat/open_closed.hpp"

namespace ocfat {

/// Open-closed data tuple (g, ∂_{S¹}, ∂_I, ξ, ψ, ∂_w, β): the complete
/// isomorphism invariant of a connected open-closed surface.
struct DataTuple {
    long long g = 0;
    IdSet circles;          // closed string components
    IdSet intervals;        // string intervals
    std::map<Id, Id> xi;    // interval -> label of its final endpoint
    IdMap psi;              // interval -> next interval on its boundary circle
    IdSet windows;          // closed free components
    std::map<Id, Id> beta;  // window -> brane

    /// Label at the initial endpoint: the arc before c carries ξ(ψ⁻¹(c)).
    Id initial_label(const Id& interval) const;
    /// "S1" or "I:a:b"; outgoing intervals read against the orientation.
    std::string element_type(const Id& element, Sign part) const;
};

struct PartitionedDataTuple {
    DataTuple base;
    std::map<Id, Sign> circle_sign;
    std::map<Id, Sign> interval_sign;

    std::vector<Id> side_circles(Sign s) const;
    std::vector<Id> side_intervals(Sign s) const;
    bool positive_boundary() const { return !side_circles(Sign::Plus).empty() ||
                                            !side_intervals(Sign::Plus).empty(); }
};

/// X(Γ) of a connected open-closed fat graph. Throws Disconnected otherwise.
DataTuple data_tuple(const OCFatGraph& oc);

/// Y(Γ) of a connected partitioned graph.
PartitionedDataTuple partitioned_tuple(const Partitioning& p);

/// Per carrier component, keyed by component id, for disconnected input.
std::map<Id, PartitionedDataTuple> partitioned_tuples_by_component(const Partitioning& p);

/// Witness of a tuple isomorphism: bijections preserving labels, conjugating
/// ψ, and preserving partitions when present.
struct TupleIso {
    IdMap circle_map;
    IdMap interval_map;
    IdMap window_map;
};

/// Backtracking search over label/partition-refined candidates.
std::optional<TupleIso> tuple_iso(const DataTuple& a, const DataTuple& b);
std::optional<TupleIso> tuple_iso(const PartitionedDataTuple& a, const PartitionedDataTuple& b);

/// Canonical relabeling: T₁ ≅ T₂ iff canonical forms are byte-identical
/// (serialize() on both).
DataTuple canonical_tuple(const DataTuple& t);
PartitionedDataTuple canonical_tuple(const PartitionedDataTuple& t);

std::string serialize(const DataTuple& t);
std::string serialize(const PartitionedDataTuple& t);

/// Realization of a partitioned tuple as a partitioned open-closed fat graph
/// built from standard pieces (single-vertex genus core, stalked loops for
/// extra boundary circles and windows, subdivision points for intervals).
/// The result is connected, extracts back to an isomorphic tuple, and is
/// VeryAdmissible whenever some element is outgoing. Requires at least one
/// string element unless the tuple is completely empty (the disc point).
/// Throws UnrealizableTuple otherwise.
struct Realization {
    Partitioning graph;
    IdMap element_to_component; // tuple element -> string/free component id
};
Realization realize_tuple(const PartitionedDataTuple& t);

/// Tuple-level composition: realize, glue along the matching, extract and
/// canonicalize. `matching` maps every outgoing element of `a` to an incoming
/// element of `b` of the same type, bijectively. Throws MatchingMismatch.
PartitionedDataTuple tuple_compose(const PartitionedDataTuple& a, const PartitionedDataTuple& b,
                                   const IdMap& matching);

} // namespace ocfat
