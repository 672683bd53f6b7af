#pragma once

#include "ocfat/fat.hpp"

namespace ocfat {

/// A graph with a family of disjoint connected labeled subgraphs (the marked
/// part B(Γ), embedded by inclusion) and a brane label per marked component.
struct BGraph {
    Graph graph;
    Subgraph marked;
    std::map<Id, Id> labels; // marked-component id (least vertex) -> brane

    static BGraph make(Graph g, IdSet marked_vertices, IdSet marked_half_edges,
                       std::map<Id, Id> labels);

    /// Label of the marked component containing vertex v, if any.
    std::optional<Id> label_of_vertex(const Id& v) const;
    /// True iff the edge {h, r(h)} lies inside the marked subgraph.
    bool edge_marked(const Id& h) const { return marked.half_edge_subset.count(h) != 0; }
};

/// Discrete B-graph on V(Γ) with the restricted marking (Def-17 style).
BGraph vertex_bgraph(const BGraph& b);

enum class Sign { Minus, Plus };
inline const char* sign_name(Sign s) { return s == Sign::Minus ? "-" : "+"; }

/// One connected component of the free boundary ∂_fΓ.
struct FreeComponent {
    Id id;                   // least letter (∂Γ-vertex = Γ half-edge)
    std::vector<Id> letters; // σ̂ path order (Linear) or rotation from least (Cyclic)
    std::vector<Id> edges;   // boundary-edge names; edges[i]: letters[i] → letters[i+1]
    bool cyclic = false;
    Id label;
};

/// One connected component of the string boundary ∂_sΓ.
struct StringComponent {
    Id id;                 // least edge name among its boundary edges
    std::vector<Id> edges; // σ̂ order; rotated to least for cyclic components
    bool cyclic = false;
    Id start_label;        // labels at the δ endpoints, read along σ̂ (Linear only)
    Id end_label;
};

/// Open-closed fat graph: a fat graph with an embedded free-boundary subgraph
/// of ∂Γ and a brane labeling of its components. The string boundary and its
/// component structure are derived at construction and cached.
class OCFatGraph {
public:
    OCFatGraph() = default;

    /// Components given as vertex lists; edges induced within each list.
    /// Errors: NotSubgraphOfBoundary, NotEmbedding, MissingLabel.
    static OCFatGraph attach(FatGraph fat,
                             const std::vector<std::pair<IdSet, Id>>& free_vertex_specs);

    /// Fully explicit free subgraph; `labels` keyed by component id.
    static OCFatGraph attach_explicit(FatGraph fat, IdSet free_letters, IdSet free_edges,
                                      std::map<Id, Id> labels);

    const FatGraph& fat() const { return fat_; }
    const Graph& carrier() const { return fat_.carrier(); }
    const IdSet& free_letters() const { return free_letters_; }
    const IdSet& free_edges() const { return free_edges_; }

    bool letter_is_free(const Id& l) const { return free_letters_.count(l) != 0; }
    bool boundary_edge_is_free(const Id& e) const { return free_edges_.count(e) != 0; }

    const std::vector<FreeComponent>& free_components() const { return free_comps_; }
    const std::vector<StringComponent>& string_components() const { return string_comps_; }

    const FreeComponent& free_component(const Id& id) const;
    const StringComponent& string_component(const Id& id) const;
    /// Free component id owning a letter, if the letter is free.
    std::optional<Id> free_comp_of_letter(const Id& l) const;
    /// String component id owning a string boundary-edge.
    const Id& string_comp_of_edge(const Id& e) const;

    /// The string boundary ∂_sΓ = ∂Γ \ ∂_fΓ as a B-graph with δ∂_sΓ marked
    /// and labeled by the adjacent free components.
    BGraph string_boundary() const;

    /// Γ viewed as a B-graph with B(Γ) = ι_f(∂_fΓ).
    BGraph as_bgraph() const;

    /// B-labeled-one-manifold type of a string component under the reading
    /// convention: incoming along σ̂, outgoing reversed. "S1" for circles,
    /// "I:a:b" for intervals.
    std::string component_type(const StringComponent& c, Sign part) const;

private:
    void build_caches();

    FatGraph fat_;
    IdSet free_letters_;
    IdSet free_edges_;
    std::map<Id, Id> comp_labels_;

    std::vector<FreeComponent> free_comps_;
    std::vector<StringComponent> string_comps_;
    std::map<Id, Id> letter_free_comp_;
    std::map<Id, Id> edge_string_comp_;
};

/// Components of a candidate free subgraph of ∂Γ, without labels. Used when
/// constructing or transporting free structure.
std::vector<FreeComponent> free_components_of(const FatGraph& fat, const IdSet& letters,
                                              const IdSet& edges);

enum class Tier { Admissible, VeryAdmissible };

/// Partitioned open-closed fat graph: every string component tagged
/// incoming/outgoing, with the Def-22/Def-24 tier computed on construction.
struct Partitioning {
    OCFatGraph oc;
    std::map<Id, Sign> assignment; // string comp id -> sign
    Tier tier = Tier::Admissible;

    Sign sign_of(const Id& comp) const { return assignment.at(comp); }
    std::vector<Id> side(Sign s) const;
};

/// Throws NotAdmissible (with a witness) if ι₋ fails Def 22; computes the tier.
Partitioning attach_partition(OCFatGraph oc, std::map<Id, Sign> assignment);

/// Tier of an assignment without committing to a Partitioning; nullopt when
/// not even admissible.
std::optional<Tier> partition_tier(const OCFatGraph& oc, const std::map<Id, Sign>& assignment,
                                   std::string* witness = nullptr);

enum class FreeIntervalClass { BMinus, BPlus, BMinusPlus, BPlusMinus };
const char* free_interval_class_name(FreeIntervalClass c);

/// Def-27 classification of linear free components by the partition sides of
/// the string components immediately before/after them along σ̂.
std::map<Id, FreeIntervalClass> classify_free_intervals(const Partitioning& p);

/// Def-28 verdict, clause by clause (1-based index -> list of offender ids).
struct SpecialReport {
    bool special = true;
    std::map<int, std::vector<Id>> violations;
};
SpecialReport is_special(const Partitioning& p);

/// Def-29 weak boundary w(Γ) for special graphs. Throws NotSpecial.
Partitioning weak_boundary(const Partitioning& p);

} // namespace ocfat
