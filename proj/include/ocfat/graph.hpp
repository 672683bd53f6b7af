#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ocfat/error.hpp"

namespace ocfat {

using Id = std::string;
using IdSet = std::set<Id>;
using IdMap = std::map<Id, Id>;

/// Finite half-edge graph: vertices, half-edges, a source map and a
/// fixed-point-free reversal involution. Values are immutable once built.
class Graph {
public:
    Graph() = default;

    /// Validates all axioms; throws FixedPointReversal / NotInvolution /
    /// DanglingSource / BadIdentifier on violation.
    static Graph build(IdSet vertices, IdSet half_edges, IdMap source, IdMap reversal);

    const IdSet& vertices() const { return vertices_; }
    const IdSet& half_edges() const { return half_edges_; }
    const IdMap& source_map() const { return source_; }
    const IdMap& reversal_map() const { return reversal_; }

    const Id& source(const Id& h) const { return source_.at(h); }
    const Id& reversal(const Id& h) const { return reversal_.at(h); }
    /// Target map t = s ∘ r.
    const Id& target(const Id& h) const { return source_.at(reversal_.at(h)); }

    bool has_vertex(const Id& v) const { return vertices_.count(v) != 0; }
    bool has_half_edge(const Id& h) const { return half_edges_.count(h) != 0; }

    /// Half-edges incident to v (H(v)), in lexicographic order.
    std::vector<Id> half_edges_at(const Id& v) const;
    std::size_t degree(const Id& v) const { return half_edges_at(v).size(); }

    /// One representative per edge: the lexicographically smaller half.
    std::vector<Id> edge_representatives() const;
    std::size_t edge_count() const { return half_edges_.size() / 2; }

    /// #V - #E
    long long euler_characteristic() const;

    bool empty() const { return vertices_.empty() && half_edges_.empty(); }

private:
    IdSet vertices_;
    IdSet half_edges_;
    IdMap source_;
    IdMap reversal_;
};

/// Subgraph designated by subsets of an ambient graph's vertices/half-edges.
/// Structure maps are the restrictions.
struct Subgraph {
    const Graph* parent = nullptr;
    IdSet vertex_subset;
    IdSet half_edge_subset;

    /// Throws InvalidSubgraph if not closed under reversal / sources.
    static Subgraph of(const Graph& parent, IdSet vertex_subset, IdSet half_edge_subset);

    /// The subgraph as a standalone Graph value.
    Graph to_graph() const;

    /// Whole graph as a subgraph of itself.
    static Subgraph whole(const Graph& g);
};

/// A plain graph morphism: vertices to vertices, half-edges to half-edges
/// or vertices (s and r extend to the target's vertices as the identity).
struct GraphMorphism {
    IdMap vertex_map;              // V(src) -> V(dst)
    IdMap half_map;                // H(src) -> H(dst) ∪ V(dst)
    std::set<Id> half_to_vertex;   // those h whose image is a vertex

    bool maps_half_to_vertex(const Id& h) const { return half_to_vertex.count(h) != 0; }
};

/// Connected component of a graph: vertex and half-edge sets plus the
/// deterministic identifier (lexicographically least member).
struct Component {
    Id id;
    IdSet vertices;
    IdSet half_edges;
};

enum class ComponentShape { Isolated, Linear, Cyclic, Other };

/// Connected components under the incidence relation, keyed and ordered by
/// their least member.
std::vector<Component> components(const Graph& g);

ComponentShape shape_of_component(const Graph& g, const Component& c);

const char* shape_name(ComponentShape s);

/// True iff every component is a tree.
bool is_forest(const Graph& g);
bool is_forest(const Graph& g, const Component& c);

/// Complement graph Γ \ Γ' together with the natural map back to Γ.
/// New δ-vertices are named by the half-edge they stand for.
struct ComplementResult {
    Graph graph;
    GraphMorphism natural_map; // complement -> parent
    IdSet delta_vertices;      // δ(Γ\Γ') ⊆ H(Γ), present as vertices of `graph`
};

ComplementResult complement(const Graph& g, const Subgraph& sub);

/// Re-glue Γ' and Γ\Γ' along δ: identify each δ-vertex e with s_Γ(e).
/// Used to exercise the pushout property; returns a graph on original names.
Graph reglue_complement(const Graph& original, const Subgraph& sub, const ComplementResult& comp);

} // namespace ocfat
