#include "ocfat/graph.hpp"

#include <algorithm>

namespace ocfat {

namespace {

void check_identifier(const Id& id) {
    require(!id.empty(), "BadIdentifier", "empty identifier");
    require(id.find(':') == std::string::npos, "BadIdentifier",
            "identifier contains reserved character ':': " + id);
}

} // namespace

Graph Graph::build(IdSet vertices, IdSet half_edges, IdMap source, IdMap reversal) {
    for (const auto& v : vertices) check_identifier(v);
    for (const auto& h : half_edges) {
        check_identifier(h);
        require(vertices.count(h) == 0, "BadIdentifier",
                "identifier used for both a vertex and a half-edge: " + h);
    }
    for (const auto& h : half_edges) {
        auto s = source.find(h);
        require(s != source.end(), "DanglingSource", "no source for half-edge " + h);
        require(vertices.count(s->second) != 0, "DanglingSource",
                "source of " + h + " is not a vertex: " + s->second);
        auto r = reversal.find(h);
        require(r != reversal.end(), "NotInvolution", "no reversal for half-edge " + h);
        require(half_edges.count(r->second) != 0, "NotInvolution",
                "reversal of " + h + " is not a half-edge: " + r->second);
        require(r->second != h, "FixedPointReversal", "r(" + h + ") = " + h);
    }
    require(source.size() == half_edges.size(), "DanglingSource", "source map has foreign keys");
    require(reversal.size() == half_edges.size(), "NotInvolution", "reversal map has foreign keys");
    for (const auto& [h, rh] : reversal)
        require(reversal.at(rh) == h, "NotInvolution", "r(r(" + h + ")) != " + h);

    Graph g;
    g.vertices_ = std::move(vertices);
    g.half_edges_ = std::move(half_edges);
    g.source_ = std::move(source);
    g.reversal_ = std::move(reversal);
    return g;
}

std::vector<Id> Graph::half_edges_at(const Id& v) const {
    std::vector<Id> out;
    for (const auto& [h, s] : source_)
        if (s == v) out.push_back(h);
    return out;
}

std::vector<Id> Graph::edge_representatives() const {
    std::vector<Id> out;
    for (const auto& h : half_edges_)
        if (h < reversal_.at(h)) out.push_back(h);
    return out;
}

long long Graph::euler_characteristic() const {
    return static_cast<long long>(vertices_.size()) - static_cast<long long>(edge_count());
}

Subgraph Subgraph::of(const Graph& parent, IdSet vertex_subset, IdSet half_edge_subset) {
    for (const auto& v : vertex_subset)
        require(parent.has_vertex(v), "InvalidSubgraph", "foreign vertex " + v);
    for (const auto& h : half_edge_subset) {
        require(parent.has_half_edge(h), "InvalidSubgraph", "foreign half-edge " + h);
        require(half_edge_subset.count(parent.reversal(h)) != 0, "InvalidSubgraph",
                "half-edge subset not closed under reversal at " + h);
        require(vertex_subset.count(parent.source(h)) != 0, "InvalidSubgraph",
                "source of included half-edge " + h + " is not included");
    }
    return Subgraph{&parent, std::move(vertex_subset), std::move(half_edge_subset)};
}

Graph Subgraph::to_graph() const {
    IdMap src, rev;
    for (const auto& h : half_edge_subset) {
        src[h] = parent->source(h);
        rev[h] = parent->reversal(h);
    }
    return Graph::build(vertex_subset, half_edge_subset, std::move(src), std::move(rev));
}

Subgraph Subgraph::whole(const Graph& g) {
    return Subgraph{&g, g.vertices(), g.half_edges()};
}

namespace {

// Union-find keyed by id, used for component analysis.
class UnionFind {
public:
    void add(const Id& x) { parent_.emplace(x, x); }
    Id find(const Id& x) {
        Id root = x;
        while (parent_.at(root) != root) root = parent_.at(root);
        Id cur = x;
        while (parent_.at(cur) != cur) {
            Id next = parent_.at(cur);
            parent_[cur] = root;
            cur = next;
        }
        return root;
    }
    void unite(const Id& a, const Id& b) {
        Id ra = find(a), rb = find(b);
        if (ra == rb) return;
        // Keep the lexicographically least id as representative.
        if (rb < ra) std::swap(ra, rb);
        parent_[rb] = ra;
    }

private:
    std::map<Id, Id> parent_;
};

} // namespace

std::vector<Component> components(const Graph& g) {
    UnionFind uf;
    for (const auto& v : g.vertices()) uf.add(v);
    for (const auto& h : g.half_edges()) uf.add(h);
    for (const auto& h : g.half_edges()) {
        uf.unite(h, g.source(h));
        uf.unite(h, g.reversal(h));
    }
    std::map<Id, Component> byroot;
    for (const auto& v : g.vertices()) byroot[uf.find(v)].vertices.insert(v);
    for (const auto& h : g.half_edges()) byroot[uf.find(h)].half_edges.insert(h);
    std::vector<Component> out;
    for (auto& [root, c] : byroot) {
        c.id = root;
        out.push_back(std::move(c));
    }
    return out;
}

ComponentShape shape_of_component(const Graph& g, const Component& c) {
    const std::size_t nv = c.vertices.size();
    const std::size_t ne = c.half_edges.size() / 2;
    if (nv == 1 && ne == 0) return ComponentShape::Isolated;
    std::size_t deg1 = 0, deg2 = 0;
    for (const auto& v : c.vertices) {
        std::size_t d = g.degree(v);
        if (d == 1) ++deg1;
        else if (d == 2) ++deg2;
        else return ComponentShape::Other;
    }
    if (deg1 == 2 && deg1 + deg2 == nv && ne == nv - 1) return ComponentShape::Linear;
    if (deg1 == 0 && deg2 == nv && ne == nv) return ComponentShape::Cyclic;
    return ComponentShape::Other;
}

const char* shape_name(ComponentShape s) {
    switch (s) {
        case ComponentShape::Isolated: return "Isolated";
        case ComponentShape::Linear: return "Linear";
        case ComponentShape::Cyclic: return "Cyclic";
        default: return "Other";
    }
}

bool is_forest(const Graph& g, const Component& c) {
    return c.half_edges.size() / 2 == c.vertices.size() - 1;
}

bool is_forest(const Graph& g) {
    for (const auto& c : components(g))
        if (!is_forest(g, c)) return false;
    return true;
}

ComplementResult complement(const Graph& g, const Subgraph& sub) {
    require(sub.parent == &g, "InvalidSubgraph", "subgraph belongs to a different graph");

    // δ(Γ\Γ') = s⁻¹(V(Γ')) \ H(Γ'): half-edges attached to Γ' but not in it.
    IdSet delta;
    for (const auto& h : g.half_edges())
        if (sub.vertex_subset.count(g.source(h)) != 0 && sub.half_edge_subset.count(h) == 0)
            delta.insert(h);

    IdSet verts;
    for (const auto& v : g.vertices())
        if (sub.vertex_subset.count(v) == 0) verts.insert(v);
    for (const auto& d : delta) verts.insert(d);

    IdSet halves;
    IdMap src, rev;
    for (const auto& h : g.half_edges()) {
        if (sub.half_edge_subset.count(h) != 0) continue;
        halves.insert(h);
        rev[h] = g.reversal(h);
        src[h] = delta.count(h) ? h : g.source(h);
    }

    ComplementResult out;
    out.graph = Graph::build(std::move(verts), std::move(halves), std::move(src), std::move(rev));
    out.delta_vertices = delta;
    for (const auto& v : out.graph.vertices())
        out.natural_map.vertex_map[v] = delta.count(v) ? g.source(v) : v;
    for (const auto& h : out.graph.half_edges())
        out.natural_map.half_map[h] = h;
    return out;
}

Graph reglue_complement(const Graph& original, const Subgraph& sub, const ComplementResult& comp) {
    // Vertices: V(Γ') ∪ (V(Γ\Γ') with δ-vertices sent to their Γ'-sources).
    IdSet verts = sub.vertex_subset;
    for (const auto& v : comp.graph.vertices())
        verts.insert(comp.natural_map.vertex_map.at(v));

    IdSet halves = sub.half_edge_subset;
    for (const auto& h : comp.graph.half_edges()) halves.insert(h);

    IdMap src, rev;
    for (const auto& h : sub.half_edge_subset) {
        src[h] = original.source(h);
        rev[h] = original.reversal(h);
    }
    for (const auto& h : comp.graph.half_edges()) {
        src[h] = comp.natural_map.vertex_map.at(comp.graph.source(h));
        rev[h] = comp.graph.reversal(h);
    }
    return Graph::build(std::move(verts), std::move(halves), std::move(src), std::move(rev));
}

} // namespace ocfat
