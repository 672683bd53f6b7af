#include "ocfat/moves.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "ocfat/canonical.hpp"

namespace ocfat {

std::string Move::describe() const {
    std::ostringstream os;
    if (kind == Kind::Collapse) {
        os << "collapse " << edge;
    } else {
        os << "expand " << vertex << " [";
        for (std::size_t i = 0; i < arc.size(); ++i) os << (i ? " " : "") << arc[i];
        os << "] new " << new_half;
    }
    return os.str();
}

namespace {

// First letter σ̂-after x that survives the deletion of `dead`.
std::optional<Id> forward_surviving(const FatGraph& fat, const IdSet& dead, const Id& x) {
    Id cur = fat.sigma_hat(x);
    for (std::size_t i = 0; i <= dead.size(); ++i) {
        if (!dead.count(cur)) return cur;
        cur = fat.sigma_hat(cur);
    }
    return std::nullopt; // the whole boundary cycle dies
}

// Free data transported through a letter deletion; labels re-keyed by the
// components of the result. Throws BreaksOpenClosedStructure on any failure
// of the Def-13 condition.
struct TransportedFree {
    IdSet letters;
    IdSet edges;
    std::map<Id, Id> labels;
    IdMap comp_map; // old free comp id -> new
};

TransportedFree transport_free(const OCFatGraph& oc, const FatGraph& new_fat, const IdSet& dead) {
    TransportedFree out;
    std::map<Id, Id> image; // old free letter -> new letter
    for (const auto& l : oc.free_letters()) {
        if (!dead.count(l)) {
            image[l] = l;
        } else {
            auto fwd = forward_surviving(oc.fat(), dead, l);
            require(fwd.has_value(), "BreaksOpenClosedStructure",
                    "free vertex " + l + " has no image: its boundary cycle dies");
            image[l] = *fwd;
        }
        out.letters.insert(image[l]);
    }
    for (const auto& e : oc.free_edges())
        if (!dead.count(e)) out.edges.insert(e);

    auto comps = free_components_of(new_fat, out.letters, out.edges);
    std::map<Id, Id> letter_to_new;
    for (const auto& c : comps)
        for (const auto& l : c.letters) letter_to_new[l] = c.id;

    for (const auto& fc : oc.free_components()) {
        std::optional<Id> target;
        for (const auto& l : fc.letters) {
            auto it = letter_to_new.find(image.at(l));
            require(it != letter_to_new.end(), "BreaksOpenClosedStructure",
                    "free vertex image left the free boundary");
            require(!target || *target == it->second, "BreaksOpenClosedStructure",
                    "free component " + fc.id + " is torn apart");
            target = it->second;
        }
        auto [pos, fresh] = out.labels.emplace(*target, fc.label);
        require(fresh, "BreaksOpenClosedStructure",
                "two free components merge at " + *target);
        out.comp_map[fc.id] = *target;
    }
    require(out.labels.size() == comps.size(), "BreaksOpenClosedStructure",
            "free boundary gained a component");
    return out;
}

// Partition transported through a move: every new string component takes the
// sign of the old components whose surviving edges it contains.
std::map<Id, Sign> transport_partition(const Partitioning& p, const OCFatGraph& new_oc,
                                       IdMap* comp_map_out) {
    std::map<Id, Sign> assignment;
    std::map<Id, Id> old_to_new;
    for (const auto& sc : new_oc.string_components()) {
        std::optional<Sign> sign;
        for (const auto& e : sc.edges) {
            if (!p.oc.carrier().has_half_edge(e)) continue; // created by expansion
            if (p.oc.boundary_edge_is_free(e)) continue;    // released free edge
            const Id& old_comp = p.oc.string_comp_of_edge(e);
            Sign s = p.assignment.at(old_comp);
            require(!sign || *sign == s, "BreaksOpenClosedStructure",
                    "move merges string components across the partition");
            sign = s;
            auto [it, fresh] = old_to_new.emplace(old_comp, sc.id);
            require(it->second == sc.id, "BreaksOpenClosedStructure",
                    "move tears a string component apart");
        }
        require(sign.has_value(), "BreaksOpenClosedStructure",
                "string component " + sc.id + " has no inherited side");
        assignment[sc.id] = *sign;
    }
    for (const auto& sc : p.oc.string_components())
        require(old_to_new.count(sc.id) != 0, "BreaksOpenClosedStructure",
                "string component " + sc.id + " disappeared");
    if (comp_map_out) *comp_map_out = std::move(old_to_new);
    return assignment;
}

} // namespace

CollapseResult collapse_edge(const Partitioning& p, const Id& edge_half) {
    const OCFatGraph& oc = p.oc;
    const Graph& g = oc.carrier();
    require(g.has_half_edge(edge_half), "UnknownEdge", "no half-edge " + edge_half);
    const Id h = std::min(edge_half, g.reversal(edge_half));
    const Id rh = g.reversal(h);
    const Id u = g.source(h), v = g.source(rh);
    require(u != v, "LoopEdge", "cannot collapse loop edge {" + h + "," + rh + "}");

    const IdSet dead{h, rh};
    const Id w = std::min(u, v);

    // Spliced carrier: cut the cyclic orders at h and rh and concatenate.
    IdSet verts;
    for (const auto& x : g.vertices())
        if (x != u && x != v) verts.insert(x);
    verts.insert(w);
    IdSet halves;
    IdMap src, rev;
    for (const auto& x : g.half_edges()) {
        if (dead.count(x)) continue;
        halves.insert(x);
        rev[x] = g.reversal(x);
        const Id& sx = g.source(x);
        src[x] = (sx == u || sx == v) ? w : sx;
    }
    std::map<Id, std::vector<Id>> orders;
    for (const auto& x : verts) {
        if (x != w) {
            orders[x] = oc.fat().order_at(x);
            continue;
        }
        std::vector<Id> merged;
        for (Id cur = oc.fat().sigma_at(h); cur != h; cur = oc.fat().sigma_at(cur))
            merged.push_back(cur);
        for (Id cur = oc.fat().sigma_at(rh); cur != rh; cur = oc.fat().sigma_at(cur))
            merged.push_back(cur);
        orders[x] = std::move(merged);
    }
    // A vertex keeping its name but merged needs the splice, not its old order.
    FatGraph new_fat = FatGraph::attach(
        Graph::build(std::move(verts), std::move(halves), std::move(src), std::move(rev)),
        std::move(orders));

    TransportedFree tf = transport_free(oc, new_fat, dead);
    OCFatGraph new_oc = OCFatGraph::attach_explicit(std::move(new_fat), std::move(tf.letters),
                                                    std::move(tf.edges), std::move(tf.labels));

    CollapseResult out;
    out.string_comp_map = {};
    auto assignment = transport_partition(p, new_oc, &out.string_comp_map);
    out.result = attach_partition(std::move(new_oc), std::move(assignment));
    out.free_comp_map = std::move(tf.comp_map);
    for (const auto& x : g.vertices()) out.vertex_map[x] = (x == u || x == v) ? w : x;
    for (const auto& x : g.half_edges()) out.half_map[x] = dead.count(x) ? w : x;
    out.move.kind = Move::Kind::Collapse;
    out.move.edge = h;
    return out;
}

bool can_collapse(const Partitioning& p, const Id& edge_half) {
    try {
        collapse_edge(p, edge_half);
        return true;
    } catch (const Error&) {
        return false;
    }
}

BCollapseResult collapse_edge(const BGraph& b, const Id& edge_half) {
    const Graph& g = b.graph;
    require(g.has_half_edge(edge_half), "UnknownEdge", "no half-edge " + edge_half);
    const Id h = std::min(edge_half, g.reversal(edge_half));
    const Id rh = g.reversal(h);
    const Id u = g.source(h), v = g.source(rh);
    require(u != v, "LoopEdge", "cannot collapse loop edge {" + h + "," + rh + "}");

    // Remark-5 monochromatic condition: edge and both endpoints inside the
    // marked subgraph, or all of them outside it.
    const bool edge_in = b.marked.half_edge_subset.count(h) != 0;
    const bool u_in = b.marked.vertex_subset.count(u) != 0;
    const bool v_in = b.marked.vertex_subset.count(v) != 0;
    require((edge_in && u_in && v_in) || (!edge_in && !u_in && !v_in), "NotMonochromatic",
            "edge {" + h + "," + rh + "} is not wholly monochromatic");

    const Id w = std::min(u, v);
    IdSet verts;
    for (const auto& x : g.vertices())
        if (x != u && x != v) verts.insert(x);
    verts.insert(w);
    IdSet halves;
    IdMap src, rev;
    for (const auto& x : g.half_edges()) {
        if (x == h || x == rh) continue;
        halves.insert(x);
        rev[x] = g.reversal(x);
        const Id& sx = g.source(x);
        src[x] = (sx == u || sx == v) ? w : sx;
    }
    IdSet mverts;
    for (const auto& x : b.marked.vertex_subset)
        if (x != u && x != v) mverts.insert(x);
    if (u_in) mverts.insert(w);
    IdSet mhalves;
    for (const auto& x : b.marked.half_edge_subset)
        if (x != h && x != rh) mhalves.insert(x);

    Graph ng = Graph::build(std::move(verts), std::move(halves), std::move(src), std::move(rev));
    // Labels re-keyed by the merged components.
    std::map<Id, Id> labels;
    {
        IdMap ms, mr;
        for (const auto& x : mhalves) {
            ms[x] = ng.source(x);
            mr[x] = ng.reversal(x);
        }
        Graph mg = Graph::build(mverts, mhalves, std::move(ms), std::move(mr));
        auto old_table = [&]() {
            std::map<Id, Id> t;
            Graph og = b.marked.to_graph();
            for (const auto& c : components(og)) {
                for (const auto& x : c.vertices) t[x] = b.labels.at(c.id);
            }
            return t;
        }();
        for (const auto& c : components(mg)) {
            const Id& rep = *c.vertices.begin();
            labels[c.id] = old_table.at(rep == w ? (u_in ? u : rep) : rep);
        }
    }
    BGraph result = BGraph::make(std::move(ng), std::move(mverts), std::move(mhalves),
                                 std::move(labels));

    IdMap pv, ph;
    for (const auto& x : g.vertices()) pv[x] = (x == u || x == v) ? w : x;
    for (const auto& x : g.half_edges()) ph[x] = (x == h || x == rh) ? w : x;
    BCollapseResult out;
    out.morphism = build_morphism(b, result, std::move(pv), std::move(ph));
    out.result = std::move(result);
    return out;
}

namespace {

std::pair<Id, std::pair<Id, Id>> fresh_expansion_names(const Graph& g, const Id& v) {
    for (int k = 0;; ++k) {
        Id nv = v + "~v" + std::to_string(k);
        Id ne = v + "~e" + std::to_string(k);
        Id nf = v + "~f" + std::to_string(k);
        if (!g.has_vertex(nv) && !g.has_half_edge(ne) && !g.has_half_edge(nf))
            return {nv, {ne, nf}};
    }
}

bool partitionings_equal(const Partitioning& a, const Partitioning& b) {
    return a.oc.carrier().vertices() == b.oc.carrier().vertices() &&
           a.oc.carrier().half_edges() == b.oc.carrier().half_edges() &&
           a.oc.carrier().source_map() == b.oc.carrier().source_map() &&
           a.oc.carrier().reversal_map() == b.oc.carrier().reversal_map() &&
           a.oc.fat().sigma() == b.oc.fat().sigma() &&
           a.oc.free_letters() == b.oc.free_letters() &&
           a.oc.free_edges() == b.oc.free_edges() && a.assignment == b.assignment;
}

} // namespace

ExpandResult expand_vertex(const Partitioning& p, const Id& v, const std::vector<Id>& arc) {
    const OCFatGraph& oc = p.oc;
    const Graph& g = oc.carrier();
    require(g.has_vertex(v), "UnknownVertex", "no vertex " + v);

    const std::vector<Id> cyc = oc.fat().order_at(v);
    // Contiguity: `arc` must be a contiguous run of the cyclic order at v
    // (for an empty arc the run is the canonical rotation, anchored below).
    std::vector<Id> rest;
    if (arc.empty()) {
        rest = cyc;
    } else {
        auto it = std::find(cyc.begin(), cyc.end(), arc.front());
        require(it != cyc.end(), "NotContiguous", "arc starts outside H(" + v + ")");
        std::size_t pos = static_cast<std::size_t>(it - cyc.begin());
        for (std::size_t i = 0; i < arc.size(); ++i)
            require(cyc[(pos + i) % cyc.size()] == arc[i], "NotContiguous",
                    "arc is not a contiguous run of the cyclic order at " + v);
        for (std::size_t i = arc.size(); i < cyc.size(); ++i)
            rest.push_back(cyc[(pos + i) % cyc.size()]);
    }

    auto [nv, halves_pair] = fresh_expansion_names(g, v);
    const Id ne = halves_pair.first;  // stays at v
    const Id nf = halves_pair.second; // at the new vertex

    IdSet verts = g.vertices();
    verts.insert(nv);
    IdSet halves = g.half_edges();
    halves.insert(ne);
    halves.insert(nf);
    IdMap src = g.source_map(), rev = g.reversal_map();
    src[ne] = v;
    src[nf] = nv;
    for (const auto& x : rest) src[x] = nv;
    rev[ne] = nf;
    rev[nf] = ne;

    std::map<Id, std::vector<Id>> orders;
    for (const auto& x : g.vertices())
        if (x != v) orders[x] = oc.fat().order_at(x);
    std::vector<Id> at_v(arc);
    at_v.push_back(ne);
    std::vector<Id> at_nv(rest);
    at_nv.push_back(nf);
    orders[v] = std::move(at_v);
    orders[nv] = std::move(at_nv);

    FatGraph new_fat = FatGraph::attach(
        Graph::build(std::move(verts), std::move(halves), std::move(src), std::move(rev)),
        std::move(orders));

    // Free lift: a created letter interrupting a free boundary edge becomes
    // free, extending that component; otherwise it is a string letter.
    IdSet free_letters = oc.free_letters();
    IdSet free_edges = oc.free_edges();
    IdMap sigma_hat_inv;
    for (const auto& x : new_fat.carrier().half_edges())
        sigma_hat_inv[new_fat.sigma_hat(x)] = x;
    for (const Id& nl : {ne, nf}) {
        const Id in_edge = sigma_hat_inv.at(nl);
        if (oc.carrier().has_half_edge(in_edge) && oc.boundary_edge_is_free(in_edge)) {
            free_letters.insert(nl);
            free_edges.insert(nl); // its out-edge continues the free run
        }
    }
    auto comps = free_components_of(new_fat, free_letters, free_edges);
    std::map<Id, Id> letter_to_new;
    for (const auto& c : comps)
        for (const auto& l : c.letters) letter_to_new[l] = c.id;
    std::map<Id, Id> labels;
    for (const auto& fc : oc.free_components()) {
        const Id& nc = letter_to_new.at(fc.letters.front());
        auto [it, fresh] = labels.emplace(nc, fc.label);
        require(it->second == fc.label, "BreaksOpenClosedStructure",
                "expansion merged free components with different labels");
    }
    require(labels.size() == comps.size(), "BreaksOpenClosedStructure",
            "expansion created an unlabeled free component");

    OCFatGraph new_oc = OCFatGraph::attach_explicit(std::move(new_fat), std::move(free_letters),
                                                    std::move(free_edges), std::move(labels));
    auto assignment = transport_partition(p, new_oc, nullptr);
    ExpandResult out;
    out.result = attach_partition(std::move(new_oc), std::move(assignment));
    out.new_vertex = nv;
    out.new_half = ne;
    out.new_half_far = nf;
    out.move.kind = Move::Kind::Expand;
    out.move.vertex = v;
    out.move.arc = arc;
    out.move.new_half = ne;

    // Inverse-move contract: collapsing the new edge recovers the input.
    CollapseResult back = collapse_edge(out.result, ne);
    require(partitionings_equal(back.result, p), "BreaksOpenClosedStructure",
            "expansion is not invertible by collapsing the new edge");
    return out;
}

Partitioning apply_move(const Partitioning& p, const Move& m) {
    if (m.kind == Move::Kind::Collapse) return collapse_edge(p, m.edge).result;
    return expand_vertex(p, m.vertex, m.arc).result;
}

Partitioning apply_moves(Partitioning p, const std::vector<Move>& moves) {
    for (const auto& m : moves) p = apply_move(p, m);
    return p;
}

std::vector<Move> legal_moves(const Partitioning& p, std::size_t max_half_edges) {
    std::vector<Move> out;
    const Graph& g = p.oc.carrier();
    for (const auto& e : g.edge_representatives()) {
        if (can_collapse(p, e)) {
            Move m;
            m.kind = Move::Kind::Collapse;
            m.edge = e;
            out.push_back(std::move(m));
        }
    }
    if (g.half_edges().size() + 2 <= max_half_edges) {
        for (const auto& v : g.vertices()) {
            const std::vector<Id> cyc = p.oc.fat().order_at(v);
            const std::size_t d = cyc.size();
            // Arcs of length 1..d anchored at every position. Lengths < d give
            // proper splits (the mirrored split is isomorphic and also
            // generated); length d puts everything at v and a new leaf beside
            // it. The (∅|∅) split of an isolated vertex is never legal.
            std::vector<std::vector<Id>> arcs;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t len = 1; len <= d; ++len) {
                    std::vector<Id> a;
                    for (std::size_t k = 0; k < len; ++k) a.push_back(cyc[(i + k) % d]);
                    arcs.push_back(std::move(a));
                }
            for (auto& a : arcs) {
                try {
                    ExpandResult r = expand_vertex(p, v, a);
                    out.push_back(r.move);
                } catch (const Error&) {
                }
            }
        }
    }
    return out;
}

MakeSpecialResult make_special(const Partitioning& p) {
    MakeSpecialResult res;
    res.graph = p;

    auto try_apply = [&](const Move& m) {
        try {
            res.graph = apply_move(res.graph, m);
            res.moves.push_back(m);
            return true;
        } catch (const Error&) {
            return false;
        }
    };

    // Greedy phase: Prop-14's forest collapse plus direct valence fixes.
    bool progressed = true;
    while (progressed) {
        progressed = false;
        SpecialReport rep = is_special(res.graph);
        if (rep.special) break;
        const OCFatGraph& oc = res.graph.oc;

        // Clauses 1/2: collapse edges in the image of the free boundary.
        for (const auto& fc : oc.free_components()) {
            bool oversize = fc.cyclic ? fc.edges.size() > 1 : !fc.edges.empty();
            if (!oversize) continue;
            for (const auto& e : fc.edges) {
                Move m;
                m.kind = Move::Kind::Collapse;
                m.edge = std::min(e, oc.carrier().reversal(e));
                if (try_apply(m)) {
                    progressed = true;
                    break;
                }
            }
            if (progressed) break;
        }
        if (progressed) continue;

        // Clause 3: isolate balloon loops at trivalent vertices.
        for (const auto& fc : oc.free_components()) {
            if (!fc.cyclic || fc.edges.size() != 1) continue;
            const Id& l = fc.letters.front();
            const Id host = oc.carrier().source(l);
            if (oc.carrier().degree(host) == 3) continue;
            Move m;
            m.kind = Move::Kind::Expand;
            m.vertex = host;
            m.arc = {oc.carrier().reversal(l), l};
            try {
                ExpandResult r = expand_vertex(res.graph, m.vertex, m.arc);
                res.graph = r.result;
                res.moves.push_back(r.move);
                progressed = true;
            } catch (const Error&) {
            }
            if (progressed) break;
        }
        if (progressed) continue;

        // Clause 5: B⁻ points at bivalent vertices via a single split.
        auto classes = classify_free_intervals(res.graph);
        for (const auto& fc : oc.free_components()) {
            if (fc.cyclic || fc.letters.size() != 1) continue;
            if (classes.at(fc.id) != FreeIntervalClass::BMinus) continue;
            const Id& l = fc.letters.front();
            if (oc.carrier().degree(oc.carrier().source(l)) == 2) continue;
            Move m;
            m.kind = Move::Kind::Expand;
            m.vertex = oc.carrier().source(l);
            m.arc = {l};
            try {
                ExpandResult r = expand_vertex(res.graph, m.vertex, m.arc);
                res.graph = r.result;
                res.moves.push_back(r.move);
                progressed = true;
            } catch (const Error&) {
            }
            if (progressed) break;
        }
        if (progressed) continue;

        // Clause 6: absorb stray leaves and bivalent vertices.
        for (const auto& [clause, offenders] : rep.violations) {
            if (clause != 6) continue;
            for (const auto& v : offenders) {
                for (const auto& h : oc.carrier().half_edges_at(v)) {
                    Move m;
                    m.kind = Move::Kind::Collapse;
                    m.edge = std::min(h, oc.carrier().reversal(h));
                    if (try_apply(m)) {
                        progressed = true;
                        break;
                    }
                }
                if (progressed) break;
            }
        }
        if (progressed) continue;
    }

    if (is_special(res.graph).special) {
        res.special = true;
        return res;
    }

    // Search phase: deterministic best-first over moves, minimizing the
    // violation count; covers clause 4 and interactions the greedy pass
    // cannot resolve locally.
    auto violation_count = [](const Partitioning& q) {
        std::size_t n = 0;
        for (const auto& [clause, offenders] : is_special(q).violations) n += offenders.size();
        return n;
    };
    struct Node {
        std::size_t violations;
        std::size_t halves;
        std::string key;
        Partitioning graph;
        std::vector<Move> moves;
    };
    auto better = [](const Node& a, const Node& b) {
        return std::tie(a.violations, a.halves, a.key) < std::tie(b.violations, b.halves, b.key);
    };
    const std::size_t maxH = res.graph.oc.carrier().half_edges().size() + 6;
    const std::size_t cap = 4000;

    std::vector<Node> frontier;
    std::set<std::string> seen;
    Node start{violation_count(res.graph), res.graph.oc.carrier().half_edges().size(),
               canonical_key(res.graph), res.graph, res.moves};
    seen.insert(start.key);
    frontier.push_back(start);
    Node best = start;
    std::size_t processed = 0;
    while (!frontier.empty() && processed < cap) {
        auto it = std::min_element(frontier.begin(), frontier.end(), better);
        Node cur = *it;
        frontier.erase(it);
        ++processed;
        if (cur.violations == 0) {
            best = cur;
            break;
        }
        if (better(cur, best)) best = cur;
        for (const auto& m : legal_moves(cur.graph, maxH)) {
            Partitioning next;
            try {
                next = apply_move(cur.graph, m);
            } catch (const Error&) {
                continue;
            }
            std::string key = canonical_key(next);
            if (!seen.insert(key).second) continue;
            Node node{violation_count(next), next.oc.carrier().half_edges().size(), key,
                      std::move(next), cur.moves};
            node.moves.push_back(m);
            frontier.push_back(std::move(node));
        }
    }
    res.graph = best.graph;
    res.moves = best.moves;
    res.special = is_special(res.graph).special;
    return res;
}

} // namespace ocfat
