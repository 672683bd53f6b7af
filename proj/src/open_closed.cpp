#include "ocfat/open_closed.hpp"

#include <algorithm>

namespace ocfat {

BGraph BGraph::make(Graph g, IdSet marked_vertices, IdSet marked_half_edges,
                    std::map<Id, Id> labels) {
    BGraph b;
    b.graph = std::move(g);
    b.marked = Subgraph::of(b.graph, std::move(marked_vertices), std::move(marked_half_edges));
    Graph marked_graph = b.marked.to_graph();
    for (const auto& c : components(marked_graph))
        require(labels.count(c.id) != 0, "MissingLabel",
                "marked component " + c.id + " has no brane label");
    b.labels = std::move(labels);
    return b;
}

std::optional<Id> BGraph::label_of_vertex(const Id& v) const {
    if (marked.vertex_subset.count(v) == 0) return std::nullopt;
    Graph mg = marked.to_graph();
    for (const auto& c : components(mg))
        if (c.vertices.count(v)) return labels.at(c.id);
    return std::nullopt;
}

BGraph vertex_bgraph(const BGraph& b) {
    Graph discrete = Graph::build(b.graph.vertices(), {}, {}, {});
    std::map<Id, Id> labels;
    Graph mg = b.marked.to_graph();
    for (const auto& c : components(mg)) {
        const Id& lab = b.labels.at(c.id);
        for (const auto& v : c.vertices) labels[v] = lab;
    }
    return BGraph::make(std::move(discrete), b.marked.vertex_subset, {}, std::move(labels));
}

std::vector<FreeComponent> free_components_of(const FatGraph& fat, const IdSet& letters,
                                              const IdSet& edges) {
    IdMap sigma_hat_inv;
    for (const auto& h : fat.carrier().half_edges()) sigma_hat_inv[fat.sigma_hat(h)] = h;

    std::vector<FreeComponent> out;
    IdSet unvisited = letters;
    while (!unvisited.empty()) {
        Id seed = *unvisited.begin();
        std::vector<Id> chain{seed};
        bool cyclic = false;
        Id cur = seed;
        while (edges.count(cur)) { // boundary edge named cur: cur → σ̂(cur)
            Id nxt = fat.sigma_hat(cur);
            if (nxt == seed) { cyclic = true; break; }
            chain.push_back(nxt);
            cur = nxt;
        }
        if (!cyclic) {
            Id back = seed;
            while (true) {
                Id prev_edge = sigma_hat_inv.at(back);
                if (!edges.count(prev_edge)) break;
                back = prev_edge; // the source letter of edge e is e itself
                chain.insert(chain.begin(), back);
            }
        }
        FreeComponent fc;
        fc.cyclic = cyclic;
        fc.letters = std::move(chain);
        if (cyclic) {
            auto least = std::min_element(fc.letters.begin(), fc.letters.end());
            std::rotate(fc.letters.begin(), least, fc.letters.end());
            fc.edges = fc.letters;
        } else {
            for (std::size_t i = 0; i + 1 < fc.letters.size(); ++i)
                fc.edges.push_back(fc.letters[i]);
        }
        fc.id = *std::min_element(fc.letters.begin(), fc.letters.end());
        for (const auto& l : fc.letters) unvisited.erase(l);
        out.push_back(std::move(fc));
    }
    std::sort(out.begin(), out.end(),
              [](const FreeComponent& a, const FreeComponent& b) { return a.id < b.id; });
    return out;
}

OCFatGraph OCFatGraph::attach(FatGraph fat,
                              const std::vector<std::pair<IdSet, Id>>& free_vertex_specs) {
    IdSet letters, edges;
    for (const auto& [vs, label] : free_vertex_specs) {
        require(!vs.empty(), "NotSubgraphOfBoundary", "empty free component spec");
        for (const auto& l : vs) {
            require(fat.carrier().has_half_edge(l), "NotSubgraphOfBoundary",
                    "free vertex " + l + " is not a boundary vertex");
            require(letters.insert(l).second, "NotSubgraphOfBoundary",
                    "free vertex " + l + " appears in two components");
        }
    }
    for (const auto& [vs, label] : free_vertex_specs)
        for (const auto& l : vs)
            if (vs.count(fat.sigma_hat(l))) edges.insert(l);

    auto comps = free_components_of(fat, letters, edges);
    std::map<Id, Id> labels;
    for (const auto& [vs, label] : free_vertex_specs) {
        bool found = false;
        for (const auto& c : comps) {
            if (c.letters.size() == vs.size() && IdSet(c.letters.begin(), c.letters.end()) == vs) {
                labels[c.id] = label;
                found = true;
                break;
            }
        }
        require(found, "NotSubgraphOfBoundary",
                "free component spec is not a connected component: {" + *vs.begin() + ", ...}");
    }
    return attach_explicit(std::move(fat), std::move(letters), std::move(edges),
                           std::move(labels));
}

OCFatGraph OCFatGraph::attach_explicit(FatGraph fat, IdSet free_letters, IdSet free_edges,
                                       std::map<Id, Id> labels) {
    const Graph& g = fat.carrier();
    for (const auto& l : free_letters)
        require(g.has_half_edge(l), "NotSubgraphOfBoundary",
                "free vertex " + l + " is not a boundary vertex");
    for (const auto& e : free_edges) {
        require(g.has_half_edge(e), "NotSubgraphOfBoundary",
                "free edge " + e + " is not a boundary edge");
        require(free_letters.count(e) && free_letters.count(fat.sigma_hat(e)),
                "NotSubgraphOfBoundary", "free edge " + e + " has a non-free endpoint");
    }
    // ι_f must be an embedding: distinct source vertices for free letters,
    // and no Γ-edge covered by two free boundary edges.
    std::map<Id, Id> seen_vertex;
    for (const auto& l : free_letters) {
        const Id& v = g.source(l);
        auto [it, fresh] = seen_vertex.emplace(v, l);
        require(fresh, "NotEmbedding",
                "free vertices " + it->second + " and " + l + " both map to vertex " + v);
    }
    for (const auto& e : free_edges)
        require(free_edges.count(g.reversal(e)) == 0, "NotEmbedding",
                "both orientations of edge {" + e + "," + g.reversal(e) + "} are free");

    OCFatGraph oc;
    oc.fat_ = std::move(fat);
    oc.free_letters_ = std::move(free_letters);
    oc.free_edges_ = std::move(free_edges);
    oc.comp_labels_ = std::move(labels);
    oc.build_caches();
    return oc;
}

void OCFatGraph::build_caches() {
    const Graph& g = fat_.carrier();

    free_comps_ = free_components_of(fat_, free_letters_, free_edges_);
    for (auto& fc : free_comps_) {
        require(comp_labels_.count(fc.id) != 0, "MissingLabel",
                "free component " + fc.id + " has no brane label");
        fc.label = comp_labels_.at(fc.id);
        for (const auto& l : fc.letters) letter_free_comp_[l] = fc.id;
    }
    for (const auto& [id, lab] : comp_labels_)
        require(letter_free_comp_.count(id) && letter_free_comp_.at(id) == id, "MissingLabel",
                "label given for unknown free component " + id);

    IdMap sigma_hat_inv;
    for (const auto& h : g.half_edges()) sigma_hat_inv[fat_.sigma_hat(h)] = h;

    auto label_at_letter = [&](const Id& l) -> Id {
        auto it = letter_free_comp_.find(l);
        return it == letter_free_comp_.end() ? Id{} : comp_labels_.at(it->second);
    };

    IdSet unvisited;
    for (const auto& h : g.half_edges())
        if (!free_edges_.count(h)) unvisited.insert(h);
    while (!unvisited.empty()) {
        Id seed = *unvisited.begin();
        StringComponent sc;
        Id first = seed;
        while (!letter_is_free(first)) {
            Id prev = sigma_hat_inv.at(first);
            if (prev == seed) { sc.cyclic = true; break; }
            first = prev;
        }
        if (sc.cyclic) {
            Id cur = seed;
            do {
                sc.edges.push_back(cur);
                cur = fat_.sigma_hat(cur);
            } while (cur != seed);
            auto least = std::min_element(sc.edges.begin(), sc.edges.end());
            std::rotate(sc.edges.begin(), least, sc.edges.end());
        } else {
            Id cur = first;
            while (true) {
                sc.edges.push_back(cur);
                Id nxt = fat_.sigma_hat(cur);
                if (letter_is_free(nxt)) break;
                cur = nxt;
            }
            sc.start_label = label_at_letter(first);
            sc.end_label = label_at_letter(fat_.sigma_hat(sc.edges.back()));
        }
        sc.id = *std::min_element(sc.edges.begin(), sc.edges.end());
        for (const auto& e : sc.edges) {
            edge_string_comp_[e] = sc.id;
            unvisited.erase(e);
        }
        string_comps_.push_back(std::move(sc));
    }
    std::sort(string_comps_.begin(), string_comps_.end(),
              [](const StringComponent& a, const StringComponent& b) { return a.id < b.id; });
}

const FreeComponent& OCFatGraph::free_component(const Id& id) const {
    for (const auto& c : free_comps_)
        if (c.id == id) return c;
    fail("UnknownComponent", "no free component " + id);
}

const StringComponent& OCFatGraph::string_component(const Id& id) const {
    for (const auto& c : string_comps_)
        if (c.id == id) return c;
    fail("UnknownComponent", "no string component " + id);
}

std::optional<Id> OCFatGraph::free_comp_of_letter(const Id& l) const {
    auto it = letter_free_comp_.find(l);
    if (it == letter_free_comp_.end()) return std::nullopt;
    return it->second;
}

const Id& OCFatGraph::string_comp_of_edge(const Id& e) const {
    return edge_string_comp_.at(e);
}

BGraph OCFatGraph::string_boundary() const {
    BoundaryGraph bg = boundary_graph(fat_);
    IdSet fh;
    for (const auto& e : free_edges_) {
        fh.insert(BoundaryGraph::half0(e));
        fh.insert(BoundaryGraph::half1(e));
    }
    Subgraph free_sub = Subgraph::of(bg.graph, free_letters_, fh);
    ComplementResult comp = complement(bg.graph, free_sub);

    std::map<Id, Id> labels;
    for (const auto& d : comp.delta_vertices) {
        Id e = BoundaryGraph::edge_of_half(d);
        Id letter = (d == BoundaryGraph::half0(e)) ? e : fat_.sigma_hat(e);
        labels[d] = comp_labels_.at(letter_free_comp_.at(letter));
    }
    Graph gs = comp.graph;
    return BGraph::make(std::move(gs), comp.delta_vertices, {}, std::move(labels));
}

BGraph OCFatGraph::as_bgraph() const {
    IdSet mv, mh;
    for (const auto& l : free_letters_) mv.insert(carrier().source(l));
    for (const auto& e : free_edges_) {
        mh.insert(e);
        mh.insert(carrier().reversal(e));
    }
    std::map<Id, Id> labels;
    for (const auto& fc : free_comps_) {
        Id least;
        for (const auto& l : fc.letters) {
            Id v = carrier().source(l);
            if (least.empty() || v < least) least = v;
        }
        labels[least] = fc.label;
    }
    return BGraph::make(carrier(), std::move(mv), std::move(mh), std::move(labels));
}

std::string OCFatGraph::component_type(const StringComponent& c, Sign part) const {
    if (c.cyclic) return "S1";
    if (part == Sign::Minus) return "I:" + c.start_label + ":" + c.end_label;
    return "I:" + c.end_label + ":" + c.start_label;
}

std::vector<Id> Partitioning::side(Sign s) const {
    std::vector<Id> out;
    for (const auto& [id, sg] : assignment)
        if (sg == s) out.push_back(id);
    return out;
}

std::optional<Tier> partition_tier(const OCFatGraph& oc, const std::map<Id, Sign>& assignment,
                                   std::string* witness) {
    const Graph& g = oc.carrier();
    auto incoming_edge = [&](const Id& e) {
        if (oc.boundary_edge_is_free(e)) return false;
        return assignment.at(oc.string_comp_of_edge(e)) == Sign::Minus;
    };
    for (const auto& h : g.half_edges()) {
        if (!incoming_edge(h)) continue;
        const Id& rh = g.reversal(h);
        if (incoming_edge(rh)) {
            if (witness)
                *witness = "both orientations of edge {" + h + "," + rh + "} are incoming";
            return std::nullopt;
        }
        if (oc.boundary_edge_is_free(rh)) {
            if (witness)
                *witness = "incoming boundary edge " + h + " maps to labeled edge {" + h + "," +
                           rh + "}";
            return std::nullopt;
        }
    }
    std::map<Id, Id> seen; // Γ-vertex -> first ∂⁻ vertex mapping there
    bool very = true;
    for (const auto& sc : oc.string_components()) {
        if (assignment.at(sc.id) != Sign::Minus) continue;
        std::vector<std::pair<Id, Id>> images;
        for (const auto& e : sc.edges) images.emplace_back(g.source(e), e);
        if (!sc.cyclic) images.emplace_back(g.target(sc.edges.back()), sc.edges.back() + " end");
        for (const auto& [v, who] : images)
            if (!seen.emplace(v, who).second) very = false;
    }
    return very ? Tier::VeryAdmissible : Tier::Admissible;
}

Partitioning attach_partition(OCFatGraph oc, std::map<Id, Sign> assignment) {
    IdSet comp_ids;
    for (const auto& c : oc.string_components()) comp_ids.insert(c.id);
    for (const auto& [id, s] : assignment)
        require(comp_ids.count(id) != 0, "UnknownComponent", "no string component " + id);
    require(assignment.size() == comp_ids.size(), "UnknownComponent",
            "assignment must cover every string component exactly once");
    std::string witness;
    auto tier = partition_tier(oc, assignment, &witness);
    require(tier.has_value(), "NotAdmissible", witness);
    Partitioning p;
    p.oc = std::move(oc);
    p.assignment = std::move(assignment);
    p.tier = *tier;
    return p;
}

const char* free_interval_class_name(FreeIntervalClass c) {
    switch (c) {
        case FreeIntervalClass::BMinus: return "B-";
        case FreeIntervalClass::BPlus: return "B+";
        case FreeIntervalClass::BMinusPlus: return "B-+";
        default: return "B+-";
    }
}

std::map<Id, FreeIntervalClass> classify_free_intervals(const Partitioning& p) {
    const OCFatGraph& oc = p.oc;
    IdMap sigma_hat_inv;
    for (const auto& h : oc.carrier().half_edges())
        sigma_hat_inv[oc.fat().sigma_hat(h)] = h;

    std::map<Id, FreeIntervalClass> out;
    for (const auto& fc : oc.free_components()) {
        if (fc.cyclic) continue;
        const Id before_edge = sigma_hat_inv.at(fc.letters.front());
        const Id after_edge = fc.letters.back(); // its out-edge carries its name
        Sign before = p.assignment.at(oc.string_comp_of_edge(before_edge));
        Sign after = p.assignment.at(oc.string_comp_of_edge(after_edge));
        FreeIntervalClass cls;
        if (before == Sign::Minus && after == Sign::Minus) cls = FreeIntervalClass::BMinus;
        else if (before == Sign::Plus && after == Sign::Plus) cls = FreeIntervalClass::BPlus;
        else if (before == Sign::Minus) cls = FreeIntervalClass::BMinusPlus;
        else cls = FreeIntervalClass::BPlusMinus;
        out[fc.id] = cls;
    }
    return out;
}

SpecialReport is_special(const Partitioning& p) {
    const OCFatGraph& oc = p.oc;
    const Graph& g = oc.carrier();
    SpecialReport rep;
    auto violate = [&](int clause, const Id& who) {
        rep.special = false;
        rep.violations[clause].push_back(who);
    };

    IdSet sanctioned;
    for (const auto& fc : oc.free_components()) {
        for (const auto& l : fc.letters) sanctioned.insert(g.source(l));
        if (fc.cyclic) {
            if (fc.edges.size() != 1) violate(2, fc.id);
            else if (g.degree(g.source(fc.letters.front())) != 3) violate(3, fc.id);
        } else if (fc.letters.size() != 1) {
            violate(1, fc.id);
        }
    }
    auto classes = classify_free_intervals(p);
    for (const auto& fc : oc.free_components()) {
        if (fc.cyclic) continue;
        auto cls = classes.at(fc.id);
        if (fc.letters.size() != 1) {
            violate(cls == FreeIntervalClass::BMinus ? 5 : 4, fc.id);
            continue;
        }
        std::size_t deg = g.degree(g.source(fc.letters.front()));
        if (cls == FreeIntervalClass::BMinus) {
            if (deg != 2) violate(5, fc.id);
        } else if (deg != 1) {
            violate(4, fc.id);
        }
    }
    for (const auto& v : g.vertices()) {
        std::size_t d = g.degree(v);
        if ((d == 1 || d == 2) && !sanctioned.count(v)) violate(6, v);
    }
    return rep;
}

Partitioning weak_boundary(const Partitioning& p) {
    require(is_special(p).special, "NotSpecial", "weak boundary requires a special graph");
    const OCFatGraph& oc = p.oc;
    const Graph& g = oc.carrier();
    auto classes = classify_free_intervals(p);

    IdSet free_letters = oc.free_letters();
    IdSet free_edges = oc.free_edges();
    IdSet dropped_halves;

    for (const auto& fc : oc.free_components()) {
        if (fc.cyclic) {
            for (const auto& l : fc.letters) free_letters.erase(l);
            for (const auto& e : fc.edges) {
                free_edges.erase(e);
                dropped_halves.insert(e);
                dropped_halves.insert(g.reversal(e));
            }
        } else {
            auto cls = classes.at(fc.id);
            if (cls == FreeIntervalClass::BMinus || cls == FreeIntervalClass::BPlus) {
                for (const auto& l : fc.letters) free_letters.erase(l);
                for (const auto& e : fc.edges) free_edges.erase(e);
            }
        }
    }

    IdSet verts = g.vertices();
    IdSet halves;
    IdMap rev;
    for (const auto& h : g.half_edges())
        if (!dropped_halves.count(h)) {
            halves.insert(h);
            rev[h] = g.reversal(h);
        }

    // Remove leaves / smooth bivalent vertices created by the loop deletions.
    IdSet touched;
    for (const auto& h : dropped_halves) touched.insert(g.source(h));
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& v : IdSet(touched)) {
            if (!verts.count(v)) continue;
            std::vector<Id> at_v;
            for (const auto& h : halves)
                if (g.source(h) == v) at_v.push_back(h);
            if (at_v.size() == 1) {
                const Id x = at_v.front();
                const Id y = rev.at(x);
                if (free_letters.count(x) || free_letters.count(y)) continue;
                halves.erase(x);
                halves.erase(y);
                rev.erase(x);
                rev.erase(y);
                verts.erase(v);
                touched.insert(g.source(y));
                changed = true;
            } else if (at_v.size() == 2) {
                const Id x = at_v[0];
                const Id y = at_v[1];
                if (rev.at(x) == y) continue; // a bare circle component; keep
                if (free_letters.count(x) || free_letters.count(y)) continue;
                Id a = rev.at(x), b = rev.at(y);
                halves.erase(x);
                halves.erase(y);
                rev.erase(x);
                rev.erase(y);
                rev[a] = b;
                rev[b] = a;
                verts.erase(v);
                changed = true;
            } else if (at_v.empty()) {
                verts.erase(v);
                changed = true;
            }
        }
    }

    IdMap src;
    for (const auto& h : halves) src[h] = g.source(h);
    Graph carrier = Graph::build(verts, halves, std::move(src), IdMap(rev));

    std::map<Id, std::vector<Id>> orders;
    for (const auto& v : carrier.vertices()) {
        std::vector<Id> seq;
        for (const auto& h : oc.fat().order_at(v))
            if (carrier.has_half_edge(h)) seq.push_back(h);
        orders[v] = std::move(seq);
    }
    FatGraph fat = FatGraph::attach(std::move(carrier), std::move(orders));

    // Surviving free components keep their letter sets, hence their ids.
    std::map<Id, Id> new_labels;
    for (const auto& fc : oc.free_components())
        if (free_letters.count(fc.id)) new_labels[fc.id] = fc.label;
    OCFatGraph woc = OCFatGraph::attach_explicit(std::move(fat), std::move(free_letters),
                                                 std::move(free_edges), std::move(new_labels));

    std::map<Id, Sign> assignment;
    for (const auto& sc : woc.string_components()) {
        std::optional<Sign> sign;
        for (const auto& e : sc.edges) {
            if (!oc.carrier().has_half_edge(e) || oc.boundary_edge_is_free(e)) continue;
            Sign s = p.assignment.at(oc.string_comp_of_edge(e));
            require(!sign || *sign == s, "InternalInvariant",
                    "weak boundary merged string components across the partition");
            sign = s;
        }
        require(sign.has_value(), "InternalInvariant",
                "weak string component with no inherited side: " + sc.id);
        assignment[sc.id] = *sign;
    }
    return attach_partition(std::move(woc), std::move(assignment));
}

} // namespace ocfat
