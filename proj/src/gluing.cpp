#include "ocfat/gluing.hpp"

#include <algorithm>

namespace ocfat {

namespace {

class UnionFind {
public:
    void add(const Id& x) { parent_.emplace(x, x); }
    bool has(const Id& x) const { return parent_.count(x) != 0; }
    Id find(const Id& x) {
        Id root = x;
        while (parent_.at(root) != root) root = parent_.at(root);
        Id cur = x;
        while (parent_.at(cur) != cur) {
            Id nxt = parent_.at(cur);
            parent_[cur] = root;
            cur = nxt;
        }
        return root;
    }
    void unite(const Id& a, const Id& b) {
        Id ra = find(a), rb = find(b);
        if (ra == rb) return;
        if (rb < ra) std::swap(ra, rb);
        parent_[rb] = ra;
    }
    std::map<Id, std::vector<Id>> classes() {
        std::map<Id, std::vector<Id>> out;
        for (const auto& [x, p] : parent_) out[find(x)].push_back(x);
        return out;
    }

private:
    std::map<Id, Id> parent_;
};

struct Pairing {
    // For each interface edge pair: plus-edge (Γ₁) and minus-edge (Γ₂).
    IdMap plus_to_minus;       // out₁ boundary edge -> in₂ boundary edge
    IdMap minus_to_plus;
    IdSet consumed1, consumed2; // out₁ / in₂ boundary edges
    IdMap out_first_to_match;   // first edge of an out₁ interval -> match index
    std::map<Id, std::size_t> plus_first, minus_first; // comp id -> match idx
};

} // namespace

std::vector<GlueInterface> interface_candidates(const Partitioning& g1, const Partitioning& g2) {
    std::vector<const StringComponent*> plus, minus;
    for (const auto& sc : g1.oc.string_components())
        if (g1.assignment.at(sc.id) == Sign::Plus) plus.push_back(&sc);
    for (const auto& sc : g2.oc.string_components())
        if (g2.assignment.at(sc.id) == Sign::Minus) minus.push_back(&sc);
    std::vector<GlueInterface> out;
    if (plus.size() != minus.size()) return out;

    const std::size_t n = plus.size();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    auto compatible = [&](const StringComponent& p, const StringComponent& m) {
        return p.cyclic == m.cyclic && p.edges.size() == m.edges.size() &&
               g1.oc.component_type(p, Sign::Plus) == g2.oc.component_type(m, Sign::Minus);
    };
    do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = compatible(*plus[i], *minus[perm[i]]);
        if (!ok) continue;
        // All rotation combinations for the cyclic pairs.
        std::vector<std::size_t> rot(n, 0);
        while (true) {
            GlueInterface iface;
            for (std::size_t i = 0; i < n; ++i)
                iface.matches.push_back({plus[i]->id, minus[perm[i]]->id, rot[i]});
            out.push_back(std::move(iface));
            std::size_t k = 0;
            for (; k < n; ++k) {
                std::size_t limit = plus[k]->cyclic ? plus[k]->edges.size() : 1;
                if (++rot[k] < limit) break;
                rot[k] = 0;
            }
            if (k == n) break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

namespace {

Pairing build_pairing(const Partitioning& g1, const Partitioning& g2, const GlueInterface& iface) {
    Pairing pr;
    IdSet plus_seen, minus_seen;
    std::size_t idx = 0;
    for (const auto& m : iface.matches) {
        const StringComponent& P = g1.oc.string_component(m.plus_component);
        const StringComponent& M = g2.oc.string_component(m.minus_component);
        require(g1.assignment.at(P.id) == Sign::Plus, "InterfaceMismatch",
                P.id + " is not an outgoing component");
        require(g2.assignment.at(M.id) == Sign::Minus, "InterfaceMismatch",
                M.id + " is not an incoming component");
        require(plus_seen.insert(P.id).second && minus_seen.insert(M.id).second,
                "InterfaceMismatch", "component matched twice");
        require(P.cyclic == M.cyclic && P.edges.size() == M.edges.size(), "InterfaceMismatch",
                "shape/length mismatch between " + P.id + " and " + M.id);
        require(g1.oc.component_type(P, Sign::Plus) == g2.oc.component_type(M, Sign::Minus),
                "InterfaceMismatch",
                "type mismatch: " + g1.oc.component_type(P, Sign::Plus) + " vs " +
                    g2.oc.component_type(M, Sign::Minus));
        const std::size_t k = P.edges.size();
        require(P.cyclic ? m.rotation < k : m.rotation == 0, "InterfaceMismatch",
                "bad rotation");
        for (std::size_t i = 0; i < k; ++i) {
            // Orientation-reversing: the out boundary edge p_i is traversed
            // against the in boundary edge m_j.
            std::size_t j = P.cyclic ? (m.rotation + k - i) % k : k - 1 - i;
            pr.plus_to_minus[P.edges[i]] = M.edges[j];
            pr.minus_to_plus[M.edges[j]] = P.edges[i];
        }
        for (const auto& e : P.edges) pr.consumed1.insert(e);
        for (const auto& e : M.edges) pr.consumed2.insert(e);
        pr.plus_first[P.id] = idx;
        pr.minus_first[M.id] = idx;
        ++idx;
    }
    // Completeness: every outgoing component of Γ₁, every incoming one of Γ₂.
    for (const auto& sc : g1.oc.string_components())
        if (g1.assignment.at(sc.id) == Sign::Plus)
            require(plus_seen.count(sc.id) != 0, "InterfaceMismatch",
                    "outgoing component " + sc.id + " is not matched");
    for (const auto& sc : g2.oc.string_components())
        if (g2.assignment.at(sc.id) == Sign::Minus)
            require(minus_seen.count(sc.id) != 0, "InterfaceMismatch",
                    "incoming component " + sc.id + " is not matched");
    return pr;
}

} // namespace

Partitioning rename_prefixed(const Partitioning& p, const std::string& prefix) {
    auto rn = [&](const Id& x) { return prefix + x; };
    const Graph& g = p.oc.carrier();
    IdSet verts, halves;
    IdMap src, rev;
    for (const auto& v : g.vertices()) verts.insert(rn(v));
    for (const auto& h : g.half_edges()) {
        halves.insert(rn(h));
        src[rn(h)] = rn(g.source(h));
        rev[rn(h)] = rn(g.reversal(h));
    }
    std::map<Id, std::vector<Id>> orders;
    for (const auto& v : g.vertices()) {
        std::vector<Id> seq;
        for (const auto& h : p.oc.fat().order_at(v)) seq.push_back(rn(h));
        orders[rn(v)] = std::move(seq);
    }
    FatGraph fat = FatGraph::attach(
        Graph::build(std::move(verts), std::move(halves), std::move(src), std::move(rev)),
        std::move(orders));
    IdSet fl, fe;
    for (const auto& l : p.oc.free_letters()) fl.insert(rn(l));
    for (const auto& e : p.oc.free_edges()) fe.insert(rn(e));
    std::map<Id, Id> labels;
    for (const auto& fc : p.oc.free_components()) {
        Id least = rn(fc.letters.front());
        for (const auto& l : fc.letters) least = std::min(least, rn(l));
        labels[least] = fc.label;
    }
    OCFatGraph oc = OCFatGraph::attach_explicit(std::move(fat), std::move(fl), std::move(fe),
                                                std::move(labels));
    std::map<Id, Sign> assignment;
    for (const auto& sc : oc.string_components()) {
        Id old_least = sc.edges.front().substr(prefix.size());
        for (const auto& e : sc.edges) old_least = std::min(old_least, e.substr(prefix.size()));
        assignment[sc.id] = p.assignment.at(p.oc.string_comp_of_edge(old_least));
    }
    return attach_partition(std::move(oc), std::move(assignment));
}

GlueResult glue(const Partitioning& g1, const Partitioning& g2, const GlueInterface& iface,
                const GlueOptions& opts) {
    if (!opts.bypass_very_admissible_gate)
        require(g2.tier == Tier::VeryAdmissible, "NotVeryAdmissible",
                "gluing requires a very well-partitioned second factor");
    for (const auto& v : g2.oc.carrier().vertices())
        require(!g1.oc.carrier().has_vertex(v), "IdCollision", "shared vertex id " + v);
    for (const auto& h : g2.oc.carrier().half_edges())
        require(!g1.oc.carrier().has_half_edge(h), "IdCollision", "shared half-edge id " + h);

    const Graph& G1 = g1.oc.carrier();
    const Graph& G2 = g2.oc.carrier();
    Pairing pr = build_pairing(g1, g2, iface);

    // Half-edge identifications: out-edge p covers the half p, the reversed
    // in-edge m covers r(m); gluing matches p ~ r(m) and r(p) ~ m.
    UnionFind uh;
    for (const auto& h : G1.half_edges()) uh.add(h);
    for (const auto& h : G2.half_edges()) uh.add(h);
    for (const auto& [p, m] : pr.plus_to_minus) {
        uh.unite(p, G2.reversal(m));
        uh.unite(G1.reversal(p), m);
    }
    // Class representatives: the Γ₁ member when present.
    auto half_classes = uh.classes();
    IdMap half_name; // member -> representative name
    for (const auto& [root, members] : half_classes) {
        Id rep;
        for (const auto& x : members)
            if (G1.has_half_edge(x) && (rep.empty() || x < rep)) rep = x;
        if (rep.empty()) rep = *std::min_element(members.begin(), members.end());
        for (const auto& x : members) half_name[x] = rep;
    }

    UnionFind uv;
    for (const auto& v : G1.vertices()) uv.add(v);
    for (const auto& v : G2.vertices()) uv.add(v);
    auto source_of = [&](const Id& h) { return G1.has_half_edge(h) ? G1.source(h) : G2.source(h); };
    for (const auto& [root, members] : half_classes)
        for (std::size_t i = 1; i < members.size(); ++i)
            uv.unite(source_of(members[0]), source_of(members[i]));
    auto vertex_classes = uv.classes();
    IdMap vertex_name;
    for (const auto& [root, members] : vertex_classes) {
        Id rep;
        for (const auto& x : members)
            if (G1.has_vertex(x) && (rep.empty() || x < rep)) rep = x;
        if (rep.empty()) rep = *std::min_element(members.begin(), members.end());
        for (const auto& x : members) vertex_name[x] = rep;
    }

    // Glued carrier.
    IdSet verts, halves;
    IdMap src, rev;
    for (const auto& [x, rep] : vertex_name) verts.insert(rep);
    auto rev_of = [&](const Id& h) { return G1.has_half_edge(h) ? G1.reversal(h) : G2.reversal(h); };
    for (const auto& [x, rep] : half_name) {
        halves.insert(rep);
        src[rep] = vertex_name.at(source_of(x));
        rev[rep] = half_name.at(rev_of(x));
    }
    Graph carrier = Graph::build(verts, halves, src, rev);
    for (const auto& h : carrier.half_edges())
        require(carrier.reversal(h) != h, "SpliceFailure",
                "gluing identified both halves of an edge");

    // --- Route A: surviving boundary edges, σ̂ read through the corners. ---
    auto survives = [&](const Id& e, int side) {
        return side == 1 ? pr.consumed1.count(e) == 0 : pr.consumed2.count(e) == 0;
    };
    // Interval corner tables: first edge of a consumed interval -> the letter
    // the boundary continues from on the other side.
    IdMap corner1, corner2; // first out₁-interval edge -> Γ₂ letter, and vice versa
    for (const auto& m : iface.matches) {
        const StringComponent& P = g1.oc.string_component(m.plus_component);
        const StringComponent& M = g2.oc.string_component(m.minus_component);
        if (P.cyclic) continue;
        corner1[P.edges.front()] = g2.oc.fat().sigma_hat(M.edges.back());
        corner2[M.edges.front()] = g1.oc.fat().sigma_hat(P.edges.back());
    }
    auto sigma_hat_of = [&](const Id& e, int side) {
        return side == 1 ? g1.oc.fat().sigma_hat(e) : g2.oc.fat().sigma_hat(e);
    };
    // Next surviving boundary edge after `e` (on `side`).
    auto next_edge = [&](Id e, int side) -> std::pair<Id, int> {
        Id letter = sigma_hat_of(e, side);
        for (std::size_t guard = 0; guard <= iface.matches.size() + 1; ++guard) {
            // The out-edge of `letter` is the boundary edge carrying its name.
            int lside = G1.has_half_edge(letter) ? 1 : 2;
            if (survives(letter, lside)) return {letter, lside};
            if (lside == 1) {
                auto it = corner1.find(letter);
                require(it != corner1.end(), "SpliceFailure",
                        "boundary reading arrived mid-interface at " + letter);
                letter = it->second;
            } else {
                auto it = corner2.find(letter);
                require(it != corner2.end(), "SpliceFailure",
                        "boundary reading arrived mid-interface at " + letter);
                letter = it->second;
            }
        }
        fail("SpliceFailure", "boundary reading loops through the interface");
    };
    // σ̂# cycles over glued halves.
    std::vector<std::vector<Id>> cycles;
    {
        IdSet seen;
        std::vector<std::pair<Id, int>> all_survivors;
        for (const auto& e : G1.half_edges())
            if (survives(e, 1)) all_survivors.push_back({e, 1});
        for (const auto& e : G2.half_edges())
            if (survives(e, 2)) all_survivors.push_back({e, 2});
        for (const auto& [e0, s0] : all_survivors) {
            if (seen.count(half_name.at(e0))) continue;
            std::vector<Id> cyc;
            Id e = e0;
            int side = s0;
            do {
                const Id& h = half_name.at(e);
                require(seen.insert(h).second, "SpliceFailure",
                        "half-edge covered twice by the glued boundary");
                cyc.push_back(h);
                auto [ne, ns] = next_edge(e, side);
                e = ne;
                side = ns;
            } while (half_name.at(e) != half_name.at(e0));
            cycles.push_back(std::move(cyc));
        }
        require(seen.size() == carrier.half_edges().size(), "SpliceFailure",
                "glued boundary does not cover every half-edge");
    }
    FatGraph fat_a;
    try {
        fat_a = fat_from_boundary(carrier, cycles);
    } catch (const Error& e) {
        if (std::string(e.code()) == "MultipleCyclesPerVertex")
            fail("SpliceFailure", e.what());
        throw;
    }

    // --- Route B: direct vertex splice (Lemma-6 proof), cross-checked. ---
    if (opts.cross_check_routes) {
        // Door of a merged Γ₂ vertex: the unique ι₋-covered half opening its
        // fan. In-letter doors pair as [r(p) ~ m]; the end door of an interval
        // is r(m_k), paired as [p_k ~ r(m_k)].
        IdMap door;    // Γ₂ vertex -> door half
        IdMap partner; // door half -> identified Γ₁ half
        auto set_door = [&](const Id& vertex, const Id& z, const Id& pt) {
            auto [it, fresh] = door.emplace(vertex, z);
            require(fresh || it->second == z, "SpliceFailure",
                    "two fan doors at vertex " + vertex);
            partner[z] = pt;
        };
        for (const auto& m : iface.matches) {
            const StringComponent& M = g2.oc.string_component(m.minus_component);
            for (const auto& e : M.edges)
                set_door(G2.source(e), e, G1.reversal(pr.minus_to_plus.at(e)));
            if (!M.cyclic) {
                const Id zk = G2.reversal(M.edges.back());
                set_door(G2.source(zk), zk, pr.minus_to_plus.at(M.edges.back()));
            }
        }

        auto sigma1 = [&](const Id& x) { return g1.oc.fat().sigma_at(x); };
        auto sigma2 = [&](const Id& x) { return g2.oc.fat().sigma_at(x); };
        IdMap sigma_b; // on glued half names
        for (const auto& [root, members] : half_classes) {
            const Id& name = half_name.at(members.front());
            std::optional<Id> next;
            // Door entry has priority; then Γ₁ continuation; then fan walking.
            for (const auto& x : members) {
                if (!G2.has_half_edge(x)) continue;
                auto it = door.find(G2.source(x));
                if (it != door.end() && it->second == x) {
                    Id c = sigma2(x);
                    next = (c == x) ? half_name.at(sigma1(partner.at(x))) : half_name.at(c);
                    break;
                }
            }
            if (!next)
                for (const auto& x : members)
                    if (G1.has_half_edge(x)) {
                        next = half_name.at(sigma1(x));
                        break;
                    }
            if (!next) {
                const Id& x = members.front(); // pure Γ₂ fan member
                Id c = sigma2(x);
                auto it = door.find(G2.source(x));
                if (it != door.end() && c == it->second)
                    next = half_name.at(sigma1(partner.at(it->second)));
                else
                    next = half_name.at(c);
            }
            sigma_b[name] = *next;
        }
        require(sigma_b == fat_a.sigma(), "SpliceFailure",
                "direct splice disagrees with the boundary construction");
    }

    // Free boundary of the result: all free letters and edges survive.
    IdSet free_letters, free_edges;
    for (const auto& l : g1.oc.free_letters()) free_letters.insert(half_name.at(l));
    for (const auto& l : g2.oc.free_letters()) free_letters.insert(half_name.at(l));
    for (const auto& e : g1.oc.free_edges()) free_edges.insert(half_name.at(e));
    for (const auto& e : g2.oc.free_edges()) free_edges.insert(half_name.at(e));
    auto comps = free_components_of(fat_a, free_letters, free_edges);
    std::map<Id, Id> labels;
    {
        std::map<Id, Id> letter_label; // glued letter -> label from either side
        for (const auto& fc : g1.oc.free_components())
            for (const auto& l : fc.letters) letter_label[half_name.at(l)] = fc.label;
        for (const auto& fc : g2.oc.free_components())
            for (const auto& l : fc.letters) {
                auto [it, fresh] = letter_label.emplace(half_name.at(l), fc.label);
                require(it->second == fc.label, "InterfaceMismatch",
                        "free boundary labels disagree at a glued corner");
            }
        for (const auto& c : comps) {
            std::optional<Id> lab;
            for (const auto& l : c.letters) {
                auto it = letter_label.find(l);
                if (it == letter_label.end()) continue;
                require(!lab || *lab == it->second, "InterfaceMismatch",
                        "glued free component carries two labels");
                lab = it->second;
            }
            require(lab.has_value(), "SpliceFailure", "free component lost its label");
            labels[c.id] = *lab;
        }
    }
    OCFatGraph oc = OCFatGraph::attach_explicit(fat_a, free_letters, free_edges, labels);

    // Partition: ∂⁻ of the result is ∂⁻Γ₁, ∂⁺ is ∂⁺Γ₂.
    GlueResult out;
    std::map<Id, Sign> assignment;
    for (const auto& sc : oc.string_components()) {
        std::optional<Sign> sign;
        for (const auto& e : sc.edges) {
            Sign s;
            if (G1.has_half_edge(e) && !g1.oc.boundary_edge_is_free(e) && survives(e, 1)) {
                s = g1.assignment.at(g1.oc.string_comp_of_edge(e));
                if (s == Sign::Minus) out.minus_comp_map[g1.oc.string_comp_of_edge(e)] = sc.id;
            } else if (G2.has_half_edge(e) && !g2.oc.boundary_edge_is_free(e) && survives(e, 2)) {
                s = g2.assignment.at(g2.oc.string_comp_of_edge(e));
                if (s == Sign::Plus) out.plus_comp_map[g2.oc.string_comp_of_edge(e)] = sc.id;
            } else {
                continue;
            }
            require(!sign || *sign == s, "SpliceFailure",
                    "glued string component inherits two sides");
            sign = s;
        }
        require(sign.has_value(), "SpliceFailure", "glued string component with no side");
        assignment[sc.id] = *sign;
    }
    out.graph = attach_partition(std::move(oc), std::move(assignment));
    for (const auto& v : G1.vertices()) out.vertex_map_1[v] = vertex_name.at(v);
    for (const auto& v : G2.vertices()) out.vertex_map_2[v] = vertex_name.at(v);
    for (const auto& h : G1.half_edges()) out.half_map_1[h] = half_name.at(h);
    for (const auto& h : G2.half_edges()) out.half_map_2[h] = half_name.at(h);
    return out;
}

} // namespace ocfat
