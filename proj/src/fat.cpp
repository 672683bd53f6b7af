#include "ocfat/fat.hpp"

#include <algorithm>

namespace ocfat {

namespace {

std::vector<Id> rotate_to_least(std::vector<Id> cyc) {
    if (cyc.empty()) return cyc;
    auto it = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), it, cyc.end());
    return cyc;
}

} // namespace

FatGraph FatGraph::attach(Graph carrier, std::map<Id, std::vector<Id>> orders) {
    IdMap sigma;
    for (const auto& v : carrier.vertices()) {
        std::vector<Id> at_v = carrier.half_edges_at(v);
        auto it = orders.find(v);
        std::vector<Id> seq = (it == orders.end()) ? std::vector<Id>{} : it->second;
        require(seq.size() == at_v.size(), "WrongSupport",
                "cyclic order at " + v + " has wrong length");
        IdSet seen(seq.begin(), seq.end());
        require(seen.size() == seq.size(), "WrongSupport", "repeated half-edge at " + v);
        for (const auto& h : seq)
            require(carrier.has_half_edge(h) && carrier.source(h) == v, "WrongSupport",
                    "half-edge " + h + " is not incident to " + v);
        for (std::size_t i = 0; i < seq.size(); ++i)
            sigma[seq[i]] = seq[(i + 1) % seq.size()];
    }
    for (const auto& [v, seq] : orders)
        require(carrier.has_vertex(v), "WrongSupport", "order given at foreign vertex " + v);

    FatGraph fat;
    fat.carrier_ = std::move(carrier);
    fat.sigma_ = std::move(sigma);
    return fat;
}

std::vector<Id> FatGraph::order_at(const Id& v) const {
    std::vector<Id> at_v = carrier_.half_edges_at(v);
    if (at_v.empty()) return {};
    Id start = *std::min_element(at_v.begin(), at_v.end());
    std::vector<Id> out;
    Id cur = start;
    do {
        out.push_back(cur);
        cur = sigma_.at(cur);
    } while (cur != start);
    return out;
}

std::vector<std::vector<Id>> FatGraph::boundary_cycles() const {
    std::vector<std::vector<Id>> out;
    IdSet seen;
    for (const auto& h : carrier_.half_edges()) {
        if (seen.count(h)) continue;
        std::vector<Id> cyc;
        Id cur = h;
        do {
            cyc.push_back(cur);
            seen.insert(cur);
            cur = sigma_hat(cur);
        } while (cur != h);
        out.push_back(rotate_to_least(std::move(cyc)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

BoundaryGraph boundary_graph(const FatGraph& fat) {
    const Graph& g = fat.carrier();
    IdSet verts = g.half_edges();
    IdSet halves;
    IdMap src, rev;
    BoundaryGraph out;
    for (const auto& h : g.half_edges()) {
        Id h0 = BoundaryGraph::half0(h), h1 = BoundaryGraph::half1(h);
        halves.insert(h0);
        halves.insert(h1);
        rev[h0] = h1;
        rev[h1] = h0;
        src[h0] = h;
        src[h1] = fat.sigma_hat(h);
        out.iota.half_map[h0] = h;
        out.iota.half_map[h1] = g.reversal(h);
    }
    for (const auto& h : g.half_edges()) out.iota.vertex_map[h] = g.source(h);
    out.graph = Graph::build(std::move(verts), std::move(halves), std::move(src), std::move(rev));
    return out;
}

std::size_t boundary_circle_count(const FatGraph& fat) {
    if (fat.carrier().half_edges().empty() && fat.carrier().vertices().size() == 1)
        return 1; // isolated vertex thickens to a disc
    return fat.boundary_cycles().size();
}

long long genus(const FatGraph& fat) {
    require(components(fat.carrier()).size() <= 1, "Disconnected",
            "genus is defined per connected component");
    const long long chi = fat.carrier().euler_characteristic();
    const long long b = static_cast<long long>(boundary_circle_count(fat));
    const long long num = b + chi;
    require(num % 2 == 0, "InvalidGenus", "parity violation in genus formula");
    const long long g = 1 - num / 2;
    require(g >= 0, "InvalidGenus", "negative genus");
    return g;
}

std::map<Id, long long> genus_by_component(const FatGraph& fat) {
    std::map<Id, long long> out;
    for (const auto& c : components(fat.carrier()))
        out[c.id] = genus(restrict_to_component(fat, c));
    return out;
}

FatGraph restrict_to_component(const FatGraph& fat, const Component& c) {
    IdMap src, rev;
    for (const auto& h : c.half_edges) {
        src[h] = fat.carrier().source(h);
        rev[h] = fat.carrier().reversal(h);
    }
    Graph sub = Graph::build(c.vertices, c.half_edges, std::move(src), std::move(rev));
    std::map<Id, std::vector<Id>> orders;
    for (const auto& v : c.vertices) orders[v] = fat.order_at(v);
    return FatGraph::attach(std::move(sub), std::move(orders));
}

FatGraph fat_from_boundary(const Graph& carrier, const std::vector<std::vector<Id>>& cycles) {
    // Lemma-6 proof conditions: every half-edge is the orientation-preserving
    // image of exactly one boundary edge.
    IdMap sigma_hat;
    IdSet covered;
    for (const auto& cyc : cycles) {
        require(!cyc.empty(), "InvalidBoundaryData", "empty boundary cycle");
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const Id& h = cyc[i];
            require(carrier.has_half_edge(h), "InvalidBoundaryData",
                    "cycle mentions foreign half-edge " + h);
            require(covered.insert(h).second, "InvalidBoundaryData",
                    "half-edge covered twice: " + h);
            sigma_hat[h] = cyc[(i + 1) % cyc.size()];
        }
    }
    require(covered.size() == carrier.half_edges().size(), "InvalidBoundaryData",
            "boundary data does not cover every half-edge");

    // σ := σ̂ ∘ r; accept iff its cycles are exactly the H(v).
    IdMap sigma;
    for (const auto& h : carrier.half_edges())
        sigma[h] = sigma_hat.at(carrier.reversal(h));

    std::map<Id, std::vector<Id>> orders;
    IdSet seen;
    for (const auto& h : carrier.half_edges()) {
        if (seen.count(h)) continue;
        const Id v = carrier.source(h);
        std::vector<Id> cyc;
        Id cur = h;
        do {
            require(carrier.source(cur) == v, "MultipleCyclesPerVertex",
                    "sigma cycle through " + h + " leaves vertex " + v);
            cyc.push_back(cur);
            seen.insert(cur);
            cur = sigma.at(cur);
        } while (cur != h);
        require(orders.find(v) == orders.end(), "MultipleCyclesPerVertex",
                "H(" + v + ") contains multiple cycles of sigma");
        orders[v] = std::move(cyc);
    }
    return FatGraph::attach(carrier, std::move(orders));
}

} // namespace ocfat
