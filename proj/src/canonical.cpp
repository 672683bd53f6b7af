#include "ocfat/canonical.hpp"

#include <algorithm>
#include <sstream>

namespace ocfat {

namespace {

// Decoration of one half-edge, attached to the serialization when present.
struct Decoration {
    bool free_letter = false;
    bool free_edge = false;
    std::string letter_label; // label of the free component owning the letter
    char edge_tag = '.';      // '-' / '+' for string edges, '.' otherwise
};

std::string canonical_component(const FatGraph& fat, const IdSet& halves,
                                const std::map<Id, Decoration>* deco) {
    if (halves.empty()) return "pt";

    const Graph& g = fat.carrier();
    std::string best;
    for (const auto& start : halves) {
        // Structure-driven numbering: traverse via σ and r from `start`.
        std::map<Id, int> num;
        std::vector<Id> order;
        std::vector<Id> queue{start};
        while (!queue.empty()) {
            Id cur = queue.front();
            queue.erase(queue.begin());
            if (num.count(cur)) continue;
            num[cur] = static_cast<int>(order.size());
            order.push_back(cur);
            queue.push_back(fat.sigma_at(cur));
            queue.push_back(g.reversal(cur));
        }
        if (order.size() != halves.size()) {
            // Disconnected input slipped through; caller splits by component.
            fail("InternalInvariant", "canonical_component on disconnected half-edge set");
        }
        std::map<Id, int> vnum;
        for (const auto& h : order) {
            const Id& v = g.source(h);
            if (!vnum.count(v)) vnum[v] = num.at(h);
        }
        std::ostringstream os;
        for (const auto& h : order) {
            os << num.at(fat.sigma_at(h)) << ',' << num.at(g.reversal(h)) << ','
               << vnum.at(g.source(h));
            if (deco) {
                const Decoration& d = deco->at(h);
                os << ',' << (d.free_letter ? 'F' : 'f') << (d.free_edge ? 'E' : 'e')
                   << d.edge_tag;
                if (!d.letter_label.empty()) os << '[' << d.letter_label << ']';
            }
            os << ';';
        }
        std::string s = os.str();
        if (best.empty() || s < best) best = std::move(s);
    }
    return best;
}

std::string canonical_impl(const FatGraph& fat, const std::map<Id, Decoration>* deco) {
    std::vector<std::string> keys;
    for (const auto& c : components(fat.carrier()))
        keys.push_back(canonical_component(fat, c.half_edges, deco));
    std::sort(keys.begin(), keys.end());
    std::string out;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (i) out += '|';
        out += keys[i];
    }
    return out;
}

} // namespace

std::string canonical_key(const FatGraph& fat) { return canonical_impl(fat, nullptr); }

std::string canonical_key(const Partitioning& p) {
    const OCFatGraph& oc = p.oc;
    std::map<Id, Decoration> deco;
    for (const auto& h : oc.carrier().half_edges()) {
        Decoration d;
        d.free_letter = oc.letter_is_free(h);
        d.free_edge = oc.boundary_edge_is_free(h);
        if (d.free_letter) {
            Id comp = *oc.free_comp_of_letter(h);
            d.letter_label = oc.free_component(comp).label;
        }
        if (!d.free_edge)
            d.edge_tag = p.assignment.at(oc.string_comp_of_edge(h)) == Sign::Minus ? '-' : '+';
        deco[h] = std::move(d);
    }
    return canonical_impl(oc.fat(), &deco);
}

} // namespace ocfat
