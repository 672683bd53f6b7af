#pragma once

#include "ocfat/open_closed.hpp"

namespace ocfat {

/// Canonical key of a fat graph up to isomorphism (relabeling of vertices and
/// half-edges commuting with s, r, σ). Connected components are canonicalized
/// by a structure-driven traversal minimized over starting half-edges, then
/// sorted; equal keys ⇔ isomorphic.
std::string canonical_key(const FatGraph& fat);

/// Canonical key of a partitioned open-closed fat graph: the fat key enriched
/// with free-vertex/free-edge flags, brane labels and partition tags.
std::string canonical_key(const Partitioning& p);

inline bool isomorphic(const FatGraph& a, const FatGraph& b) {
    return canonical_key(a) == canonical_key(b);
}
inline bool isomorphic(const Partitioning& a, const Partitioning& b) {
    return canonical_key(a) == canonical_key(b);
}

} // namespace ocfat
