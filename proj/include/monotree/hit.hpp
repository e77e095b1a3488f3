#pragma once

// Embedded homeomorphically irreducible trees (HITs): plane trees without
// degree-2 vertices, enumerated up to a bound on the number of leaves.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace monotree {

/// An embedded tree given by its rotation system: rotation[v] lists the
/// neighbors of v in counterclockwise order.
struct Hit {
    std::vector<std::vector<int>> rotation;

    int vertex_count() const { return static_cast<int>(rotation.size()); }
    int degree(int v) const { return static_cast<int>(rotation[static_cast<std::size_t>(v)].size()); }
    bool is_leaf(int v) const { return degree(v) == 1; }
    std::vector<int> leaves() const;
    std::vector<int> internal_vertices() const;
    int leaf_count() const;

    /// Leaves in the order met by the boundary walk that leaves each vertex
    /// through the neighbor following (ccw) the one it arrived from. The walk
    /// starts at the smallest leaf.
    std::vector<int> boundary_leaf_order() const;

    /// Parenthesized rotation-system dump, e.g. "0:[1,2,3] 1:[0] ...".
    std::string to_string() const;

    /// Tree, no degree-2 vertex, rotation lists symmetric.
    bool valid() const;
};

/// Canonical form of an embedded tree: equal iff the trees are equivalent
/// under relabeling that preserves every rotation (mirror images differ).
using CanonicalCode = std::string;

CanonicalCode canonical_code(const Hit& hit);

struct HitEnumerationStats {
    std::size_t emitted = 0;  // generated before deduplication
    std::size_t unique = 0;
};

/// Calls `sink` once per distinct HIT with 2 <= leaves <= max_leaves.
/// HITs are grown from the single edge and the stars K_{1,m}, m >= 3, by
/// replacing a leaf with an internal vertex carrying j >= 2 new leaves.
HitEnumerationStats enumerate_hits(int max_leaves, const std::function<void(const Hit&)>& sink);

std::vector<Hit> all_hits(int max_leaves);

}  // namespace monotree
