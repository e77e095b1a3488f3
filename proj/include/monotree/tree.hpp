#pragma once

// Geometric spanning trees, their decomposition into leaf paths and
// branches, subtree wedge sets, branch regions, and the two D-monotonicity
// checkers (pairwise paths, and the leaf-path/branch characterization).

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "monotree/geom.hpp"

namespace monotree {

struct Edge {
    int a = 0;
    int b = 0;

    static Edge make(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GeoTree {
public:
    GeoTree() = default;

    /// Validates that `edges` span `points` without cycles. Throws InvalidTree.
    static GeoTree build(PointSet points, std::vector<Edge> edges);

    int size() const { return static_cast<int>(points_.size()); }
    const PointSet& points() const { return points_; }
    Vec2 point(int i) const { return points_[static_cast<std::size_t>(i)]; }
    /// Sorted, normalized (a < b) edge list.
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    double length() const { return length_; }
    std::vector<int> leaves() const;

private:
    PointSet points_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    double length_ = 0.0;
};

/// Equal-length ties go to the lexicographically smaller sorted edge list.
bool shorter_tree(double len_a, const std::vector<Edge>& a, double len_b, const std::vector<Edge>& b,
                  double tol = 1e-9);

/// Vertex sequence of the unique tree path from u to v.
std::vector<int> tree_path(const GeoTree& tree, int u, int v);

std::vector<Vec2> path_points(const GeoTree& tree, std::span<const int> vertices);

/// Leaf paths run from a branching vertex to a leaf, branches between two
/// branching vertices (oriented from the smaller index). A tree without
/// branching vertices is a single spine.
struct Decomposition {
    std::vector<int> branching_vertices;
    std::vector<std::vector<int>> leaf_paths;
    std::vector<std::vector<int>> branches;
    std::vector<int> spine;
};

Decomposition decompose(const GeoTree& tree);

struct LeafPairWitness {
    int a = 0;
    int b = 0;
    int direction = 0;  // index into the DirectionSet
};

struct MonotoneVerdict {
    bool monotone = false;
    std::vector<LeafPairWitness> certificate;
    std::optional<std::pair<int, int>> counterexample;
};

/// Checks every leaf-to-leaf path against every direction. Subpaths of a
/// d-monotone path are d-monotone, so leaf pairs decide all pairs.
/// Throws GeneralPosition when the points are not in D-general position.
MonotoneVerdict check_monotone_naive(const GeoTree& tree, const DirectionSet& dirs, double eps = kDefaultEps);

/// Wedge set of Subtree(u -> v): the smallest consecutive wedges covering the
/// spans of every path from u to a leaf behind the neighbor of u that leads
/// away from v, avoiding the wedge of the first edge from u towards v. std::nullopt when no such
/// consecutive set exists (the tree cannot be D-monotone then).
std::optional<WedgeSpan> subtree_wedge_span(const GeoTree& tree, const WedgeFan& fan, int u, int v,
                                            double eps = kDefaultEps);

struct HalfPlane {
    Vec2 origin;
    Vec2 normal;  // inward

    bool contains(Vec2 p, double tol = 0.0) const { return dot(p - origin, normal) >= -tol; }
    bool strictly_contains(Vec2 p, double tol = 0.0) const { return dot(p - origin, normal) > tol; }
};

enum class RegionKind { Wedge, Parallelogram, Strip, HalfPlane };

/// Convex, possibly unbounded region: intersection of at most four half-planes.
struct Region {
    RegionKind kind = RegionKind::Wedge;
    std::vector<HalfPlane> halfplanes;

    bool contains(Vec2 p, double tol = 0.0) const;
    bool interior_contains(Vec2 p, double tol = 0.0) const;
};

/// Cone at `apex` covering the consecutive wedges of `span` (len <= k).
Region span_region(const WedgeFan& fan, const WedgeSpan& span, Vec2 apex);

/// Single wedge j of the fan translated to `apex`.
Region wedge_region(const WedgeFan& fan, int j, Vec2 apex);

/// R(u, v) for the branch or leaf path between u and v: the span cone at u
/// intersected with the opposite cone at v. Throws NonMonotone when the path
/// uses more than k wedges.
Region branch_region(const GeoTree& tree, const WedgeFan& fan, int u, int v, double eps = kDefaultEps);

/// True when the interiors of two regions intersect inside `box`
/// (min corner, max corner).
bool regions_overlap(const Region& a, const Region& b, Vec2 box_min, Vec2 box_max);

enum class CharacterizationFailure {
    None,
    NonMonotonePath,      // (a)
    LeafSpanOverlap,      // (b)
    RegionOverlap,        // (c)
    SubtreeNotConsecutive,
};

struct CharacterizationResult {
    bool monotone = false;
    CharacterizationFailure failure = CharacterizationFailure::None;
};

/// D-monotonicity through the leaf-path/branch characterization:
/// (a) every leaf path and branch is D-monotone, (b) leaf-path wedge sets are
/// pairwise disjoint, (c) no branch/leaf-path region meets the wedge set of
/// the subtree on its side.
CharacterizationResult check_monotone_characterized(const GeoTree& tree, const DirectionSet& dirs,
                                                    double eps = kDefaultEps);

struct TreeStats {
    double length = 0.0;
    int max_degree = 0;
    int leaf_count = 0;  // an isolated vertex is not a leaf
};

TreeStats tree_stats(const GeoTree& tree);

}  // namespace monotree
