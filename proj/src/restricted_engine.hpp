#pragma once

// Shared machinery for solve_restricted and solve_mmst_fixed. Not installed.

#include <cstdint>
#include <vector>

#include "monotree/solvers.hpp"

namespace monotree::detail {

/// Per-instance tables: wedge index of every point pair and projections.
struct Instance {
    Instance(const PointSet& pts, const DirectionSet& ds, double tolerance);

    int wedge(int a, int b) const { return wedges[static_cast<std::size_t>(a * n + b)]; }
    double projection(int p, int d) const { return proj[static_cast<std::size_t>(p * k + d)]; }

    const PointSet& points;
    DirectionSet dirs;
    WedgeFan fan;
    int n = 0;
    int k = 0;
    int m = 0;  // wedge count
    double eps = kDefaultEps;
    std::vector<int> wedges;
    std::vector<double> proj;
};

/// HIT topology flattened into paths: one per leaf (apex -> leaf) and one per
/// edge between internal vertices.
struct HitShape {
    explicit HitShape(const Hit& h);

    struct PathSpec {
        bool leaf = false;
        int from = 0;  // HIT vertex: apex of a leaf path, or smaller branch end
        int to = 0;    // HIT vertex: the leaf, or the other branch end
    };

    const Hit* hit;
    std::vector<int> internal;
    std::vector<int> leaf_order;
    std::vector<PathSpec> paths;
    std::vector<int> leaf_path;  // HIT vertex -> path index (-1 if internal)
};

struct Best {
    bool found = false;
    double length = 0.0;
    std::vector<Edge> edges;

    bool improved_by(double len, const std::vector<Edge>& e) const {
        return !found || shorter_tree(len, e, length, edges, kLengthTol);
    }
};

class RestrictedEngine {
public:
    RestrictedEngine(const Instance& inst, const HitShape& shape, const Mapping& mapping);

    /// Cheap necessary conditions on the mapping alone.
    bool viable() const { return viable_; }

    /// Searches the trees realizing `assignment`; improves `best` in place
    /// when a validated tree beats it.
    RestrictedResult run(const Assignment& assignment, Best& best, std::size_t budget);

private:
    using Order = std::vector<int>;

    bool has_order(int path, const std::vector<int>& set) const;
    std::vector<Order> orders(int path, const std::vector<int>& set) const;
    bool order_for_direction(int path, const std::vector<int>& set, int d, Order& out) const;
    void dfs(std::size_t idx);
    void complete();

    const Instance& inst_;
    const HitShape& shape_;
    Mapping mapping_;
    bool viable_ = true;
    std::vector<int> free_;
    std::vector<int> apex_;  // per path: point index at `from`
    std::vector<int> tail_;  // per path: point index at `to` (branches), -1 for leaves
    std::vector<std::uint64_t> branch_ok_;  // per free point: bit per path

    // per-run state
    std::vector<std::uint64_t> block_mask_;  // per path
    std::vector<std::uint64_t> cand_;        // per free point
    std::vector<int> dfs_order_;
    std::vector<std::vector<int>> sets_;
    Best* best_ = nullptr;
    std::size_t budget_ = 0;
    std::size_t placements_ = 0;
    bool exhausted_ = false;
    bool any_complete_ = false;
    RestrictedFailure validation_failure_ = RestrictedFailure::None;
    std::optional<GeoTree> found_;
};

std::size_t resolve_threads(int requested);

}  // namespace monotree::detail
