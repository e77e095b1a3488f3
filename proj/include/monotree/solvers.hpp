#pragma once

// Minimum-length D-monotone spanning trees.
//
//  * solve_restricted   - the unique tree realizing a HIT H, a placement M
//                         of its internal vertices and a wedge assignment A
//  * solve_mmst_fixed   - minimum over all (H, M, A) plus the spine case
//  * solve_k1           - rotational sweep for the best single direction
//  * solve_mmst_k       - best set of k directions
//  * euclidean_mst      - unconstrained baseline
//  * oracle_fixed/_k    - brute force over all spanning trees

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "monotree/geom.hpp"
#include "monotree/hit.hpp"
#include "monotree/tree.hpp"

namespace monotree {

inline constexpr int kDefaultOracleCap = 9;
inline constexpr double kLengthTol = 1e-9;

/// Internal vertex of the HIT -> point index; -1 for leaves.
using Mapping = std::vector<int>;

/// Leaf of the HIT -> block of consecutive wedges; empty span for internal
/// vertices. Blocks are disjoint, cover all 2k wedges, and follow the leaves'
/// boundary-walk order counterclockwise.
struct Assignment {
    std::vector<WedgeSpan> blocks;
};

struct SolverOptions {
    double eps = kDefaultEps;
    int threads = 0;                        // 0: MONOTREE_THREADS or hardware concurrency
    std::size_t branch_budget = 1u << 12;   // ambiguous point placements per combo
};

enum class RestrictedFailure {
    None,
    PointUncovered,
    OrderMismatch,
    ConditionC,
    ValidationFailed,
    BudgetExhausted,
};

const char* to_string(RestrictedFailure f);

struct RestrictedResult {
    std::optional<GeoTree> tree;
    RestrictedFailure failure = RestrictedFailure::None;
    std::size_t placements = 0;  // complete point placements examined
};

/// All assignments of wedge blocks to the leaves of `hit` for a fan with
/// `wedge_count` wedges.
std::vector<Assignment> enumerate_assignments(const Hit& hit, int wedge_count);

RestrictedResult solve_restricted(const PointSet& points, const DirectionSet& dirs, const Hit& hit,
                                  const Mapping& mapping, const Assignment& assignment,
                                  const SolverOptions& options = {});

struct SolveCounters {
    std::size_t hits = 0;
    std::size_t combos = 0;      // (H, M, A) triples tried
    std::size_t feasible = 0;    // combos that produced a validated tree
    std::size_t budget_exhausted = 0;
};

struct SolveReport {
    std::optional<GeoTree> tree;
    double length = 0.0;
    DirectionSet directions;
    MonotoneVerdict certificate;
    SolveCounters counters;
    double wall_ms = 0.0;
    std::string algorithm;
};

/// Throws GeneralPosition before searching when `points` is not in
/// D-general position.
SolveReport solve_mmst_fixed(const PointSet& points, const DirectionSet& dirs, const SolverOptions& options = {});

struct SweepOptions {
    bool check = false;  // recompute the maintained order and length at every event
    double eps = kDefaultEps;
};

struct SweepResult {
    Direction direction;
    GeoTree tree;
    double length = 0.0;
    std::size_t events = 0;
    double max_drift = 0.0;  // worst |maintained - recomputed| length (check mode)
    bool order_consistent = true;
};

/// Best single direction: the sorted spanning path of minimum length over all
/// directions, by a rotational sweep over the critical angles.
SweepResult solve_k1(const PointSet& points, const SweepOptions& options = {});

/// Length of the spanning path sorted along `d` (assumes d-general position).
double sorted_path_length(const PointSet& points, const Direction& d);

/// Critical direction angles in [0, pi): directions orthogonal to some pair,
/// sorted and deduplicated.
std::vector<double> critical_angles(const PointSet& points);

/// One direction strictly inside every interval between consecutive critical
/// angles.
std::vector<double> candidate_directions(const PointSet& points);

struct KSolveResult {
    DirectionSet directions;
    SolveReport report;
    std::size_t subsets = 0;
};

KSolveResult solve_mmst_k(const PointSet& points, int k, const SolverOptions& options = {});

GeoTree euclidean_mst(const PointSet& points);

/// Each labeled spanning tree of K_n exactly once. Throws CapExceeded when
/// n > cap unless `override_cap`.
void for_each_spanning_tree(int n, const std::function<void(const std::vector<Edge>&)>& visit,
                            int cap = kDefaultOracleCap, bool override_cap = false);

struct OracleResult {
    std::optional<GeoTree> tree;
    double length = 0.0;
    bool unique = false;
    double runner_up = 0.0;  // shortest length among the other valid trees (inf if none)
    std::size_t trees = 0;
};

OracleResult oracle_fixed(const PointSet& points, const DirectionSet& dirs, int cap = kDefaultOracleCap,
                          bool override_cap = false, double eps = kDefaultEps);

struct PiercingResult {
    int count = 0;  // -1 when some arc is empty
    std::vector<double> points;
};

/// Minimum number of angles in [0, pi) hitting every open arc, with a
/// witness. Candidate positions lie strictly between consecutive arc
/// endpoints or `breakpoints`.
PiercingResult min_arc_piercing(const std::vector<Arc>& arcs, const std::vector<double>& breakpoints = {});

struct OracleKResult {
    std::optional<GeoTree> tree;
    double length = 0.0;
    DirectionSet directions;
    std::size_t trees = 0;
};

OracleKResult oracle_k(const PointSet& points, int k, int cap = kDefaultOracleCap, bool override_cap = false);

}  // namespace monotree
