#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "monotree/errors.hpp"
#include "monotree/solvers.hpp"

namespace monotree {

GeoTree euclidean_mst(const PointSet& points) {
    const int n = static_cast<int>(points.size());
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty point set");
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<bool> in(static_cast<std::size_t>(n), false);
    std::vector<double> key(static_cast<std::size_t>(n), inf);
    std::vector<int> from(static_cast<std::size_t>(n), -1);
    std::vector<Edge> edges;
    key[0] = 0.0;
    for (int step = 0; step < n; ++step) {
        // Smallest (length, tree end, new vertex) as the deterministic tie-break.
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (in[v]) continue;
            if (best < 0 || key[v] < key[best] ||
                (key[v] == key[best] && std::minmax(from[v], v) < std::minmax(from[best], best))) {
                best = v;
            }
        }
        in[best] = true;
        if (from[best] >= 0) edges.push_back(Edge::make(from[best], best));
        for (int v = 0; v < n; ++v) {
            if (in[v]) continue;
            double d = distance(points[best], points[v]);
            if (d < key[v] || (d == key[v] && std::minmax(best, v) < std::minmax(from[v], v))) {
                key[v] = d;
                from[v] = best;
            }
        }
    }
    return GeoTree::build(points, std::move(edges));
}

void for_each_spanning_tree(int n, const std::function<void(const std::vector<Edge>&)>& visit, int cap,
                            bool override_cap) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "need at least one vertex");
    if (n > cap && !override_cap) {
        throw Error(ErrorCode::CapExceeded,
                    "brute force over " + std::to_string(n) + " points exceeds the cap of " + std::to_string(cap));
    }
    std::vector<Edge> edges;
    if (n == 1) {
        visit(edges);
        return;
    }
    if (n == 2) {
        edges.push_back({0, 1});
        visit(edges);
        return;
    }
    // Pruefer sequences of length n-2 are in bijection with labeled trees.
    std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
    std::vector<int> degree(static_cast<std::size_t>(n));
    while (true) {
        std::fill(degree.begin(), degree.end(), 1);
        for (int s : seq) ++degree[s];
        edges.clear();
        for (int s : seq) {
            int leaf = 0;
            while (degree[leaf] != 1) ++leaf;
            edges.push_back(Edge::make(leaf, s));
            --degree[leaf];
            --degree[s];
        }
        int u = -1, v = -1;
        for (int x = 0; x < n; ++x) {
            if (degree[x] == 1) (u < 0 ? u : v) = x;
        }
        edges.push_back(Edge::make(u, v));
        std::sort(edges.begin(), edges.end());
        visit(edges);

        std::size_t i = 0;
        while (i < seq.size() && ++seq[i] == n) seq[i++] = 0;
        if (i == seq.size()) break;
    }
}

namespace {

// Twice the orthogonality tolerance, as an angle.
constexpr double kMarkGap = 4.0 * kDefaultEps;

std::vector<double> distance_table(const PointSet& points) {
    const std::size_t n = points.size();
    std::vector<double> dist(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) dist[a * n + b] = distance(points[a], points[b]);
    }
    return dist;
}

double edges_length(const std::vector<double>& dist, std::size_t n, const std::vector<Edge>& edges) {
    double len = 0.0;
    for (const auto& e : edges) len += dist[static_cast<std::size_t>(e.a) * n + static_cast<std::size_t>(e.b)];
    return len;
}

}  // namespace

OracleResult oracle_fixed(const PointSet& points, const DirectionSet& dirs, int cap, bool override_cap, double eps) {
    if (points.empty()) throw Error(ErrorCode::InvalidArgument, "empty point set");
    if (!check_general_position(points, dirs, eps).empty()) {
        throw Error(ErrorCode::GeneralPosition, "points are not in D-general position");
    }
    const std::size_t n = points.size();
    const auto dist = distance_table(points);
    constexpr double inf = std::numeric_limits<double>::infinity();
    constexpr double same = 1e-6;

    OracleResult out;
    out.runner_up = inf;
    std::vector<Edge> best_edges;
    bool found = false;
    for_each_spanning_tree(
        static_cast<int>(n),
        [&](const std::vector<Edge>& edges) {
            ++out.trees;
            double len = edges_length(dist, n, edges);
            // Only trees that could become the best or the runner-up need the
            // monotonicity check.
            if (found && len >= out.runner_up) return;
            GeoTree tree = GeoTree::build(points, edges);
            if (!check_monotone_naive(tree, dirs, eps).monotone) return;
            if (!found || shorter_tree(len, edges, out.length, best_edges, kLengthTol)) {
                if (found) out.runner_up = out.length;
                out.length = len;
                best_edges = edges;
                found = true;
            } else {
                out.runner_up = len;
            }
        },
        cap, override_cap);
    if (found) {
        out.tree = GeoTree::build(points, best_edges);
        out.length = out.tree->length();
        out.unique = !(out.runner_up <= out.length + same);
    }
    return out;
}

PiercingResult min_arc_piercing(const std::vector<Arc>& arcs, const std::vector<double>& breakpoints) {
    PiercingResult out;
    if (arcs.empty()) return out;
    for (const auto& a : arcs) {
        if (a.empty()) {
            out.count = -1;
            return out;
        }
    }
    std::vector<double> marks;
    for (const auto& a : arcs) {
        marks.push_back(wrap_angle(a.start, kPi));
        marks.push_back(wrap_angle(a.end(), kPi));
    }
    for (double b : breakpoints) marks.push_back(wrap_angle(b, kPi));
    // Marks closer than kMarkGap are one angle computed two ways; a midpoint
    // between them would sit on a line through two points.
    std::sort(marks.begin(), marks.end());
    std::vector<double> merged;
    for (double m : marks) {
        if (merged.empty() || m - merged.back() >= kMarkGap) merged.push_back(m);
    }
    if (merged.size() > 1 && merged.front() + kPi - merged.back() < kMarkGap) merged.pop_back();
    marks = std::move(merged);
    std::vector<double> cands;
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) cands.push_back((marks[i] + marks[i + 1]) / 2.0);
    cands.push_back(wrap_angle((marks.back() + marks.front() + kPi) / 2.0, kPi));

    int best = std::numeric_limits<int>::max();
    for (double c : cands) {
        struct Rel {
            double s, e;
        };
        std::vector<Rel> rest;
        for (const auto& a : arcs) {
            if (a.contains(c)) continue;
            double s = wrap_angle(a.start - c, kPi);
            rest.push_back({s, s + a.width});
        }
        std::vector<double> rel;
        for (double x : cands) rel.push_back(wrap_angle(x - c, kPi));
        std::sort(rel.begin(), rel.end());
        std::sort(rest.begin(), rest.end(), [](const Rel& a, const Rel& b) { return a.e < b.e; });
        std::vector<double> placed{c};
        double x = -1.0;
        bool ok = true;
        for (const auto& r : rest) {
            if (x > r.s && x < r.e) continue;
            auto it = std::lower_bound(rel.begin(), rel.end(), r.e);
            if (it == rel.begin() || *(it - 1) <= r.s) {
                ok = false;
                break;
            }
            x = *(it - 1);
            placed.push_back(wrap_angle(c + x, kPi));
            if (static_cast<int>(placed.size()) >= best) {
                ok = false;
                break;
            }
        }
        if (ok && static_cast<int>(placed.size()) < best) {
            best = static_cast<int>(placed.size());
            out.points = placed;
        }
    }
    out.count = best;
    std::sort(out.points.begin(), out.points.end());
    return out;
}

OracleKResult oracle_k(const PointSet& points, int k, int cap, bool override_cap) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
    if (points.empty()) throw Error(ErrorCode::InvalidArgument, "empty point set");
    const std::size_t n = points.size();
    const auto dist = distance_table(points);
    const auto crit = critical_angles(points);
    const auto pool = candidate_directions(points);
    if (static_cast<int>(pool.size()) < k) {
        throw Error(ErrorCode::InvalidArgument, "fewer than k distinct direction classes");
    }

    OracleKResult out;
    std::vector<Edge> best_edges;
    std::vector<double> best_dirs;
    bool found = false;
    for_each_spanning_tree(
        static_cast<int>(n),
        [&](const std::vector<Edge>& edges) {
            ++out.trees;
            double len = edges_length(dist, n, edges);
            if (found && !shorter_tree(len, edges, out.length, best_edges, kLengthTol)) return;
            GeoTree tree = GeoTree::build(points, edges);
            auto leaves = tree.leaves();
            std::vector<Arc> arcs;
            for (std::size_t i = 0; i < leaves.size(); ++i) {
                for (std::size_t j = i + 1; j < leaves.size(); ++j) {
                    auto path = tree_path(tree, leaves[i], leaves[j]);
                    auto pts = path_points(tree, path);
                    Arc arc = monotone_direction_arc(pts);
                    if (arc.empty()) return;
                    arcs.push_back(arc);
                }
            }
            auto pierce = min_arc_piercing(arcs, crit);
            if (pierce.count < 0 || pierce.count > k) return;
            out.length = len;
            best_edges = edges;
            best_dirs = pierce.points;
            found = true;
        },
        cap, override_cap);
    if (!found) return out;
    // Pad the witness with unused candidate directions.
    for (double a : pool) {
        if (static_cast<int>(best_dirs.size()) >= k) break;
        bool used = std::any_of(best_dirs.begin(), best_dirs.end(),
                                [&](double b) { return std::abs(a - b) < 1e-12; });
        bool clear = std::none_of(crit.begin(), crit.end(), [&](double c) {
            double gap = wrap_angle(a - c, kPi);
            return std::min(gap, kPi - gap) < kMarkGap / 2;
        });
        if (!used && clear) best_dirs.push_back(a);
    }
    out.tree = GeoTree::build(points, best_edges);
    out.length = out.tree->length();
    out.directions = direction_set_from_radians(best_dirs);
    return out;
}

}  // namespace monotree
