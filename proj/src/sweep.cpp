#include <algorithm>
#include <cmath>
#include <numeric>

#include "monotree/errors.hpp"
#include "monotree/solvers.hpp"

namespace monotree {

namespace {

constexpr double kAngleMerge = 1e-12;

struct PairEvent {
    double angle;
    int p;
    int q;
};

std::vector<PairEvent> pair_events(const PointSet& points) {
    std::vector<PairEvent> ev;
    const int n = static_cast<int>(points.size());
    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            Vec2 d = points[q] - points[p];
            if (d.x == 0.0 && d.y == 0.0) throw Error(ErrorCode::GeneralPosition, "repeated point");
            double a = wrap_angle(std::atan2(d.y, d.x) + kPi / 2.0, kPi);
            if (a > kPi - kAngleMerge) a -= kPi;  // same class as 0
            ev.push_back({a, p, q});
        }
    }
    std::sort(ev.begin(), ev.end(), [](const PairEvent& a, const PairEvent& b) { return a.angle < b.angle; });
    return ev;
}

// [begin, end) ranges of events sharing one critical angle.
std::vector<std::pair<std::size_t, std::size_t>> group_events(const std::vector<PairEvent>& ev) {
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    std::size_t i = 0;
    while (i < ev.size()) {
        std::size_t j = i + 1;
        while (j < ev.size() && ev[j].angle - ev[i].angle <= kAngleMerge) ++j;
        groups.emplace_back(i, j);
        i = j;
    }
    return groups;
}

std::vector<int> sort_along(const PointSet& points, double angle) {
    const Vec2 u{std::cos(angle), std::sin(angle)};
    std::vector<int> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return dot(points[a], u) < dot(points[b], u); });
    return order;
}

double path_length(const PointSet& points, const std::vector<int>& order) {
    double len = 0.0;
    for (std::size_t i = 1; i < order.size(); ++i) len += distance(points[order[i - 1]], points[order[i]]);
    return len;
}

GeoTree path_tree(const PointSet& points, const std::vector<int>& order) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < order.size(); ++i) edges.push_back(Edge::make(order[i - 1], order[i]));
    return GeoTree::build(points, std::move(edges));
}

int find_root(std::vector<int>& parent, int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

}  // namespace

double sorted_path_length(const PointSet& points, const Direction& d) {
    return path_length(points, sort_along(points, d.angle));
}

std::vector<double> critical_angles(const PointSet& points) {
    auto ev = pair_events(points);
    std::vector<double> out;
    for (auto [b, e] : group_events(ev)) out.push_back(ev[b].angle);
    return out;
}

std::vector<double> candidate_directions(const PointSet& points) {
    auto crit = critical_angles(points);
    std::vector<double> out;
    if (crit.empty()) {
        out.push_back(0.0);
        return out;
    }
    for (std::size_t i = 0; i + 1 < crit.size(); ++i) out.push_back((crit[i] + crit[i + 1]) / 2.0);
    out.push_back(wrap_angle((crit.back() + crit.front() + kPi) / 2.0, kPi));
    std::sort(out.begin(), out.end());
    return out;
}

SweepResult solve_k1(const PointSet& points, const SweepOptions& options) {
    if (points.empty()) throw Error(ErrorCode::InvalidArgument, "empty point set");
    const int n = static_cast<int>(points.size());
    SweepResult res;
    if (n == 1) {
        res.direction = normalize_direction({1.0, 0.0});
        res.tree = GeoTree::build(points, {});
        return res;
    }
    const auto ev = pair_events(points);
    const auto groups = group_events(ev);
    const double first = ev[groups.front().first].angle;
    const double last = ev[groups.back().first].angle;

    // Unwrapped sweep from the middle of the wrap-around interval through
    // every critical angle shifted by pi.
    const double theta0 = (last + first + kPi) / 2.0;
    std::vector<int> order = sort_along(points, theta0);
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    double length = path_length(points, order);

    double best_len = length;
    double best_angle = theta0;
    std::vector<int> best_order = order;

    auto edge_len = [&](int i) {  // edge between positions i and i+1
        return distance(points[order[i]], points[order[i + 1]]);
    };

    std::vector<int> parent(static_cast<std::size_t>(n));
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto [b, e] = groups[g];
        std::vector<int> touched;
        for (std::size_t i = b; i < e; ++i) {
            parent[ev[i].p] = ev[i].p;
            parent[ev[i].q] = ev[i].q;
            touched.push_back(ev[i].p);
            touched.push_back(ev[i].q);
        }
        for (std::size_t i = b; i < e; ++i) {
            int a = find_root(parent, ev[i].p), c = find_root(parent, ev[i].q);
            if (a != c) parent[a] = c;
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        std::vector<std::pair<int, int>> blocks;  // position ranges per cluster
        {
            std::vector<std::pair<int, int>> by_root;
            for (int v : touched) by_root.emplace_back(find_root(parent, v), pos[v]);
            std::sort(by_root.begin(), by_root.end());
            std::size_t i = 0;
            while (i < by_root.size()) {
                std::size_t j = i;
                int lo = by_root[i].second, hi = by_root[i].second;
                while (j < by_root.size() && by_root[j].first == by_root[i].first) {
                    lo = std::min(lo, by_root[j].second);
                    hi = std::max(hi, by_root[j].second);
                    ++j;
                }
                if (hi - lo + 1 != static_cast<int>(j - i)) res.order_consistent = false;
                blocks.emplace_back(lo, hi);
                i = j;
            }
        }
        for (auto [lo, hi] : blocks) {
            double before = 0.0, after = 0.0;
            if (lo > 0) before += edge_len(lo - 1);
            if (hi + 1 < n) before += edge_len(hi);
            std::reverse(order.begin() + lo, order.begin() + hi + 1);
            for (int i = lo; i <= hi; ++i) pos[order[i]] = i;
            if (lo > 0) after += edge_len(lo - 1);
            if (hi + 1 < n) after += edge_len(hi);
            length += after - before;
        }
        ++res.events;
        if (g + 1 == groups.size()) break;  // back in the starting interval
        const double mid = (ev[b].angle + ev[groups[g + 1].first].angle) / 2.0 + kPi;
        if (options.check) {
            auto fresh = sort_along(points, mid);
            double fresh_len = path_length(points, fresh);
            res.max_drift = std::max(res.max_drift, std::abs(fresh_len - length));
            if (fresh != order) res.order_consistent = false;
        }
        if (length < best_len - 1e-12) {
            best_len = length;
            best_angle = mid;
            best_order = order;
        }
    }

    res.direction = normalize_direction({std::cos(best_angle), std::sin(best_angle)});
    res.tree = path_tree(points, best_order);
    res.length = res.tree.length();
    return res;
}

}  // namespace monotree
