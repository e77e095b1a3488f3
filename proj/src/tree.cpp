#include "monotree/tree.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace monotree {

GeoTree GeoTree::build(PointSet points, std::vector<Edge> edges) {
    const int n = static_cast<int>(points.size());
    for (auto& e : edges) e = Edge::make(e.a, e.b);
    std::sort(edges.begin(), edges.end());
    if (n == 0) throw Error(ErrorCode::InvalidTree, "tree needs at least one point");
    if (static_cast<int>(edges.size()) != n - 1) {
        std::ostringstream os;
        os << "a spanning tree on " << n << " points has " << n - 1 << " edges, got " << edges.size();
        throw Error(ErrorCode::InvalidTree, os.str());
    }
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    GeoTree t;
    t.adj_.assign(static_cast<std::size_t>(n), {});
    for (const auto& e : edges) {
        if (e.a < 0 || e.b >= n) throw Error(ErrorCode::InvalidTree, "edge index out of range");
        if (e.a == e.b) throw Error(ErrorCode::InvalidTree, "self-loop edge");
        int ra = find(e.a), rb = find(e.b);
        if (ra == rb) {
            std::ostringstream os;
            os << "edge (" << e.a << ", " << e.b << ") closes a cycle";
            throw Error(ErrorCode::InvalidTree, os.str());
        }
        parent[ra] = rb;
        double len = distance(points[e.a], points[e.b]);
        if (!(len > 0.0)) throw Error(ErrorCode::InvalidTree, "edge of zero length");
        t.length_ += len;
        t.adj_[e.a].push_back(e.b);
        t.adj_[e.b].push_back(e.a);
    }
    t.points_ = std::move(points);
    t.edges_ = std::move(edges);
    return t;
}

std::vector<int> GeoTree::leaves() const {
    std::vector<int> out;
    for (int v = 0; v < size(); ++v) {
        if (degree(v) == 1) out.push_back(v);
    }
    return out;
}

bool shorter_tree(double len_a, const std::vector<Edge>& a, double len_b, const std::vector<Edge>& b, double tol) {
    if (len_a < len_b - tol) return true;
    if (len_a > len_b + tol) return false;
    return a < b;
}

namespace {

std::vector<int> bfs_parents(const GeoTree& tree, int root) {
    std::vector<int> parent(static_cast<std::size_t>(tree.size()), -1);
    std::vector<int> queue{root};
    parent[root] = root;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        int x = queue[h];
        for (int y : tree.neighbors(x)) {
            if (parent[y] == -1) {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    return parent;
}

void require_general_position(const PointSet& points, const DirectionSet& dirs, double eps) {
    auto violations = check_general_position(points, dirs, eps);
    if (!violations.empty()) {
        const auto& v = violations.front();
        std::ostringstream os;
        os << "points " << v.p << " and " << v.q << " lie on a line orthogonal to direction "
           << dirs[static_cast<std::size_t>(v.direction)].degrees() << " deg";
        throw Error(ErrorCode::GeneralPosition, os.str());
    }
}

}  // namespace

std::vector<int> tree_path(const GeoTree& tree, int u, int v) {
    auto parent = bfs_parents(tree, v);
    std::vector<int> path{u};
    while (path.back() != v) path.push_back(parent[path.back()]);
    return path;
}

std::vector<Vec2> path_points(const GeoTree& tree, std::span<const int> vertices) {
    std::vector<Vec2> out;
    out.reserve(vertices.size());
    for (int v : vertices) out.push_back(tree.point(v));
    return out;
}

Decomposition decompose(const GeoTree& tree) {
    Decomposition dec;
    const int n = tree.size();
    for (int v = 0; v < n; ++v) {
        if (tree.degree(v) >= 3) dec.branching_vertices.push_back(v);
    }
    if (dec.branching_vertices.empty()) {
        if (n == 1) {
            dec.spine = {0};
            return dec;
        }
        auto leaves = tree.leaves();
        dec.spine = tree_path(tree, leaves.front(), leaves.back());
        return dec;
    }
    for (int b : dec.branching_vertices) {
        for (int first : tree.neighbors(b)) {
            std::vector<int> chain{b, first};
            while (tree.degree(chain.back()) == 2) {
                int cur = chain.back();
                int prev = chain[chain.size() - 2];
                const auto& nb = tree.neighbors(cur);
                chain.push_back(nb[0] == prev ? nb[1] : nb[0]);
            }
            if (tree.degree(chain.back()) == 1) dec.leaf_paths.push_back(std::move(chain));
            else if (b < chain.back()) dec.branches.push_back(std::move(chain));
        }
    }
    return dec;
}

MonotoneVerdict check_monotone_naive(const GeoTree& tree, const DirectionSet& dirs, double eps) {
    MonotoneVerdict verdict;
    verdict.monotone = true;
    if (tree.size() <= 1) return verdict;
    require_general_position(tree.points(), dirs, eps);
    auto leaves = tree.leaves();
    std::vector<Vec2> pts;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        auto parent = bfs_parents(tree, leaves[i]);
        for (std::size_t j = i + 1; j < leaves.size(); ++j) {
            pts.clear();
            for (int x = leaves[j];; x = parent[x]) {
                pts.push_back(tree.point(x));
                if (x == leaves[i]) break;
            }
            int witness = -1;
            for (std::size_t d = 0; d < dirs.size() && witness < 0; ++d) {
                if (is_d_monotone(pts, dirs[d], eps)) witness = static_cast<int>(d);
            }
            if (witness < 0) {
                verdict.monotone = false;
                verdict.certificate.clear();
                verdict.counterexample = std::make_pair(leaves[i], leaves[j]);
                return verdict;
            }
            verdict.certificate.push_back({leaves[i], leaves[j], witness});
        }
    }
    return verdict;
}

std::optional<WedgeSpan> subtree_wedge_span(const GeoTree& tree, const WedgeFan& fan, int u, int v, double eps) {
    const int m = fan.wedge_count();
    auto toward = tree_path(tree, u, v);
    int y = toward.size() > 1 ? toward[1] : -1;
    // Union of the wedge sets of the directed paths from u to every leaf of
    // the subtree. Chain-wise spans are not enough: a path through a
    // branching vertex can sweep a wedge that none of its chains uses.
    std::uint64_t mask = 0;
    std::vector<int> path{u};
    std::vector<Vec2> pts;
    auto dfs = [&](auto&& self, int x, int from) -> void {
        bool leaf = true;
        for (int nb : tree.neighbors(x)) {
            if (nb == from || (x == u && nb == y)) continue;
            leaf = false;
            path.push_back(nb);
            self(self, nb, x);
            path.pop_back();
        }
        if (leaf && path.size() > 1) {
            pts = path_points(tree, path);
            mask |= span_of_path(pts, fan, SpanMode::Diagnostic, eps).mask();
        }
    };
    dfs(dfs, u, -1);
    if (mask == 0) return WedgeSpan{0, 0, m};
    if (y < 0) return minimal_cover(mask, m);
    int w0 = fan.index_of(tree.point(y) - tree.point(u), eps);
    if ((mask >> w0) & 1u) return std::nullopt;
    int first = -1, last = -1;
    for (int off = 1; off < m; ++off) {
        if ((mask >> ((w0 + off) % m)) & 1u) {
            if (first < 0) first = off;
            last = off;
        }
    }
    return WedgeSpan{(w0 + first) % m, last - first + 1, m};
}

bool Region::contains(Vec2 p, double tol) const {
    return std::all_of(halfplanes.begin(), halfplanes.end(), [&](const HalfPlane& h) { return h.contains(p, tol); });
}

bool Region::interior_contains(Vec2 p, double tol) const {
    return std::all_of(halfplanes.begin(), halfplanes.end(),
                       [&](const HalfPlane& h) { return h.strictly_contains(p, tol); });
}

Region span_region(const WedgeFan& fan, const WedgeSpan& span, Vec2 apex) {
    if (span.len <= 0 || span.len > fan.k()) {
        throw Error(ErrorCode::InvalidArgument, "span region needs 1..k consecutive wedges");
    }
    double a = fan.boundary(span.start);
    double b = fan.boundary(span.start + span.len);
    Region r;
    r.halfplanes.push_back({apex, {-std::sin(a), std::cos(a)}});
    if (span.len == fan.k()) {
        r.kind = RegionKind::HalfPlane;
    } else {
        r.kind = RegionKind::Wedge;
        r.halfplanes.push_back({apex, {std::sin(b), -std::cos(b)}});
    }
    return r;
}

Region wedge_region(const WedgeFan& fan, int j, Vec2 apex) {
    return span_region(fan, WedgeSpan{fan.mod(j), 1, fan.wedge_count()}, apex);
}

Region branch_region(const GeoTree& tree, const WedgeFan& fan, int u, int v, double eps) {
    auto verts = tree_path(tree, u, v);
    auto pts = path_points(tree, verts);
    WedgeSpan span = span_of_path(pts, fan, SpanMode::Strict, eps);
    Region at_u = span_region(fan, span, tree.point(u));
    Region at_v = span_region(fan, span.opposite(), tree.point(v));
    Region r;
    r.kind = span.len < fan.k() ? RegionKind::Parallelogram : RegionKind::Strip;
    r.halfplanes = at_u.halfplanes;
    r.halfplanes.insert(r.halfplanes.end(), at_v.halfplanes.begin(), at_v.halfplanes.end());
    return r;
}

namespace {

using Polygon = std::vector<Vec2>;

Polygon clip(const Polygon& poly, const HalfPlane& h) {
    Polygon out;
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
        Vec2 p = poly[i];
        Vec2 q = poly[(i + 1) % m];
        double sp = dot(p - h.origin, h.normal);
        double sq = dot(q - h.origin, h.normal);
        if (sp >= 0.0) out.push_back(p);
        if ((sp >= 0.0) != (sq >= 0.0)) {
            double t = sp / (sp - sq);
            out.push_back(p + t * (q - p));
        }
    }
    return out;
}

double area(const Polygon& poly) {
    double a = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) a += cross(poly[i], poly[(i + 1) % poly.size()]);
    return std::abs(a) / 2.0;
}

Polygon clip_box(const Region& r, Vec2 lo, Vec2 hi) {
    Polygon poly{{lo.x, lo.y}, {hi.x, lo.y}, {hi.x, hi.y}, {lo.x, hi.y}};
    for (const auto& h : r.halfplanes) {
        poly = clip(poly, h);
        if (poly.empty()) break;
    }
    return poly;
}

}  // namespace

bool regions_overlap(const Region& a, const Region& b, Vec2 box_min, Vec2 box_max) {
    Polygon pa = clip_box(a, box_min, box_max);
    Polygon pb = clip_box(b, box_min, box_max);
    double area_a = area(pa), area_b = area(pb);
    if (area_a <= 0.0 || area_b <= 0.0) return false;
    Polygon both = pa;
    for (const auto& h : b.halfplanes) {
        both = clip(both, h);
        if (both.empty()) return false;
    }
    return area(both) > 1e-9 * std::min(area_a, area_b);
}

CharacterizationResult check_monotone_characterized(const GeoTree& tree, const DirectionSet& dirs, double eps) {
    CharacterizationResult ok{true, CharacterizationFailure::None};
    if (tree.size() <= 1) return ok;
    require_general_position(tree.points(), dirs, eps);
    WedgeFan fan(dirs);
    const int k = fan.k();
    auto span_of = [&](const std::vector<int>& verts) {
        auto pts = path_points(tree, verts);
        return span_of_path(pts, fan, SpanMode::Diagnostic, eps);
    };

    Decomposition dec = decompose(tree);
    if (dec.branching_vertices.empty()) {
        if (span_of(dec.spine).len <= k) return ok;
        return {false, CharacterizationFailure::NonMonotonePath};
    }

    // (a)
    std::vector<WedgeSpan> leaf_spans;
    for (const auto& lp : dec.leaf_paths) {
        WedgeSpan s = span_of(lp);
        if (s.len > k) return {false, CharacterizationFailure::NonMonotonePath};
        leaf_spans.push_back(s);
    }
    for (const auto& br : dec.branches) {
        if (span_of(br).len > k) return {false, CharacterizationFailure::NonMonotonePath};
    }

    // (b)
    for (std::size_t i = 0; i < leaf_spans.size(); ++i) {
        for (std::size_t j = i + 1; j < leaf_spans.size(); ++j) {
            if (leaf_spans[i].mask() & leaf_spans[j].mask()) {
                return {false, CharacterizationFailure::LeafSpanOverlap};
            }
        }
    }

    // (c)
    Vec2 lo = tree.point(0), hi = tree.point(0);
    for (Vec2 p : tree.points()) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    double margin = 2.0 * std::max(norm(hi - lo), 1e-9);
    lo = lo - Vec2{margin, margin};
    hi = hi + Vec2{margin, margin};

    auto condition_c = [&](int u, int v) -> CharacterizationFailure {
        auto w = subtree_wedge_span(tree, fan, u, v, eps);
        if (!w) return CharacterizationFailure::SubtreeNotConsecutive;
        if (w->empty()) return CharacterizationFailure::None;
        Region r = branch_region(tree, fan, u, v, eps);
        for (int i = 0; i < w->len; ++i) {
            if (regions_overlap(r, wedge_region(fan, w->start + i, tree.point(u)), lo, hi)) {
                return CharacterizationFailure::RegionOverlap;
            }
        }
        return CharacterizationFailure::None;
    };
    for (const auto& br : dec.branches) {
        for (auto [u, v] : {std::pair{br.front(), br.back()}, std::pair{br.back(), br.front()}}) {
            auto f = condition_c(u, v);
            if (f != CharacterizationFailure::None) return {false, f};
        }
    }
    for (const auto& lp : dec.leaf_paths) {
        auto f = condition_c(lp.front(), lp.back());
        if (f != CharacterizationFailure::None) return {false, f};
    }
    return ok;
}

TreeStats tree_stats(const GeoTree& tree) {
    TreeStats s;
    s.length = tree.length();
    for (int v = 0; v < tree.size(); ++v) {
        s.max_degree = std::max(s.max_degree, tree.degree(v));
        if (tree.degree(v) == 1) ++s.leaf_count;
    }
    return s;
}

}  // namespace monotree
