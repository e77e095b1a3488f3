#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "monotree/constructions.hpp"
#include "monotree/solvers.hpp"
#include "support.hpp"

using namespace monotree;
using testsupport::random_dirs;

namespace {

Hit star(int m) {
    Hit h;
    h.rotation.resize(static_cast<std::size_t>(m + 1));
    for (int i = 1; i <= m; ++i) {
        h.rotation[0].push_back(i);
        h.rotation[i] = {0};
    }
    return h;
}

std::vector<GeoTree> monotone_trees(const PointSet& pts, const DirectionSet& dirs) {
    std::vector<GeoTree> out;
    for_each_spanning_tree(static_cast<int>(pts.size()), [&](const std::vector<Edge>& edges) {
        GeoTree t = GeoTree::build(pts, edges);
        if (check_monotone_naive(t, dirs).monotone) out.push_back(std::move(t));
    });
    return out;
}

// Skeleton of a tree seen from its branching vertices: chains between two
// branching vertices, and the wedge covers of chains ending in a leaf.
struct Skeleton {
    std::set<std::pair<int, int>> branches;
    std::map<int, std::vector<std::uint64_t>> leaf_covers;
    bool ok = true;
};

Skeleton skeleton_of(const GeoTree& t, const WedgeFan& fan) {
    Skeleton s;
    for (int u = 0; u < t.size(); ++u) {
        if (t.degree(u) < 3) continue;
        for (int first : t.neighbors(u)) {
            std::uint64_t mask = std::uint64_t{1} << fan.index_of(t.point(first) - t.point(u));
            int prev = u, cur = first;
            while (t.degree(cur) == 2) {
                int next = t.neighbors(cur)[0] == prev ? t.neighbors(cur)[1] : t.neighbors(cur)[0];
                mask |= std::uint64_t{1} << fan.index_of(t.point(next) - t.point(cur));
                prev = cur;
                cur = next;
            }
            if (t.degree(cur) == 1) {
                WedgeSpan cover = minimal_cover(mask, fan.wedge_count());
                s.leaf_covers[u].push_back(cover.mask());
            } else {
                s.branches.insert({std::min(u, cur), std::max(u, cur)});
            }
        }
    }
    return s;
}

// T realizes (H, M, A): same branch structure on the placed vertices, and at
// each placed vertex its leaf chains fit into distinct blocks of the leaves
// H hangs there.
bool realizes(const Skeleton& s, const Hit& h, const Mapping& m, const Assignment& a) {
    std::set<std::pair<int, int>> branches;
    std::map<int, std::vector<std::uint64_t>> blocks;
    for (int x : h.internal_vertices()) {
        blocks[m[x]];
        for (int y : h.rotation[x]) {
            if (h.is_leaf(y)) {
                blocks[m[x]].push_back(a.blocks[y].mask());
            } else {
                branches.insert({std::min(m[x], m[y]), std::max(m[x], m[y])});
            }
        }
    }
    if (branches != s.branches) return false;
    if (blocks.size() != s.leaf_covers.size()) return false;
    for (const auto& [u, bl] : blocks) {
        auto it = s.leaf_covers.find(u);
        if (it == s.leaf_covers.end() || it->second.size() != bl.size()) return false;
        std::vector<bool> used(bl.size(), false);
        for (std::uint64_t cover : it->second) {
            bool placed = false;
            for (std::size_t i = 0; i < bl.size() && !placed; ++i) {
                if (!used[i] && (cover & ~bl[i]) == 0) {
                    used[i] = true;
                    placed = true;
                }
            }
            if (!placed) return false;
        }
    }
    return true;
}

double binomial(int n, int r) {
    if (r < 0 || r > n) return 0.0;
    double out = 1.0;
    for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

}  // namespace

TEST_CASE("enumerate_assignments") {
    for (int m : {2, 4, 6}) {
        for (const Hit& h : all_hits(m)) {
            int l = h.leaf_count();
            auto as = enumerate_assignments(h, m);
            CHECK(static_cast<double>(as.size()) == doctest::Approx(m * binomial(m - 1, l - 1)));
            std::set<std::vector<std::pair<int, int>>> distinct;
            for (const auto& a : as) {
                std::uint64_t all = 0;
                std::vector<std::pair<int, int>> key;
                auto order = h.boundary_leaf_order();
                for (std::size_t i = 0; i < order.size(); ++i) {
                    const auto& b = a.blocks[order[i]];
                    CHECK(b.len >= 1);
                    CHECK((all & b.mask()) == 0);
                    all |= b.mask();
                    // consecutive leaves get consecutive blocks, ccw
                    const auto& next = a.blocks[order[(i + 1) % order.size()]];
                    CHECK((b.start + b.len) % m == next.start);
                    key.push_back({b.start, b.len});
                }
                CHECK(all == (std::uint64_t{1} << m) - 1);
                distinct.insert(key);
            }
            CHECK(distinct.size() == as.size());
        }
    }
}

TEST_CASE("solve_restricted on the 2-star") {
    SkInstance s = gen_sk(2);
    Hit h = star(4);
    Mapping m{0, -1, -1, -1, -1};
    WedgeFan fan(s.directions);
    // Leaf i points at v_i, so it takes the one wedge holding v_i.
    auto order = h.boundary_leaf_order();
    Assignment good;
    good.blocks.assign(5, WedgeSpan{0, 0, 4});
    std::vector<int> wedge_of(5);
    for (int i = 1; i <= 4; ++i) wedge_of[i] = fan.index_of(s.points[i] - s.points[0]);
    // Leaves in boundary order take consecutive wedges starting at the wedge of v_1.
    for (std::size_t i = 0; i < order.size(); ++i) {
        good.blocks[order[i]] = WedgeSpan{(wedge_of[1] + static_cast<int>(i)) % 4, 1, 4};
    }
    auto r = solve_restricted(s.points, s.directions, h, m, good);
    REQUIRE(r.tree);
    CHECK(r.failure == RestrictedFailure::None);
    CHECK(r.tree->length() == doctest::Approx(4.0));
    CHECK(r.tree->degree(0) == 4);

    // Every wedge is still covered by some leaf block, so a rotated assignment
    // is realized by the same star: the wedges are only relabeled.
    Assignment rotated = good;
    for (int leaf : order) rotated.blocks[leaf].start = (rotated.blocks[leaf].start + 1) % 4;
    auto r2 = solve_restricted(s.points, s.directions, h, m, rotated);
    REQUIRE(r2.tree);
    CHECK(r2.tree->edges() == r.tree->edges());

    // A 3-star at the origin needs a two-edge leaf path, so it loses to the star.
    Hit h3 = star(3);
    for (const auto& a : enumerate_assignments(h3, 4)) {
        auto r3 = solve_restricted(s.points, s.directions, h3, Mapping{0, -1, -1, -1}, a);
        if (r3.tree) {
            CHECK(r3.tree->length() > 4.0 + 1e-9);
        } else {
            CHECK(r3.failure != RestrictedFailure::None);
        }
    }

    // Centered at a rim point the star cannot reach across the origin.
    auto r4 = solve_restricted(s.points, s.directions, h, Mapping{1, -1, -1, -1, -1}, good);
    CHECK_FALSE(r4.tree);
}

TEST_CASE("solve_restricted rejects malformed input") {
    SkInstance s = gen_sk(2);
    Hit h = star(4);
    Assignment a;
    a.blocks.assign(5, WedgeSpan{0, 1, 4});
    CHECK_THROWS_AS(solve_restricted(s.points, s.directions, h, Mapping{9, -1, -1, -1, -1}, a), Error);
    CHECK_THROWS_AS(solve_restricted(s.points, s.directions, h, Mapping{0, -1}, a), Error);
    PointSet bad = s.points;
    bad[2] = {bad[1].x, bad[1].y + 0.5};  // shares a vertical line with v_1
    CHECK_THROWS_AS(solve_restricted(bad, s.directions, h, Mapping{0, -1, -1, -1, -1}, a), Error);
}

TEST_CASE("restricted instances have at most one monotone realization") {
    std::mt19937_64 rng(77);
    std::size_t realized = 0, checked = 0;
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 6 + trial % 2;
        const int k = 1 + trial % 2;
        DirectionSet dirs = random_dirs(rng, k);
        PointSet pts = gen_random(n, 1000 + static_cast<std::uint64_t>(trial), {}, dirs);
        WedgeFan fan(dirs);
        std::vector<Skeleton> skeletons;
        std::vector<GeoTree> trees = monotone_trees(pts, dirs);
        for (const auto& t : trees) skeletons.push_back(skeleton_of(t, fan));
        for (const Hit& h : all_hits(std::min(2 * k, n - 1))) {
            if (h.vertex_count() == 2) continue;
            auto internal = h.internal_vertices();
            auto assignments = enumerate_assignments(h, 2 * k);
            for (int rep = 0; rep < 12; ++rep) {
                std::vector<int> perm(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) perm[i] = i;
                std::shuffle(perm.begin(), perm.end(), rng);
                Mapping m(static_cast<std::size_t>(h.vertex_count()), -1);
                for (std::size_t i = 0; i < internal.size(); ++i) m[internal[i]] = perm[i];
                for (const auto& a : assignments) {
                    std::vector<std::size_t> hits;
                    for (std::size_t i = 0; i < trees.size(); ++i) {
                        if (realizes(skeletons[i], h, m, a)) hits.push_back(i);
                    }
                    auto r = solve_restricted(pts, dirs, h, m, a);
                    ++checked;
                    CHECK(hits.size() <= 1);
                    CHECK(r.failure != RestrictedFailure::BudgetExhausted);
                    if (hits.empty()) {
                        CHECK_FALSE(r.tree);
                    } else {
                        ++realized;
                        REQUIRE(r.tree);
                        CHECK(r.tree->edges() == trees[hits[0]].edges());
                    }
                }
            }
        }
    }
    MESSAGE(checked << " restricted instances, " << realized << " realized");
    CHECK(realized > 0);
}

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

// Length of the path through the points sorted by projection onto the unit
// vector at `angle`.
double path_along(const PointSet& pts, double angle) {
    std::vector<std::size_t> idx(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const double c = std::cos(angle), s = std::sin(angle);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return pts[a].x * c + pts[a].y * s < pts[b].x * c + pts[b].y * s;
    });
    double len = 0.0;
    for (std::size_t i = 1; i < idx.size(); ++i) len += std::hypot(pts[idx[i]].x - pts[idx[i - 1]].x, pts[idx[i]].y - pts[idx[i - 1]].y);
    return len;
}

// Minimum over one angle strictly inside every interval between directions
// orthogonal to a pair of points.
double best_single_direction(const PointSet& pts) {
    std::vector<double> cuts;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double a = std::atan2(pts[j].y - pts[i].y, pts[j].x - pts[i].x) + kPi / 2;
            cuts.push_back(std::fmod(std::fmod(a, kPi) + kPi, kPi));
        }
    }
    std::sort(cuts.begin(), cuts.end());
    double best = INFINITY;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        double lo = cuts[i];
        double hi = i + 1 < cuts.size() ? cuts[i + 1] : cuts[0] + kPi;
        if (hi - lo < 1e-12) continue;
        best = std::min(best, path_along(pts, (lo + hi) / 2));
    }
    return best;
}

double kruskal_length(const PointSet& pts) {
    struct E {
        double w;
        int a, b;
    };
    std::vector<E> es;
    const int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) es.push_back({distance(pts[i], pts[j]), i, j});
    }
    std::sort(es.begin(), es.end(), [](const E& x, const E& y) { return x.w < y.w; });
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    double total = 0.0;
    for (const auto& e : es) {
        int ra = find(e.a), rb = find(e.b);
        if (ra != rb) {
            parent[ra] = rb;
            total += e.w;
        }
    }
    return total;
}

Arc arc_deg(double from, double to) { return Arc{from * kPi / 180.0, (to - from) * kPi / 180.0}; }

// Smallest number of angles, drawn from midpoints between sorted endpoints,
// that hit every arc; by subset search.
int brute_piercing(const std::vector<Arc>& arcs) {
    std::vector<double> ends;
    for (const auto& a : arcs) {
        ends.push_back(a.start);
        ends.push_back(std::fmod(a.end(), kPi));
    }
    std::sort(ends.begin(), ends.end());
    std::vector<double> mids;
    for (std::size_t i = 0; i < ends.size(); ++i) {
        double hi = i + 1 < ends.size() ? ends[i + 1] : ends[0] + kPi;
        if (hi - ends[i] > 1e-12) mids.push_back(std::fmod((ends[i] + hi) / 2, kPi));
    }
    const std::size_t c = mids.size();
    for (int size = 1; size <= static_cast<int>(arcs.size()); ++size) {
        std::vector<int> pick(static_cast<std::size_t>(size));
        std::function<bool(int, std::size_t)> rec = [&](int depth, std::size_t from) {
            if (depth == size) {
                for (const auto& a : arcs) {
                    bool hit = false;
                    for (int p : pick) hit = hit || a.contains(mids[p]);
                    if (!hit) return false;
                }
                return true;
            }
            for (std::size_t i = from; i < c; ++i) {
                pick[depth] = static_cast<int>(i);
                if (rec(depth + 1, i + 1)) return true;
            }
            return false;
        };
        if (rec(0, 0)) return size;
    }
    return -1;
}

}  // namespace

TEST_CASE("solve_mmst_fixed small cases") {
    // One direction: the spanning path sorted along it.
    PointSet three{{0, 0}, {2, 0.3}, {1, -0.4}};
    auto dirs = direction_set_from_degrees(std::vector<double>{0.0});
    auto r = solve_mmst_fixed(three, dirs);
    REQUIRE(r.tree);
    CHECK(r.tree->edges() == std::vector<Edge>{{0, 2}, {1, 2}});
    CHECK(r.length == doctest::Approx(distance(three[0], three[2]) + distance(three[2], three[1])));

    SkInstance s = gen_sk(2);
    auto r2 = solve_mmst_fixed(s.points, s.directions);
    REQUIRE(r2.tree);
    CHECK(r2.length == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(r2.tree->degree(0) == 4);
    CHECK(r2.certificate.monotone);

    PointSet bad{{0, 0}, {0, 1}, {1, 0.5}};
    CHECK(code_of([&] { solve_mmst_fixed(bad, dirs); }) == ErrorCode::GeneralPosition);
}

TEST_CASE("solve_mmst_fixed agrees with the brute-force oracle") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 4 + trial % 4;
        const int k = 1 + trial % 3;
        DirectionSet dirs = random_dirs(rng, k);
        PointSet pts = gen_random(n, 500 + static_cast<std::uint64_t>(trial), {}, dirs);
        auto got = solve_mmst_fixed(pts, dirs);
        auto want = oracle_fixed(pts, dirs);
        REQUIRE(want.tree);
        REQUIRE(got.tree);
        CHECK(got.length == doctest::Approx(want.length).epsilon(1e-12));
        CHECK(check_monotone_naive(*got.tree, dirs).monotone);
        if (want.unique) CHECK(got.tree->edges() == want.tree->edges());
        CHECK(got.length >= kruskal_length(pts) - 1e-9);
    }
}

TEST_CASE("solve_mmst_fixed does not depend on the thread count") {
    std::mt19937_64 rng(5);
    DirectionSet dirs = random_dirs(rng, 2);
    PointSet pts = gen_random(8, 31, {}, dirs);
    SolverOptions one;
    one.threads = 1;
    SolverOptions many;
    many.threads = 4;
    auto a = solve_mmst_fixed(pts, dirs, one);
    auto b = solve_mmst_fixed(pts, dirs, many);
    REQUIRE(a.tree);
    REQUIRE(b.tree);
    CHECK(a.tree->edges() == b.tree->edges());
    CHECK(a.counters.combos == b.counters.combos);
}

TEST_CASE("solve_k1") {
    PointSet line{{0, 0}, {1, 0}, {3, 0}};
    auto r = solve_k1(line);
    CHECK(r.length == doctest::Approx(3.0));

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3 + trial % 10;
        PointSet pts = gen_random(n, 70 + static_cast<std::uint64_t>(trial));
        SweepOptions opt;
        opt.check = true;
        auto s = solve_k1(pts, opt);
        CHECK(s.order_consistent);
        CHECK(s.max_drift < 1e-9);
        CHECK(s.length == doctest::Approx(best_single_direction(pts)).epsilon(1e-12));
        CHECK(s.length == doctest::Approx(path_along(pts, s.direction.angle)).epsilon(1e-12));
        CHECK(s.tree.length() == doctest::Approx(s.length));
        // No sampled direction does better.
        for (int i = 0; i < 500; ++i) CHECK(path_along(pts, kPi * i / 500.0 + 1e-7) >= s.length - 1e-9);
    }
}

TEST_CASE("critical and candidate directions interleave") {
    PointSet pts = gen_random(6, 4);
    auto crit = critical_angles(pts);
    auto cand = candidate_directions(pts);
    CHECK(crit.size() == 15);
    CHECK(cand.size() == crit.size());
    CHECK(std::is_sorted(crit.begin(), crit.end()));
    for (double c : cand) {
        for (double x : crit) CHECK(std::abs(c - x) > 1e-12);
    }
}

TEST_CASE("solve_mmst_k") {
    PointSet pts = gen_random(6, 12);
    auto one = solve_mmst_k(pts, 1);
    CHECK(one.report.length == doctest::Approx(solve_k1(pts).length).epsilon(1e-12));
    double prev = INFINITY;
    for (int k = 1; k <= 3; ++k) {
        auto got = solve_mmst_k(pts, k);
        auto want = oracle_k(pts, k);
        REQUIRE(want.tree);
        CHECK(got.report.length == doctest::Approx(want.length).epsilon(1e-12));
        CHECK(got.report.length <= prev + 1e-9);
        CHECK(got.directions.k() == k);
        REQUIRE(got.report.tree);
        CHECK(check_monotone_naive(*got.report.tree, got.directions).monotone);
        prev = got.report.length;
    }
    CHECK(code_of([&] { solve_mmst_k(pts, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("euclidean_mst") {
    PointSet square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    auto t = euclidean_mst(square);
    CHECK(t.edges() == std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}});
    CHECK(t.length() == doctest::Approx(3.0));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        PointSet pts = gen_random(40, 900 + static_cast<std::uint64_t>(trial));
        auto m = euclidean_mst(pts);
        CHECK(m.length() == doctest::Approx(kruskal_length(pts)).epsilon(1e-12));
        for (int i = 0; i < 50; ++i) {
            CHECK(GeoTree::build(pts, testsupport::random_tree_edges(rng, 40)).length() >= m.length() - 1e-9);
        }
    }
}

TEST_CASE("for_each_spanning_tree") {
    for (auto [n, count] : {std::pair{1, 1}, {2, 1}, {3, 3}, {4, 16}, {5, 125}, {6, 1296}}) {
        std::set<std::vector<Edge>> seen;
        std::size_t visits = 0;
        for_each_spanning_tree(n, [&](const std::vector<Edge>& edges) {
            ++visits;
            auto sorted = edges;
            std::sort(sorted.begin(), sorted.end());
            seen.insert(sorted);
            CHECK(static_cast<int>(edges.size()) == n - 1);
        });
        CHECK(visits == static_cast<std::size_t>(count));
        CHECK(seen.size() == static_cast<std::size_t>(count));
    }
    CHECK(code_of([] { for_each_spanning_tree(10, [](const std::vector<Edge>&) {}); }) == ErrorCode::CapExceeded);
}

TEST_CASE("oracle_fixed") {
    SkInstance s = gen_sk(2);
    auto r = oracle_fixed(s.points, s.directions);
    REQUIRE(r.tree);
    CHECK(r.length == doctest::Approx(4.0));
    CHECK(r.unique);
    CHECK(r.runner_up > r.length);
    CHECK(r.trees == 125);

    PointSet three{{0, 0}, {2, 0.3}, {1, -0.4}};
    auto dirs = direction_set_from_degrees(std::vector<double>{0.0});
    auto r1 = oracle_fixed(three, dirs);
    REQUIRE(r1.tree);
    CHECK(r1.tree->edges() == std::vector<Edge>{{0, 2}, {1, 2}});
    CHECK(code_of([&] { oracle_fixed(gen_random(10, 1), dirs); }) == ErrorCode::CapExceeded);
}

TEST_CASE("min_arc_piercing") {
    CHECK(min_arc_piercing({arc_deg(10, 50)}).count == 1);
    CHECK(min_arc_piercing({arc_deg(10, 50), arc_deg(60, 80)}).count == 2);
    auto three = min_arc_piercing({arc_deg(0, 90), arc_deg(45, 130), arc_deg(100, 170)});
    CHECK(three.count == 2);
    CHECK(three.points.size() == 2);
    CHECK(min_arc_piercing({arc_deg(10, 50), Arc{0.3, 0.0}}).count == -1);
    // An arc wrapping past pi.
    CHECK(min_arc_piercing({arc_deg(170, 200), arc_deg(0, 15)}).count == 1);

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> start(0.0, kPi), width(0.05, kPi);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Arc> arcs;
        const int m = 1 + trial % 6;
        for (int i = 0; i < m; ++i) arcs.push_back(Arc{start(rng), width(rng) * (trial % 2 ? 0.3 : 1.0)});
        auto got = min_arc_piercing(arcs);
        CHECK(got.count == brute_piercing(arcs));
        CHECK(static_cast<int>(got.points.size()) == got.count);
        for (const auto& a : arcs) {
            bool hit = false;
            for (double p : got.points) hit = hit || a.contains(p);
            CHECK(hit);
        }
    }
}

TEST_CASE("oracle_k") {
    PointSet pts = gen_random(5, 21);
    double prev = INFINITY;
    for (int k = 1; k <= 4; ++k) {
        auto r = oracle_k(pts, k);
        REQUIRE(r.tree);
        CHECK(r.length <= prev + 1e-9);
        CHECK(r.directions.k() == k);
        CHECK(check_monotone_naive(*r.tree, r.directions).monotone);
        prev = r.length;
    }
    CHECK(oracle_k(pts, 1).length == doctest::Approx(solve_k1(pts).length).epsilon(1e-12));
    CHECK(prev >= euclidean_mst(pts).length() - 1e-9);
}

TEST_CASE("oracle_k directions keep general position") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        PointSet pts = gen_random(5, seed);
        for (int k = 1; k <= 3; ++k) {
            auto r = oracle_k(pts, k);
            REQUIRE(r.tree);
            CHECK(check_general_position(pts, r.directions).empty());
            auto s = solve_mmst_k(pts, k);
            CHECK(check_general_position(pts, s.directions).empty());
            CHECK(s.report.length == doctest::Approx(r.length).epsilon(1e-12));
        }
    }
}
