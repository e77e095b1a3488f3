#include <algorithm>
#include <bit>
#include <cstdlib>
#include <thread>

#include "restricted_engine.hpp"

namespace monotree {

const char* to_string(RestrictedFailure f) {
    switch (f) {
        case RestrictedFailure::None: return "none";
        case RestrictedFailure::PointUncovered: return "point-uncovered";
        case RestrictedFailure::OrderMismatch: return "order-mismatch";
        case RestrictedFailure::ConditionC: return "condition-c-violation";
        case RestrictedFailure::ValidationFailed: return "validation-failed";
        case RestrictedFailure::BudgetExhausted: return "budget-exhausted";
    }
    return "unknown";
}

std::vector<Assignment> enumerate_assignments(const Hit& hit, int wedge_count) {
    std::vector<Assignment> out;
    const auto order = hit.boundary_leaf_order();
    const int l = static_cast<int>(order.size());
    if (l == 0 || l > wedge_count) return out;
    // cuts[0] = 0 < cuts[1] < ... < cuts[l-1] < wedge_count
    std::vector<int> cuts(static_cast<std::size_t>(l));
    auto emit = [&](int s0) {
        Assignment a;
        a.blocks.assign(static_cast<std::size_t>(hit.vertex_count()), WedgeSpan{0, 0, wedge_count});
        for (int i = 0; i < l; ++i) {
            int begin = cuts[i];
            int end = i + 1 < l ? cuts[i + 1] : wedge_count;
            a.blocks[order[i]] = WedgeSpan{(s0 + begin) % wedge_count, end - begin, wedge_count};
        }
        out.push_back(std::move(a));
    };
    for (int s0 = 0; s0 < wedge_count; ++s0) {
        auto rec = [&](auto&& self, int i, int lo) -> void {
            if (i == l) {
                emit(s0);
                return;
            }
            for (int c = lo; c <= wedge_count - (l - i); ++c) {
                cuts[i] = c;
                self(self, i + 1, c + 1);
            }
        };
        cuts[0] = 0;
        rec(rec, 1, 1);
    }
    return out;
}

namespace detail {

std::size_t resolve_threads(int requested) {
    if (requested > 0) return static_cast<std::size_t>(requested);
    if (const char* env = std::getenv("MONOTREE_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

Instance::Instance(const PointSet& pts, const DirectionSet& ds, double tolerance)
    : points(pts),
      dirs(ds),
      fan(ds),
      n(static_cast<int>(pts.size())),
      k(ds.k()),
      m(2 * ds.k()),
      eps(tolerance) {
    wedges.assign(static_cast<std::size_t>(n * n), -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a != b) wedges[static_cast<std::size_t>(a * n + b)] = fan.index_of(points[b] - points[a], eps);
        }
    }
    proj.resize(static_cast<std::size_t>(n * k));
    for (int p = 0; p < n; ++p) {
        for (int d = 0; d < k; ++d) proj[static_cast<std::size_t>(p * k + d)] = dot(points[p], dirs[d].vec());
    }
}

HitShape::HitShape(const Hit& h) : hit(&h) {
    leaf_order = h.boundary_leaf_order();
    leaf_path.assign(static_cast<std::size_t>(h.vertex_count()), -1);
    for (int v = 0; v < h.vertex_count(); ++v) {
        if (!h.is_leaf(v)) internal.push_back(v);
    }
    for (int leaf : leaf_order) {
        leaf_path[leaf] = static_cast<int>(paths.size());
        paths.push_back({true, h.rotation[leaf][0], leaf});
    }
    for (int u : internal) {
        for (int v : h.rotation[u]) {
            if (u < v && !h.is_leaf(v)) paths.push_back({false, u, v});
        }
    }
}

RestrictedEngine::RestrictedEngine(const Instance& inst, const HitShape& shape, const Mapping& mapping)
    : inst_(inst), shape_(shape), mapping_(mapping) {
    std::vector<bool> used(static_cast<std::size_t>(inst.n), false);
    for (int v : shape.internal) used[mapping_[v]] = true;
    for (int p = 0; p < inst.n; ++p) {
        if (!used[p]) free_.push_back(p);
    }
    for (const auto& ps : shape.paths) {
        apex_.push_back(mapping_[ps.from]);
        tail_.push_back(ps.leaf ? -1 : mapping_[ps.to]);
    }
    if (shape.paths.size() > 64) {
        viable_ = false;
        return;
    }
    // Each leaf at u needs its own wedge at M(u) holding a free point.
    for (int u : shape.internal) {
        int leaf_children = 0;
        for (int v : shape.hit->rotation[u]) leaf_children += shape.hit->is_leaf(v) ? 1 : 0;
        std::uint64_t occupied = 0;
        for (int p : free_) occupied |= std::uint64_t{1} << inst.wedge(mapping_[u], p);
        if (std::popcount(occupied) < leaf_children) {
            viable_ = false;
            return;
        }
    }
    if (static_cast<int>(free_.size()) < static_cast<int>(shape.leaf_order.size())) {
        viable_ = false;
        return;
    }
    branch_ok_.assign(free_.size(), 0);
    for (std::size_t i = 0; i < free_.size(); ++i) {
        int p = free_[i];
        for (std::size_t path = 0; path < shape.paths.size(); ++path) {
            if (shape.paths[path].leaf) continue;
            int a = apex_[path], b = tail_[path];
            // a->p, p->b and a->b are positive combinations of branch edges,
            // so they share a wedge set of at most k wedges.
            std::uint64_t mask = (std::uint64_t{1} << inst.wedge(a, p)) | (std::uint64_t{1} << inst.wedge(p, b)) |
                                 (std::uint64_t{1} << inst.wedge(a, b));
            if (minimal_cover(mask, inst.m).len <= inst.k) branch_ok_[i] |= std::uint64_t{1} << path;
        }
    }
}

bool RestrictedEngine::order_for_direction(int path, const std::vector<int>& set, int d, Order& out) const {
    const int a = apex_[path];
    const int b = tail_[path];
    const double base = inst_.projection(a, d);
    out.assign(set.begin(), set.end());
    if (b < 0) {
        if (set.empty()) return false;
        const double sign = inst_.projection(set[0], d) - base > 0.0 ? 1.0 : -1.0;
        for (int q : set) {
            if ((inst_.projection(q, d) - base) * sign <= 0.0) return false;
        }
        std::sort(out.begin(), out.end(), [&](int x, int y) {
            return (inst_.projection(x, d) - base) * sign < (inst_.projection(y, d) - base) * sign;
        });
    } else {
        const double span = inst_.projection(b, d) - base;
        const double sign = span > 0.0 ? 1.0 : -1.0;
        for (int q : set) {
            double t = (inst_.projection(q, d) - base) * sign;
            if (t <= 0.0 || t >= span * sign) return false;
        }
        std::sort(out.begin(), out.end(), [&](int x, int y) {
            return (inst_.projection(x, d) - base) * sign < (inst_.projection(y, d) - base) * sign;
        });
    }
    if (b < 0) {
        std::uint64_t mask = 0;
        int prev = a;
        for (int q : out) {
            mask |= std::uint64_t{1} << inst_.wedge(prev, q);
            prev = q;
        }
        WedgeSpan cover = minimal_cover(mask, inst_.m);
        if (cover.len > inst_.k || (cover.mask() & ~block_mask_[path]) != 0) return false;
    }
    return true;
}

bool RestrictedEngine::has_order(int path, const std::vector<int>& set) const {
    Order tmp;
    for (int d = 0; d < inst_.k; ++d) {
        if (order_for_direction(path, set, d, tmp)) return true;
    }
    return false;
}

std::vector<RestrictedEngine::Order> RestrictedEngine::orders(int path, const std::vector<int>& set) const {
    std::vector<Order> out;
    Order tmp;
    for (int d = 0; d < inst_.k; ++d) {
        if (order_for_direction(path, set, d, tmp) && std::find(out.begin(), out.end(), tmp) == out.end()) {
            out.push_back(tmp);
        }
    }
    return out;
}

void RestrictedEngine::complete() {
    ++placements_;
    if (placements_ > budget_) {
        exhausted_ = true;
        return;
    }
    const std::size_t np = shape_.paths.size();
    std::vector<std::vector<Order>> options(np);
    for (std::size_t p = 0; p < np; ++p) {
        options[p] = orders(static_cast<int>(p), sets_[p]);
        if (options[p].empty()) return;
    }
    any_complete_ = true;
    std::vector<std::size_t> pick(np, 0);
    std::vector<Edge> edges;
    while (true) {
        edges.clear();
        double length = 0.0;
        for (std::size_t p = 0; p < np; ++p) {
            int prev = apex_[p];
            for (int q : options[p][pick[p]]) {
                edges.push_back(Edge::make(prev, q));
                length += distance(inst_.points[prev], inst_.points[q]);
                prev = q;
            }
            if (tail_[p] >= 0) {
                edges.push_back(Edge::make(prev, tail_[p]));
                length += distance(inst_.points[prev], inst_.points[tail_[p]]);
            }
        }
        std::sort(edges.begin(), edges.end());
        if (best_->improved_by(length, edges)) {
            GeoTree tree = GeoTree::build(inst_.points, edges);
            auto ch = check_monotone_characterized(tree, inst_.dirs, inst_.eps);
            bool ok = ch.monotone && check_monotone_naive(tree, inst_.dirs, inst_.eps).monotone;
            if (ok) {
                best_->found = true;
                best_->length = tree.length();
                best_->edges = tree.edges();
                found_ = std::move(tree);
            } else if (ch.failure == CharacterizationFailure::RegionOverlap ||
                       ch.failure == CharacterizationFailure::SubtreeNotConsecutive) {
                validation_failure_ = RestrictedFailure::ConditionC;
            } else if (validation_failure_ == RestrictedFailure::None) {
                validation_failure_ = RestrictedFailure::ValidationFailed;
            }
        }
        std::size_t i = 0;
        while (i < np && ++pick[i] == options[i].size()) pick[i++] = 0;
        if (i == np) break;
    }
}

void RestrictedEngine::dfs(std::size_t idx) {
    if (exhausted_) return;
    if (idx == dfs_order_.size()) {
        for (std::size_t p = 0; p < shape_.paths.size(); ++p) {
            if (shape_.paths[p].leaf && sets_[p].empty()) return;
        }
        complete();
        return;
    }
    const int i = dfs_order_[idx];
    const int point = free_[static_cast<std::size_t>(i)];
    std::uint64_t bits = cand_[static_cast<std::size_t>(i)];
    while (bits) {
        int path = std::countr_zero(bits);
        bits &= bits - 1;
        auto& set = sets_[static_cast<std::size_t>(path)];
        set.push_back(point);
        if (has_order(path, set)) dfs(idx + 1);
        set.pop_back();
        if (exhausted_) return;
    }
}

RestrictedResult RestrictedEngine::run(const Assignment& assignment, Best& best, std::size_t budget) {
    RestrictedResult result;
    const std::size_t np = shape_.paths.size();
    block_mask_.assign(np, 0);
    for (std::size_t p = 0; p < np; ++p) {
        if (shape_.paths[p].leaf) block_mask_[p] = assignment.blocks[shape_.paths[p].to].mask();
    }
    cand_.assign(free_.size(), 0);
    std::uint64_t leaf_reach = 0;
    for (std::size_t i = 0; i < free_.size(); ++i) {
        std::uint64_t c = branch_ok_[i];
        for (std::size_t p = 0; p < np; ++p) {
            if (!shape_.paths[p].leaf) continue;
            if ((block_mask_[p] >> inst_.wedge(apex_[p], free_[i])) & 1u) c |= std::uint64_t{1} << p;
        }
        if (c == 0) {
            result.failure = RestrictedFailure::PointUncovered;
            return result;
        }
        cand_[i] = c;
        leaf_reach |= c;
    }
    for (std::size_t p = 0; p < np; ++p) {
        if (shape_.paths[p].leaf && !((leaf_reach >> p) & 1u)) {
            result.failure = RestrictedFailure::PointUncovered;
            return result;
        }
    }
    dfs_order_.resize(free_.size());
    for (std::size_t i = 0; i < free_.size(); ++i) dfs_order_[i] = static_cast<int>(i);
    std::stable_sort(dfs_order_.begin(), dfs_order_.end(),
                     [&](int x, int y) { return std::popcount(cand_[x]) < std::popcount(cand_[y]); });
    sets_.assign(np, {});
    best_ = &best;
    budget_ = budget;
    placements_ = 0;
    exhausted_ = false;
    any_complete_ = false;
    validation_failure_ = RestrictedFailure::None;
    found_.reset();

    dfs(0);

    result.placements = placements_;
    if (found_) {
        result.tree = std::move(found_);
        found_.reset();
    } else if (exhausted_) {
        result.failure = RestrictedFailure::BudgetExhausted;
    } else if (!any_complete_) {
        result.failure = RestrictedFailure::OrderMismatch;
    } else {
        result.failure =
            validation_failure_ == RestrictedFailure::None ? RestrictedFailure::ValidationFailed : validation_failure_;
    }
    return result;
}

}  // namespace detail

RestrictedResult solve_restricted(const PointSet& points, const DirectionSet& dirs, const Hit& hit,
                                  const Mapping& mapping, const Assignment& assignment,
                                  const SolverOptions& options) {
    if (!hit.valid()) throw Error(ErrorCode::InvalidArgument, "not a valid HIT");
    if (static_cast<int>(mapping.size()) != hit.vertex_count() ||
        static_cast<int>(assignment.blocks.size()) != hit.vertex_count()) {
        throw Error(ErrorCode::InvalidArgument, "mapping and assignment must cover every HIT vertex");
    }
    std::vector<bool> used(points.size(), false);
    for (int v = 0; v < hit.vertex_count(); ++v) {
        if (hit.is_leaf(v)) continue;
        int p = mapping[v];
        if (p < 0 || p >= static_cast<int>(points.size()) || used[p]) {
            throw Error(ErrorCode::InvalidArgument, "mapping must be injective into the point set");
        }
        used[p] = true;
    }
    auto violations = check_general_position(points, dirs, options.eps);
    if (!violations.empty()) throw Error(ErrorCode::GeneralPosition, "points are not in D-general position");

    detail::Instance inst(points, dirs, options.eps);
    detail::HitShape shape(hit);
    detail::RestrictedEngine engine(inst, shape, mapping);
    RestrictedResult result;
    if (!engine.viable()) {
        result.failure = RestrictedFailure::PointUncovered;
        return result;
    }
    detail::Best best;
    return engine.run(assignment, best, options.branch_budget);
}

}  // namespace monotree
