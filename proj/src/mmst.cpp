#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <memory>
#include <mutex>
#include <span>
#include <thread>

#include "monotree/errors.hpp"
#include "restricted_engine.hpp"

namespace monotree {

namespace {

struct WorkerTotals {
    detail::Best best;
    SolveCounters counters;
};

struct HitJob {
    Hit hit;
    detail::HitShape shape;
    std::vector<Assignment> assignments;

    HitJob(Hit h, int wedge_count) : hit(std::move(h)), shape(hit), assignments(enumerate_assignments(hit, wedge_count)) {}
    HitJob(const HitJob&) = delete;
};

void search_mappings(const detail::Instance& inst, const HitJob& job, int first_image, std::size_t budget,
                     WorkerTotals& out) {
    const auto& internal = job.shape.internal;
    Mapping mapping(static_cast<std::size_t>(job.hit.vertex_count()), -1);
    std::vector<bool> used(static_cast<std::size_t>(inst.n), false);
    mapping[internal[0]] = first_image;
    used[first_image] = true;

    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == internal.size()) {
            detail::RestrictedEngine engine(inst, job.shape, mapping);
            if (!engine.viable()) return;
            for (const auto& a : job.assignments) {
                ++out.counters.combos;
                auto r = engine.run(a, out.best, budget);
                if (r.tree) ++out.counters.feasible;
                if (r.failure == RestrictedFailure::BudgetExhausted) ++out.counters.budget_exhausted;
            }
            return;
        }
        for (int p = 0; p < inst.n; ++p) {
            if (used[p]) continue;
            used[p] = true;
            mapping[internal[idx]] = p;
            self(self, idx + 1);
            used[p] = false;
        }
        mapping[internal[idx]] = -1;
    };
    rec(rec, 1);
}

void take_better(detail::Best& into, const detail::Best& other) {
    if (other.found && into.improved_by(other.length, other.edges)) into = other;
}

}  // namespace

SolveReport solve_mmst_fixed(const PointSet& points, const DirectionSet& dirs, const SolverOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    if (points.empty()) throw Error(ErrorCode::InvalidArgument, "empty point set");
    if (dirs.empty()) throw Error(ErrorCode::InvalidArgument, "empty direction set");
    auto violations = check_general_position(points, dirs, options.eps);
    if (!violations.empty()) {
        const auto& v = violations.front();
        throw Error(ErrorCode::GeneralPosition, "points " + std::to_string(v.p) + " and " + std::to_string(v.q) +
                                                    " are orthogonal to direction " + std::to_string(v.direction));
    }

    SolveReport report;
    report.directions = dirs;
    report.algorithm = "mmst-fixed";
    const int n = static_cast<int>(points.size());

    detail::Best best;
    if (n == 1) {
        best.found = true;
    } else {
        // Spine: the path sorted along a single direction.
        for (const auto& d : dirs) {
            auto order = projection_order(points, d, options.eps);
            std::vector<Edge> edges;
            double length = 0.0;
            for (std::size_t i = 1; i < order.size(); ++i) {
                edges.push_back(Edge::make(order[i - 1], order[i]));
                length += distance(points[order[i - 1]], points[order[i]]);
            }
            std::sort(edges.begin(), edges.end());
            if (best.improved_by(length, edges)) {
                best.found = true;
                best.length = length;
                best.edges = std::move(edges);
            }
        }
    }

    const int k = dirs.k();
    if (n >= 4) {
        detail::Instance inst(points, dirs, options.eps);
        std::vector<std::unique_ptr<HitJob>> jobs;
        enumerate_hits(std::min(2 * k, n - 1), [&](const Hit& h) {
            int leaves = h.leaf_count();
            int internal = h.vertex_count() - leaves;
            if (leaves >= 3 && leaves + internal <= n) jobs.push_back(std::make_unique<HitJob>(h, 2 * k));
        });
        report.counters.hits = jobs.size();

        std::vector<std::pair<std::size_t, int>> tasks;
        for (std::size_t j = 0; j < jobs.size(); ++j) {
            for (int p = 0; p < n; ++p) tasks.emplace_back(j, p);
        }
        const std::size_t workers = std::max<std::size_t>(1, std::min(detail::resolve_threads(options.threads), tasks.size()));
        std::vector<WorkerTotals> totals(workers);
        for (auto& t : totals) t.best = best;
        std::atomic<std::size_t> next{0};
        std::mutex error_mutex;
        std::exception_ptr error;
        auto work = [&](std::size_t w) {
            try {
                for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
                    search_mappings(inst, *jobs[tasks[i].first], tasks[i].second, options.branch_budget, totals[w]);
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(tasks.size());
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> threads;
            for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
            for (auto& t : threads) t.join();
        }
        if (error) std::rethrow_exception(error);
        for (const auto& t : totals) {
            take_better(best, t.best);
            report.counters.combos += t.counters.combos;
            report.counters.feasible += t.counters.feasible;
            report.counters.budget_exhausted += t.counters.budget_exhausted;
        }
    }

    report.tree = GeoTree::build(points, best.edges);
    report.length = report.tree->length();
    report.certificate = check_monotone_naive(*report.tree, dirs, options.eps);
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

KSolveResult solve_mmst_k(const PointSet& points, int k, const SolverOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
    if (points.empty()) throw Error(ErrorCode::InvalidArgument, "empty point set");
    KSolveResult out;
    if (k == 1) {
        SweepOptions sweep;
        sweep.eps = options.eps;
        auto r = solve_k1(points, sweep);
        double angle = r.direction.angle;
        out.directions = direction_set_from_radians(std::span<const double>(&angle, 1));
        out.report.tree = r.tree;
        out.report.length = r.length;
        out.report.directions = out.directions;
        out.report.certificate = check_monotone_naive(r.tree, out.directions, options.eps);
        out.report.algorithm = "k1-sweep";
        out.subsets = 1;
        out.report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return out;
    }

    const auto pool = candidate_directions(points);
    if (static_cast<int>(pool.size()) < k) {
        throw Error(ErrorCode::InvalidArgument, "only " + std::to_string(pool.size()) +
                                                    " distinct direction classes exist; cannot choose " +
                                                    std::to_string(k));
    }
    std::vector<int> pick(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pick[i] = i;
    const int total = static_cast<int>(pool.size());
    bool have = false;
    SolveCounters counters;
    while (true) {
        std::vector<double> angles;
        for (int i : pick) angles.push_back(pool[i]);
        auto ds = direction_set_from_radians(angles);
        ++out.subsets;
        try {
            auto rep = solve_mmst_fixed(points, ds, options);
            counters.hits += rep.counters.hits;
            counters.combos += rep.counters.combos;
            counters.feasible += rep.counters.feasible;
            counters.budget_exhausted += rep.counters.budget_exhausted;
            if (!have || shorter_tree(rep.length, rep.tree->edges(), out.report.length, out.report.tree->edges(),
                                      kLengthTol)) {
                out.report = std::move(rep);
                out.directions = ds;
                have = true;
            }
        } catch (const Error& e) {
            // A direction squeezed between two critical angles closer than
            // the tolerance cannot be used.
            if (e.code() != ErrorCode::GeneralPosition) throw;
        }
        int i = k - 1;
        while (i >= 0 && pick[i] == total - k + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!have) throw Error(ErrorCode::GeneralPosition, "no direction subset is in general position");
    out.report.counters = counters;
    out.report.algorithm = "mmst-k";
    out.report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace monotree
