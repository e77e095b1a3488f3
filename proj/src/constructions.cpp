#include "monotree/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "monotree/errors.hpp"

namespace monotree {

SkInstance gen_sk(int k) {
    if (k < 2 || k % 2 != 0) throw Error(ErrorCode::InvalidArgument, "S_k needs an even k >= 2");
    SkInstance s;
    s.k = k;
    std::vector<double> angles;
    for (int i = 0; i < k; ++i) angles.push_back(i * kPi / k);
    s.directions = direction_set_from_radians(angles);
    // With k even the boundary lines include the x axis, so wedge i spans
    // [i pi/k, (i+1) pi/k).
    s.points.push_back({0.0, 0.0});
    for (int i = 0; i < 2 * k; ++i) {
        double a = (i + 2.0 / 3.0) * kPi / k;
        s.points.push_back({std::cos(a), std::sin(a)});
    }
    return s;
}

double sk_path_length(int k) {
    double sum = 1.0;
    for (int i = 1; i < k; ++i) sum += 2.0 * std::sin(kPi * i / (2.0 * k));
    return sum;
}

namespace {

bool compatible(const PointSet& pts, Vec2 p, const std::optional<DirectionSet>& dirs, double min_dist) {
    for (const auto& q : pts) {
        if (distance(p, q) < min_dist) return false;
        if (dirs) {
            for (const auto& d : *dirs) {
                if (orthogonal_within(p - q, d, kDefaultEps)) return false;
            }
        }
    }
    return true;
}

}  // namespace

PointSet gen_random(int n, std::uint64_t seed, const Box& box, const std::optional<DirectionSet>& dirs) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
    if (!(box.hi.x > box.lo.x) || !(box.hi.y > box.lo.y)) throw Error(ErrorCode::InvalidArgument, "empty box");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x), uy(box.lo.y, box.hi.y);
    const double min_dist = 1e-6 * box.size();
    constexpr int budget = 10000;
    PointSet pts;
    while (static_cast<int>(pts.size()) < n) {
        int tries = 0;
        while (true) {
            double x = ux(rng);
            double y = uy(rng);
            Vec2 p{x, y};
            if (compatible(pts, p, dirs, min_dist)) {
                pts.push_back(p);
                break;
            }
            if (++tries == budget) throw Error(ErrorCode::InvalidArgument, "rejection budget exhausted");
        }
    }
    return pts;
}

PointSet perturb(PointSet points, const DirectionSet& dirs, double eps, std::uint64_t seed) {
    if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int round = 0; round < 100; ++round) {
        auto violations = check_general_position(points, dirs, kDefaultEps);
        if (violations.empty()) return points;
        std::vector<int> movers;
        for (const auto& v : violations) movers.push_back(std::max(v.p, v.q));
        std::sort(movers.begin(), movers.end());
        movers.erase(std::unique(movers.begin(), movers.end()), movers.end());
        for (int i : movers) {
            double r = eps * (0.5 + 0.5 * unit(rng));
            double a = kTwoPi * unit(rng);
            points[i] = points[i] + Vec2{r * std::cos(a), r * std::sin(a)};
        }
    }
    if (check_general_position(points, dirs, kDefaultEps).empty()) return points;
    throw Error(ErrorCode::GeneralPosition, "perturbation did not reach general position in 100 rounds");
}

}  // namespace monotree
