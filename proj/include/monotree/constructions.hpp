#pragma once

// Instance generators: the star-forcing family S_k, random point sets in
// general position, and perturbation.

#include <algorithm>
#include <cstdint>
#include <optional>

#include "monotree/geom.hpp"

namespace monotree {

struct SkInstance {
    PointSet points;  // origin first, then v_0 .. v_{2k-1}
    DirectionSet directions;
    int k = 0;
};

/// Origin plus one unit-circle point per wedge, 2/3 of the way across it
/// counterclockwise. Directions at angles i*pi/k. Throws InvalidArgument for
/// odd or nonpositive k.
SkInstance gen_sk(int k);

/// 1 + sum_{i=1}^{k-1} 2 sin(pi i / 2k): length of the zigzag
/// v_{2k-1}, v_0, v_{2k-2}, v_1, ..., v_{k/2-1}, o that any non-star tree
/// must contain. It exceeds k, the length of the star edges it could be
/// swapped for.
double sk_path_length(int k);

struct Box {
    Vec2 lo{0.0, 0.0};
    Vec2 hi{1.0, 1.0};
    double size() const { return std::max(hi.x - lo.x, hi.y - lo.y); }
};

/// n uniform points in `box`, each resampled until it keeps D-general
/// position (when `dirs` is given) and stays 1e-6*box.size() away from the
/// others. Throws InvalidArgument when the rejection budget runs out.
PointSet gen_random(int n, std::uint64_t seed, const Box& box = {},
                    const std::optional<DirectionSet>& dirs = std::nullopt);

/// Moves only points involved in general-position violations, by at most
/// `eps` each round, until none remain. Throws GeneralPosition after 100
/// rounds.
PointSet perturb(PointSet points, const DirectionSet& dirs, double eps, std::uint64_t seed = 0);

}  // namespace monotree
