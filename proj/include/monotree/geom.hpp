#pragma once

// Planar primitives: directions, projections, sectors of directions,
// monotonicity predicates and wedge fans.
//
// Directions are canonicalized to an angle in [0, pi): a path is monotone
// with respect to d exactly when it is monotone with respect to -d.
// All sign tests use one relative tolerance: a vector `v` counts as
// orthogonal to a direction `d` when |<v, d>| <= eps * |v|.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monotree/errors.hpp"

namespace monotree {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kDefaultEps = 1e-9;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(b - a); }

/// Angle of a nonzero vector, in [0, 2pi).
double full_angle(Vec2 v);

/// Reduces an angle into [0, period).
double wrap_angle(double a, double period = kTwoPi);

/// A point set; the index of a point is its position in the vector.
using PointSet = std::vector<Vec2>;

struct Direction {
    double angle = 0.0;  // canonical, in [0, pi)
    double ux = 1.0;
    double uy = 0.0;

    Vec2 vec() const { return {ux, uy}; }
    static Direction from_angle(double radians);
    double degrees() const { return angle * 180.0 / kPi; }
};

/// Canonical representative of v or -v. Throws InvalidDirection on v = 0.
Direction normalize_direction(Vec2 v);

/// Pairwise non-opposite directions sorted strictly by canonical angle.
class DirectionSet {
public:
    DirectionSet() = default;

    std::size_t size() const { return dirs_.size(); }
    int k() const { return static_cast<int>(dirs_.size()); }
    bool empty() const { return dirs_.empty(); }
    const Direction& operator[](std::size_t i) const { return dirs_[i]; }
    auto begin() const { return dirs_.begin(); }
    auto end() const { return dirs_.end(); }

    std::vector<double> degrees() const;

    friend DirectionSet make_direction_set(std::span<const Vec2> vs);

private:
    std::vector<Direction> dirs_;
};

/// Throws OppositeDirections naming the offending pair when two inputs are
/// equal or opposite, InvalidArgument when `vs` is empty.
DirectionSet make_direction_set(std::span<const Vec2> vs);
DirectionSet direction_set_from_radians(std::span<const double> radians);
DirectionSet direction_set_from_degrees(std::span<const double> degrees);

/// True when the segment with offset `delta` is (nearly) orthogonal to `d`,
/// i.e. both endpoints lie on a common line orthogonal to `d`.
inline bool orthogonal_within(Vec2 delta, const Direction& d, double eps) {
    return std::abs(dot(delta, d.vec())) <= eps * norm(delta);
}

struct PositionViolation {
    int p = 0;
    int q = 0;
    int direction = 0;  // index into the DirectionSet
};

/// Every (p, q, d) with p < q lying on a common line orthogonal to d.
std::vector<PositionViolation> check_general_position(const PointSet& points, const DirectionSet& dirs,
                                                      double eps = kDefaultEps);

/// Indices sorted by strictly increasing projection onto d.
std::vector<int> projection_order(const PointSet& points, const Direction& d, double eps = kDefaultEps);

struct Sector {
    double start = 0.0;   // [0, 2pi)
    double extent = 0.0;  // ccw width
    bool empty = true;

    bool contains(double angle) const;
};

/// Minimal ccw arc containing every angle (complement of the largest gap).
Sector minimal_sector(std::vector<double> angles);

/// Sector of directions of the oriented edges of a path.
Sector sector_of_directions(std::span<const Vec2> path);

bool is_monotone_path(std::span<const Vec2> path);

enum class Orientation { Either, Increasing, Decreasing };

/// Strict monotonicity of the projections onto d. A projection tie between
/// consecutive vertices throws GeneralPosition.
bool is_d_monotone(std::span<const Vec2> path, const Direction& d, double eps = kDefaultEps,
                   Orientation orientation = Orientation::Either);

/// Open interval of canonical direction angles, possibly wrapping past pi.
struct Arc {
    double start = 0.0;  // [0, pi)
    double width = 0.0;  // (0, pi]; 0 means empty

    bool empty() const { return width <= 0.0; }
    double end() const { return start + width; }
    bool contains(double angle) const;
};

/// Directions d for which the (monotone) path is d-monotone.
Arc monotone_direction_arc(std::span<const Vec2> path);

/// The 2k wedges around an apex cut by the lines orthogonal to each d.
/// Wedge j spans [boundary(j), boundary(j+1)); wedge 0 starts at the
/// smallest boundary angle >= 0, and wedge j + k is opposite to wedge j.
class WedgeFan {
public:
    explicit WedgeFan(DirectionSet dirs);

    int k() const { return dirs_.k(); }
    int wedge_count() const { return 2 * dirs_.k(); }
    double boundary(int j) const { return boundaries_[static_cast<std::size_t>(mod(j))]; }
    const std::vector<double>& boundaries() const { return boundaries_; }
    const DirectionSet& directions() const { return dirs_; }
    int mod(int j) const {
        int m = wedge_count();
        return ((j % m) + m) % m;
    }

    /// Index of the wedge containing the ray of v. Throws WedgeBoundary when
    /// v lies on a boundary ray, InvalidDirection when v = 0.
    int index_of(Vec2 v, double eps = kDefaultEps) const;

    /// Index of the wedge containing the ray at `angle` (no boundary test).
    int index_of_angle(double angle) const;

    /// Direction index whose orthogonal line carries boundary j.
    int boundary_direction(int j) const { return boundary_dir_[static_cast<std::size_t>(mod(j))]; }

private:
    DirectionSet dirs_;
    std::vector<double> boundaries_;
    std::vector<int> boundary_dir_;
};

/// Consecutive wedges start, start+1, ..., start+len-1 (mod 2k).
struct WedgeSpan {
    int start = 0;
    int len = 0;
    int wedge_count = 0;

    bool empty() const { return len == 0; }
    bool contains(int j) const;
    std::uint64_t mask() const;
    WedgeSpan opposite() const;
    int last() const { return (start + len - 1) % wedge_count; }
    friend bool operator==(const WedgeSpan&, const WedgeSpan&) = default;
};

/// Smallest cyclic interval of wedges covering the set bits of `mask`;
/// ties are broken towards the lowest start.
WedgeSpan minimal_cover(std::uint64_t mask, int wedge_count);

enum class SpanMode { Strict, Diagnostic };

/// Wedge set of a directed path: the wedges between the wedge of the first
/// and the wedge of the last edge of its sector. Strict mode throws
/// NonMonotone when the span exceeds k wedges.
WedgeSpan span_of_path(std::span<const Vec2> path, const WedgeFan& fan, SpanMode mode = SpanMode::Strict,
                       double eps = kDefaultEps);

/// True when the line orthogonal to direction `dir` misses the interior of
/// the span, i.e. neither of its boundary rays is interior to the span.
bool span_admits_direction(const WedgeSpan& span, const WedgeFan& fan, int dir);

}  // namespace monotree
