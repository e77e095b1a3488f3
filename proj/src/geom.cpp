#include "monotree/geom.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace monotree {

double wrap_angle(double a, double period) {
    double r = std::fmod(a, period);
    if (r < 0.0) r += period;
    if (r >= period) r -= period;
    return r;
}

double full_angle(Vec2 v) { return wrap_angle(std::atan2(v.y, v.x)); }

Direction Direction::from_angle(double radians) {
    Direction d;
    d.angle = wrap_angle(radians, kPi);
    d.ux = std::cos(d.angle);
    d.uy = std::sin(d.angle);
    return d;
}

Direction normalize_direction(Vec2 v) {
    if (!(std::isfinite(v.x) && std::isfinite(v.y)) || (v.x == 0.0 && v.y == 0.0)) {
        throw Error(ErrorCode::InvalidDirection, "direction vector must be finite and nonzero");
    }
    double a = std::atan2(v.y, v.x);
    if (a < 0.0) a += kPi;
    a = wrap_angle(a, kPi);
    // Keep the exact input components (scaled) rather than cos/sin of the angle.
    double n = norm(v);
    Direction d;
    d.angle = a;
    d.ux = v.x / n;
    d.uy = v.y / n;
    if (d.uy < 0.0 || (d.uy == 0.0 && d.ux < 0.0)) {
        d.ux = -d.ux;
        d.uy = -d.uy;
    }
    return d;
}

std::vector<double> DirectionSet::degrees() const {
    std::vector<double> out;
    out.reserve(dirs_.size());
    for (const auto& d : dirs_) out.push_back(d.degrees());
    return out;
}

namespace {

constexpr double kDirectionEps = 1e-12;

}  // namespace

DirectionSet make_direction_set(std::span<const Vec2> vs) {
    if (vs.empty()) throw Error(ErrorCode::InvalidArgument, "direction set must not be empty");
    std::vector<Direction> dirs;
    dirs.reserve(vs.size());
    for (Vec2 v : vs) dirs.push_back(normalize_direction(v));
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        for (std::size_t j = i + 1; j < dirs.size(); ++j) {
            if (std::abs(cross(dirs[i].vec(), dirs[j].vec())) <= kDirectionEps) {
                std::ostringstream os;
                os << "directions " << i << " and " << j << " are equal or opposite";
                throw Error(ErrorCode::OppositeDirections, os.str());
            }
        }
    }
    std::sort(dirs.begin(), dirs.end(), [](const Direction& a, const Direction& b) { return a.angle < b.angle; });
    DirectionSet set;
    set.dirs_ = std::move(dirs);
    return set;
}

DirectionSet direction_set_from_radians(std::span<const double> radians) {
    std::vector<Vec2> vs;
    vs.reserve(radians.size());
    for (double a : radians) {
        vs.push_back(Direction::from_angle(a).vec());
    }
    return make_direction_set(vs);
}

DirectionSet direction_set_from_degrees(std::span<const double> degrees) {
    std::vector<Vec2> vs;
    vs.reserve(degrees.size());
    for (double deg : degrees) {
        if (!std::isfinite(deg)) throw Error(ErrorCode::InvalidDirection, "direction angle must be finite");
        // Exact axis directions for multiples of 90 degrees.
        double r = wrap_angle(deg, 180.0);
        if (r == 0.0) vs.push_back({1.0, 0.0});
        else if (r == 90.0) vs.push_back({0.0, 1.0});
        else vs.push_back({std::cos(r * kPi / 180.0), std::sin(r * kPi / 180.0)});
    }
    return make_direction_set(vs);
}

std::vector<PositionViolation> check_general_position(const PointSet& points, const DirectionSet& dirs,
                                                      double eps) {
    std::vector<PositionViolation> out;
    for (std::size_t p = 0; p < points.size(); ++p) {
        for (std::size_t q = p + 1; q < points.size(); ++q) {
            Vec2 delta = points[q] - points[p];
            for (std::size_t d = 0; d < dirs.size(); ++d) {
                if (orthogonal_within(delta, dirs[d], eps)) {
                    out.push_back({static_cast<int>(p), static_cast<int>(q), static_cast<int>(d)});
                }
            }
        }
    }
    return out;
}

std::vector<int> projection_order(const PointSet& points, const Direction& d, double eps) {
    std::vector<int> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> proj(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) proj[i] = dot(points[i], d.vec());
    std::sort(order.begin(), order.end(), [&](int a, int b) { return proj[a] < proj[b] || (proj[a] == proj[b] && a < b); });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (orthogonal_within(points[order[i]] - points[order[i - 1]], d, eps)) {
            std::ostringstream os;
            os << "points " << order[i - 1] << " and " << order[i] << " lie on a line orthogonal to direction "
               << d.degrees() << " deg";
            throw Error(ErrorCode::GeneralPosition, os.str());
        }
    }
    return order;
}

bool Sector::contains(double angle) const {
    if (empty) return false;
    return wrap_angle(angle - start) <= extent;
}

namespace {

struct SectorIdx {
    Sector sector;
    std::size_t first = 0;  // index (into the sorted angles) of the sector start
    std::size_t last = 0;   // index of the sector end
};

SectorIdx minimal_sector_sorted(const std::vector<double>& sorted) {
    SectorIdx r;
    if (sorted.empty()) return r;
    r.sector.empty = false;
    std::size_t m = sorted.size();
    if (m == 1) {
        r.sector.start = sorted[0];
        r.sector.extent = 0.0;
        return r;
    }
    double best_gap = -1.0;
    std::size_t best = 0;  // largest gap lies between sorted[best] and sorted[best+1]
    for (std::size_t i = 0; i < m; ++i) {
        double gap = (i + 1 < m) ? sorted[i + 1] - sorted[i] : sorted[0] + kTwoPi - sorted[m - 1];
        if (gap > best_gap) {
            best_gap = gap;
            best = i;
        }
    }
    r.first = (best + 1) % m;
    r.last = best;
    r.sector.start = sorted[r.first];
    r.sector.extent = kTwoPi - best_gap;
    return r;
}

}  // namespace

Sector minimal_sector(std::vector<double> angles) {
    for (double& a : angles) a = wrap_angle(a);
    std::sort(angles.begin(), angles.end());
    return minimal_sector_sorted(angles).sector;
}

namespace {

std::vector<double> edge_angles(std::span<const Vec2> path) {
    std::vector<double> angles;
    if (path.size() < 2) return angles;
    angles.reserve(path.size() - 1);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        Vec2 e = path[i + 1] - path[i];
        if (e.x == 0.0 && e.y == 0.0) {
            std::ostringstream os;
            os << "path repeats a point at positions " << i << " and " << i + 1;
            throw Error(ErrorCode::DegenerateEdge, os.str());
        }
        angles.push_back(full_angle(e));
    }
    return angles;
}

}  // namespace

Sector sector_of_directions(std::span<const Vec2> path) {
    auto angles = edge_angles(path);
    std::sort(angles.begin(), angles.end());
    return minimal_sector_sorted(angles).sector;
}

bool is_monotone_path(std::span<const Vec2> path) {
    Sector s = sector_of_directions(path);
    return s.empty || s.extent < kPi;
}

bool is_d_monotone(std::span<const Vec2> path, const Direction& d, double eps, Orientation orientation) {
    if (path.size() < 2) return true;
    int sign = 0;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        Vec2 e = path[i + 1] - path[i];
        if (e.x == 0.0 && e.y == 0.0) {
            throw Error(ErrorCode::DegenerateEdge, "path repeats a point");
        }
        if (orthogonal_within(e, d, eps)) {
            std::ostringstream os;
            os << "path positions " << i << " and " << i + 1 << " tie in projection onto direction " << d.degrees()
               << " deg";
            throw Error(ErrorCode::GeneralPosition, os.str());
        }
        int s = dot(e, d.vec()) > 0.0 ? 1 : -1;
        if (sign == 0) sign = s;
        else if (s != sign) ok = false;
    }
    if (!ok) return false;
    if (orientation == Orientation::Increasing) return sign > 0;
    if (orientation == Orientation::Decreasing) return sign < 0;
    return true;
}

bool Arc::contains(double angle) const {
    if (empty()) return false;
    double t = wrap_angle(angle - start, kPi);
    if (width >= kPi) return t > 0.0;
    return t > 0.0 && t < width;
}

Arc monotone_direction_arc(std::span<const Vec2> path) {
    Sector s = sector_of_directions(path);
    if (s.empty) return Arc{0.0, kPi};
    if (s.extent >= kPi) return Arc{0.0, 0.0};
    // d works iff every edge lies strictly inside the half-circle around d
    // (or around -d): d in (end - pi/2, start + pi/2) modulo pi.
    Arc arc;
    arc.start = wrap_angle(s.start + s.extent - kPi / 2.0, kPi);
    arc.width = kPi - s.extent;
    return arc;
}

WedgeFan::WedgeFan(DirectionSet dirs) : dirs_(std::move(dirs)) {
    struct B {
        double angle;
        int dir;
    };
    std::vector<B> bs;
    for (int i = 0; i < dirs_.k(); ++i) {
        bs.push_back({wrap_angle(dirs_[i].angle + kPi / 2.0), i});
        bs.push_back({wrap_angle(dirs_[i].angle + 3.0 * kPi / 2.0), i});
    }
    std::sort(bs.begin(), bs.end(), [](const B& a, const B& b) { return a.angle < b.angle; });
    for (const auto& b : bs) {
        boundaries_.push_back(b.angle);
        boundary_dir_.push_back(b.dir);
    }
}

int WedgeFan::index_of_angle(double angle) const {
    double a = wrap_angle(angle);
    auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), a);
    if (it == boundaries_.begin()) return wedge_count() - 1;
    return static_cast<int>(it - boundaries_.begin()) - 1;
}

int WedgeFan::index_of(Vec2 v, double eps) const {
    if (v.x == 0.0 && v.y == 0.0) throw Error(ErrorCode::InvalidDirection, "zero vector has no wedge");
    for (const auto& d : dirs_) {
        if (orthogonal_within(v, d, eps)) {
            std::ostringstream os;
            os << "vector (" << v.x << ", " << v.y << ") lies on a wedge boundary orthogonal to " << d.degrees()
               << " deg";
            throw Error(ErrorCode::WedgeBoundary, os.str());
        }
    }
    return index_of_angle(full_angle(v));
}

bool WedgeSpan::contains(int j) const {
    if (len == 0) return false;
    int off = ((j - start) % wedge_count + wedge_count) % wedge_count;
    return off < len;
}

std::uint64_t WedgeSpan::mask() const {
    std::uint64_t m = 0;
    for (int i = 0; i < len; ++i) m |= std::uint64_t{1} << ((start + i) % wedge_count);
    return m;
}

WedgeSpan WedgeSpan::opposite() const {
    if (len == 0) return *this;
    return {(start + wedge_count / 2) % wedge_count, len, wedge_count};
}

WedgeSpan minimal_cover(std::uint64_t mask, int wedge_count) {
    WedgeSpan best{0, 0, wedge_count};
    if (mask == 0) return best;
    int best_len = wedge_count + 1;
    for (int s = 0; s < wedge_count; ++s) {
        if (!((mask >> s) & 1u)) continue;
        int len = 0;
        for (int off = 0; off < wedge_count; ++off) {
            if ((mask >> ((s + off) % wedge_count)) & 1u) len = off + 1;
        }
        if (len < best_len) {
            best_len = len;
            best.start = s;
        }
    }
    best.len = best_len;
    return best;
}

WedgeSpan span_of_path(std::span<const Vec2> path, const WedgeFan& fan, SpanMode mode, double eps) {
    WedgeSpan span{0, 0, fan.wedge_count()};
    if (path.size() < 2) return span;
    std::vector<double> angles = edge_angles(path);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) (void)fan.index_of(path[i + 1] - path[i], eps);
    std::sort(angles.begin(), angles.end());
    SectorIdx s = minimal_sector_sorted(angles);
    int first = fan.index_of_angle(angles[s.first]);
    int last = fan.index_of_angle(angles[s.last]);
    span.start = first;
    span.len = fan.mod(last - first) + 1;
    if (s.sector.extent >= kPi && span.len <= fan.k()) span.len = fan.k() + 1;
    if (mode == SpanMode::Strict && span.len > fan.k()) {
        throw Error(ErrorCode::NonMonotone, "path is not monotone with respect to any direction of the set");
    }
    return span;
}

bool span_admits_direction(const WedgeSpan& span, const WedgeFan& fan, int dir) {
    if (span.len > fan.k()) return false;
    for (int i = 1; i < span.len; ++i) {
        if (fan.boundary_direction(span.start + i) == dir) return false;
    }
    return true;
}

}  // namespace monotree
