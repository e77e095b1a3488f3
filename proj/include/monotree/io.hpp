#pragma once

// JSON instance/result files and SVG figures.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monotree/geom.hpp"
#include "monotree/tree.hpp"

namespace monotree {

inline constexpr int kFormatVersion = 1;

struct InstanceData {
    PointSet points;
    std::optional<DirectionSet> directions;
    std::string name;
    std::optional<std::uint64_t> seed;
};

struct CertificateEntry {
    int a = 0;
    int b = 0;
    double direction_deg = 0.0;
};

struct ResultData {
    std::vector<Edge> edges;
    double length = 0.0;
    std::vector<double> directions_deg;
    std::vector<CertificateEntry> certificate;
    int max_degree = 0;
    int leaf_count = 0;
    std::string algorithm;
    std::size_t combos = 0;
    double wall_ms = 0.0;
};

/// Rounds to `digits` significant decimal digits.
double round_significant(double v, int digits = 12);

/// Throw Error(Parse) naming the line or field at fault.
InstanceData parse_instance(const std::string& text);
ResultData parse_result(const std::string& text);

std::string format_instance(const InstanceData& inst);
std::string format_result(const ResultData& res);

ResultData make_result(const GeoTree& tree, const DirectionSet& dirs, const MonotoneVerdict& verdict,
                       const std::string& algorithm, std::size_t combos = 0, double wall_ms = 0.0);

/// Re-checks every certificate entry with is_d_monotone on the tree path.
bool certificate_valid(const GeoTree& tree, const ResultData& res, double eps = kDefaultEps);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

struct SvgOptions {
    double size = 480.0;
    int fan_apex = -1;  // point index for the wedge-fan overlay, -1 for none
    bool labels = true;
};

/// Deterministic drawing: points as labeled disks, tree edges as segments,
/// optionally the boundary rays of the wedge fan at one point.
std::string render_svg(const PointSet& points, const std::vector<Edge>& edges,
                       const std::optional<DirectionSet>& dirs = std::nullopt, const SvgOptions& options = {});

}  // namespace monotree
