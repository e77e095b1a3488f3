#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "monotree/io.hpp"

namespace monotree {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

}  // namespace

std::string render_svg(const PointSet& points, const std::vector<Edge>& edges, const std::optional<DirectionSet>& dirs,
                       const SvgOptions& options) {
    double minx = 0, maxx = 1, miny = 0, maxy = 1;
    if (!points.empty()) {
        minx = maxx = points[0].x;
        miny = maxy = points[0].y;
        for (const auto& p : points) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
    }
    double extent = std::max({maxx - minx, maxy - miny, 1e-9});
    const double margin = 0.08 * options.size;
    const double scale = (options.size - 2 * margin) / extent;
    auto sx = [&](double x) { return margin + (x - minx) * scale; };
    auto sy = [&](double y) { return options.size - margin - (y - miny) * scale; };
    const double r = std::max(2.0, options.size / 120.0);

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(options.size) + "\" height=\"" +
           num(options.size) + "\" viewBox=\"0 0 " + num(options.size) + " " + num(options.size) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (dirs && options.fan_apex >= 0 && options.fan_apex < static_cast<int>(points.size())) {
        WedgeFan fan(*dirs);
        Vec2 a = points[static_cast<std::size_t>(options.fan_apex)];
        double len = 2.0 * extent;
        for (double b : fan.boundaries()) {
            Vec2 end{a.x + len * std::cos(b), a.y + len * std::sin(b)};
            out += "<line class=\"ray\" x1=\"" + num(sx(a.x)) + "\" y1=\"" + num(sy(a.y)) + "\" x2=\"" +
                   num(sx(end.x)) + "\" y2=\"" + num(sy(end.y)) +
                   "\" stroke=\"#999\" stroke-dasharray=\"4 3\" stroke-width=\"1\"/>\n";
        }
    }
    for (const auto& e : edges) {
        if (e.a < 0 || e.b < 0 || e.a >= static_cast<int>(points.size()) || e.b >= static_cast<int>(points.size())) {
            continue;
        }
        const Vec2 p = points[static_cast<std::size_t>(e.a)], q = points[static_cast<std::size_t>(e.b)];
        out += "<line class=\"edge\" x1=\"" + num(sx(p.x)) + "\" y1=\"" + num(sy(p.y)) + "\" x2=\"" + num(sx(q.x)) +
               "\" y2=\"" + num(sy(q.y)) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        out += "<circle class=\"point\" cx=\"" + num(sx(points[i].x)) + "\" cy=\"" + num(sy(points[i].y)) +
               "\" r=\"" + num(r) + "\" fill=\"#1f5fbf\"/>\n";
        if (options.labels) {
            out += "<text x=\"" + num(sx(points[i].x) + r + 2) + "\" y=\"" + num(sy(points[i].y) - r - 2) +
                   "\" font-size=\"" + num(2.5 * r) + "\">" + std::to_string(i) + "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace monotree
