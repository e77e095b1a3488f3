#include "monotree/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "monotree/errors.hpp"

namespace monotree {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
    throw Error(ErrorCode::Parse, "field '" + field + "': " + what);
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                          ": malformed JSON");
    }
}

void check_version(const json& j) {
    if (!j.is_object()) field_error("<root>", "expected an object");
    if (!j.contains("version")) field_error("version", "missing");
    if (!j["version"].is_number_integer()) field_error("version", "expected an integer");
    int v = j["version"].get<int>();
    if (v != kFormatVersion) field_error("version", "unsupported version " + std::to_string(v));
}

double number_at(const json& j, const std::string& field) {
    if (!j.is_number()) field_error(field, "expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) field_error(field, "not finite");
    return v;
}

std::vector<double> number_list(const json& j, const std::string& field) {
    if (!j.is_array()) field_error(field, "expected a list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number_at(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

json rounded(double v) { return round_significant(v); }

}  // namespace

double round_significant(double v, int digits) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return std::strtod(buf, nullptr);
}

InstanceData parse_instance(const std::string& text) {
    json j = parse_json(text);
    check_version(j);
    InstanceData inst;
    if (!j.contains("points")) field_error("points", "missing");
    const json& pts = j["points"];
    if (!pts.is_array() || pts.empty()) field_error("points", "expected a non-empty list of [x, y]");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string f = "points[" + std::to_string(i) + "]";
        if (!pts[i].is_array() || pts[i].size() != 2) field_error(f, "expected [x, y]");
        inst.points.push_back({number_at(pts[i][0], f + "[0]"), number_at(pts[i][1], f + "[1]")});
    }
    if (j.contains("directions_deg") && !j["directions_deg"].is_null()) {
        auto degs = number_list(j["directions_deg"], "directions_deg");
        try {
            inst.directions = direction_set_from_degrees(degs);
        } catch (const Error& e) {
            field_error("directions_deg", e.what());
        }
    }
    if (j.contains("name")) {
        if (!j["name"].is_string()) field_error("name", "expected a string");
        inst.name = j["name"].get<std::string>();
    }
    if (j.contains("seed") && !j["seed"].is_null()) {
        if (!j["seed"].is_number_unsigned()) field_error("seed", "expected a non-negative integer");
        inst.seed = j["seed"].get<std::uint64_t>();
    }
    return inst;
}

std::string format_instance(const InstanceData& inst) {
    json j;
    j["version"] = kFormatVersion;
    if (!inst.name.empty()) j["name"] = inst.name;
    if (inst.seed) j["seed"] = *inst.seed;
    json pts = json::array();
    for (const auto& p : inst.points) pts.push_back({p.x, p.y});
    j["points"] = pts;
    if (inst.directions) {
        json ds = json::array();
        for (double d : inst.directions->degrees()) ds.push_back(rounded(d));
        j["directions_deg"] = ds;
    }
    return j.dump(2) + "\n";
}

ResultData make_result(const GeoTree& tree, const DirectionSet& dirs, const MonotoneVerdict& verdict,
                       const std::string& algorithm, std::size_t combos, double wall_ms) {
    ResultData r;
    r.edges = tree.edges();
    r.length = tree.length();
    r.directions_deg = dirs.degrees();
    for (const auto& w : verdict.certificate) {
        r.certificate.push_back({w.a, w.b, dirs[static_cast<std::size_t>(w.direction)].degrees()});
    }
    auto stats = tree_stats(tree);
    r.max_degree = stats.max_degree;
    r.leaf_count = stats.leaf_count;
    r.algorithm = algorithm;
    r.combos = combos;
    r.wall_ms = wall_ms;
    return r;
}

std::string format_result(const ResultData& res) {
    json j;
    j["version"] = kFormatVersion;
    json edges = json::array();
    for (const auto& e : res.edges) edges.push_back({e.a, e.b});
    j["edges"] = edges;
    j["length"] = rounded(res.length);
    json ds = json::array();
    for (double d : res.directions_deg) ds.push_back(rounded(d));
    j["directions_deg"] = ds;
    json cert = json::array();
    for (const auto& c : res.certificate) {
        cert.push_back({{"leaves", {c.a, c.b}}, {"direction_deg", rounded(c.direction_deg)}});
    }
    j["certificate"] = cert;
    j["stats"] = {{"max_degree", res.max_degree}, {"leaf_count", res.leaf_count}};
    j["solver"] = {{"algorithm", res.algorithm}, {"combos", res.combos}, {"wall_ms", rounded(res.wall_ms)}};
    return j.dump(2) + "\n";
}

ResultData parse_result(const std::string& text) {
    json j = parse_json(text);
    check_version(j);
    ResultData r;
    if (!j.contains("edges") || !j["edges"].is_array()) field_error("edges", "expected a list of [a, b]");
    const json& edges = j["edges"];
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string f = "edges[" + std::to_string(i) + "]";
        const json& e = edges[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
            field_error(f, "expected [a, b] with integer indices");
        }
        int a = e[0].get<int>(), b = e[1].get<int>();
        if (a < 0 || b < 0) field_error(f, "negative index");
        r.edges.push_back(Edge::make(a, b));
    }
    if (j.contains("length")) r.length = number_at(j["length"], "length");
    if (j.contains("directions_deg")) r.directions_deg = number_list(j["directions_deg"], "directions_deg");
    if (j.contains("certificate")) {
        const json& cert = j["certificate"];
        if (!cert.is_array()) field_error("certificate", "expected a list");
        for (std::size_t i = 0; i < cert.size(); ++i) {
            const std::string f = "certificate[" + std::to_string(i) + "]";
            const json& c = cert[i];
            if (!c.is_object() || !c.contains("leaves") || !c["leaves"].is_array() || c["leaves"].size() != 2 ||
                !c["leaves"][0].is_number_integer() || !c["leaves"][1].is_number_integer()) {
                field_error(f, "expected {\"leaves\": [a, b], \"direction_deg\": x}");
            }
            if (!c.contains("direction_deg")) field_error(f + ".direction_deg", "missing");
            r.certificate.push_back(
                {c["leaves"][0].get<int>(), c["leaves"][1].get<int>(), number_at(c["direction_deg"], f + ".direction_deg")});
        }
    }
    if (j.contains("stats") && j["stats"].is_object()) {
        r.max_degree = j["stats"].value("max_degree", 0);
        r.leaf_count = j["stats"].value("leaf_count", 0);
    }
    if (j.contains("solver") && j["solver"].is_object()) {
        r.algorithm = j["solver"].value("algorithm", std::string{});
        r.combos = j["solver"].value("combos", std::size_t{0});
        r.wall_ms = j["solver"].value("wall_ms", 0.0);
    }
    return r;
}

bool certificate_valid(const GeoTree& tree, const ResultData& res, double eps) {
    for (const auto& c : res.certificate) {
        if (c.a < 0 || c.b < 0 || c.a >= tree.size() || c.b >= tree.size()) return false;
        auto path = tree_path(tree, c.a, c.b);
        auto pts = path_points(tree, path);
        double rad = c.direction_deg * kPi / 180.0;
        Direction d = normalize_direction({std::cos(rad), std::sin(rad)});
        try {
            if (!is_d_monotone(pts, d, eps)) return false;
        } catch (const Error&) {
            return false;
        }
    }
    return true;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    out << text;
}

}  // namespace monotree
