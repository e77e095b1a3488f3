#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "monotree/constructions.hpp"
#include "monotree/errors.hpp"
#include "monotree/io.hpp"
#include "monotree/solvers.hpp"

using namespace monotree;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Common {
    std::string input = "-";
    std::string out;
    std::string svg;
    std::string dirs;
    double eps = kDefaultEps;
    bool perturb = false;
    std::uint64_t seed = 1;
    int threads = 0;
    int cap = kDefaultOracleCap;
    bool cap_override = false;
    int k = 2;
};

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    }
    return read_text_file(path);
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_text_file(path, text);
    }
}

std::vector<double> parse_degrees(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            double v = std::stod(item, &used);
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::Parse, "--dirs: '" + item + "' is not a number");
        }
    }
    if (out.empty()) throw Error(ErrorCode::Parse, "--dirs: empty list");
    return out;
}

DirectionSet resolve_dirs(const Common& c, const InstanceData& inst) {
    if (!c.dirs.empty()) {
        try {
            return direction_set_from_degrees(parse_degrees(c.dirs));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::Parse) throw;
            throw Error(ErrorCode::Parse, std::string("--dirs: ") + e.what());
        }
    }
    if (inst.directions) return *inst.directions;
    throw Error(ErrorCode::Parse, "no directions: pass --dirs or set directions_deg in the instance");
}

// Exit 1 naming the pair unless --perturb was given.
PointSet prepare_points(const Common& c, const PointSet& pts, const DirectionSet& dirs) {
    auto violations = check_general_position(pts, dirs, c.eps);
    if (violations.empty()) return pts;
    if (c.perturb) {
        double lo = pts[0].x, hi = pts[0].x;
        for (const auto& p : pts) {
            lo = std::min({lo, p.x, p.y});
            hi = std::max({hi, p.x, p.y});
        }
        double scale = std::max(hi - lo, 1.0);
        return perturb(pts, dirs, 1e-6 * scale, c.seed);
    }
    const auto& v = violations.front();
    throw Error(ErrorCode::GeneralPosition,
                "points " + std::to_string(v.p) + " and " + std::to_string(v.q) +
                    " lie on a line orthogonal to direction " +
                    std::to_string(round_significant(dirs[static_cast<std::size_t>(v.direction)].degrees(), 6)) +
                    " deg; rerun with --perturb");
}

void write_outputs(const Common& c, const PointSet& pts, const DirectionSet& dirs, const ResultData& res) {
    emit(c.out, format_result(res));
    if (!c.svg.empty()) write_text_file(c.svg, render_svg(pts, res.edges, dirs));
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int run_check(const Common& c, const std::string& result_path) {
    InstanceData inst = parse_instance(read_input(c.input));
    ResultData res = parse_result(read_text_file(result_path));
    DirectionSet dirs;
    if (!c.dirs.empty() || inst.directions) {
        dirs = resolve_dirs(c, inst);
    } else if (!res.directions_deg.empty()) {
        dirs = direction_set_from_degrees(res.directions_deg);
    } else {
        throw Error(ErrorCode::Parse, "no directions in --dirs, instance or result");
    }
    GeoTree tree;
    try {
        tree = GeoTree::build(inst.points, res.edges);
    } catch (const Error& e) {
        std::cout << "invalid tree: " << e.what() << "\n";
        return kExitFailed;
    }
    auto naive = check_monotone_naive(tree, dirs, c.eps);
    auto ch = check_monotone_characterized(tree, dirs, c.eps);
    bool cert = certificate_valid(tree, res, c.eps);
    std::cout << "naive: " << (naive.monotone ? "monotone" : "not monotone");
    if (naive.counterexample) {
        std::cout << " (leaves " << naive.counterexample->first << " and " << naive.counterexample->second << ")";
    }
    std::cout << "\ncharacterized: " << (ch.monotone ? "monotone" : "not monotone") << "\n";
    std::cout << "certificate: " << (res.certificate.empty() ? "absent" : cert ? "valid" : "invalid") << "\n";
    if (naive.monotone != ch.monotone) {
        std::cout << "checkers disagree\n";
        return kExitFailed;
    }
    return naive.monotone && cert ? kExitOk : kExitFailed;
}

int run_mmst(const Common& c) {
    InstanceData inst = parse_instance(read_input(c.input));
    DirectionSet dirs = resolve_dirs(c, inst);
    PointSet pts = prepare_points(c, inst.points, dirs);
    SolverOptions opt;
    opt.eps = c.eps;
    opt.threads = c.threads;
    auto rep = solve_mmst_fixed(pts, dirs, opt);
    write_outputs(c, pts, dirs, make_result(*rep.tree, dirs, rep.certificate, rep.algorithm, rep.counters.combos,
                                            rep.wall_ms));
    return kExitOk;
}

int run_mmst_k(const Common& c) {
    InstanceData inst = parse_instance(read_input(c.input));
    SolverOptions opt;
    opt.eps = c.eps;
    opt.threads = c.threads;
    auto r = solve_mmst_k(inst.points, c.k, opt);
    write_outputs(c, inst.points, r.directions,
                  make_result(*r.report.tree, r.directions, r.report.certificate, r.report.algorithm,
                              r.report.counters.combos, r.report.wall_ms));
    return kExitOk;
}

int run_k1(const Common& c) {
    InstanceData inst = parse_instance(read_input(c.input));
    auto t0 = std::chrono::steady_clock::now();
    auto r = solve_k1(inst.points, SweepOptions{false, c.eps});
    double ms = ms_since(t0);
    double angle = r.direction.angle;
    auto dirs = direction_set_from_radians(std::span<const double>(&angle, 1));
    auto verdict = check_monotone_naive(r.tree, dirs, c.eps);
    write_outputs(c, inst.points, dirs, make_result(r.tree, dirs, verdict, "k1-sweep", r.events, ms));
    return kExitOk;
}

int run_oracle(const Common& c) {
    InstanceData inst = parse_instance(read_input(c.input));
    DirectionSet dirs = resolve_dirs(c, inst);
    PointSet pts = prepare_points(c, inst.points, dirs);
    auto t0 = std::chrono::steady_clock::now();
    auto r = oracle_fixed(pts, dirs, c.cap, c.cap_override, c.eps);
    double ms = ms_since(t0);
    if (!r.tree) {
        std::cerr << "no D-monotone spanning tree\n";
        return kExitFailed;
    }
    auto verdict = check_monotone_naive(*r.tree, dirs, c.eps);
    write_outputs(c, pts, dirs, make_result(*r.tree, dirs, verdict, r.unique ? "oracle (unique)" : "oracle", r.trees, ms));
    return kExitOk;
}

int run_oracle_k(const Common& c) {
    InstanceData inst = parse_instance(read_input(c.input));
    auto t0 = std::chrono::steady_clock::now();
    auto r = oracle_k(inst.points, c.k, c.cap, c.cap_override);
    double ms = ms_since(t0);
    if (!r.tree) {
        std::cerr << "no tree with " << c.k << " directions\n";
        return kExitFailed;
    }
    auto verdict = check_monotone_naive(*r.tree, r.directions, c.eps);
    write_outputs(c, inst.points, r.directions, make_result(*r.tree, r.directions, verdict, "oracle-k", r.trees, ms));
    return kExitOk;
}

int run_mst(const Common& c) {
    InstanceData inst = parse_instance(read_input(c.input));
    auto t0 = std::chrono::steady_clock::now();
    GeoTree t = euclidean_mst(inst.points);
    double ms = ms_since(t0);
    ResultData res;
    res.edges = t.edges();
    res.length = t.length();
    auto stats = tree_stats(t);
    res.max_degree = stats.max_degree;
    res.leaf_count = stats.leaf_count;
    res.algorithm = "euclidean-mst";
    res.wall_ms = ms;
    emit(c.out, format_result(res));
    if (!c.svg.empty()) write_text_file(c.svg, render_svg(inst.points, res.edges));
    return kExitOk;
}

int run_render(const Common& c, const std::string& result_path, int fan_apex) {
    InstanceData inst = parse_instance(read_input(c.input));
    std::vector<Edge> edges;
    std::optional<DirectionSet> dirs = inst.directions;
    if (!result_path.empty()) {
        ResultData res = parse_result(read_text_file(result_path));
        edges = res.edges;
        if (!dirs && !res.directions_deg.empty()) dirs = direction_set_from_degrees(res.directions_deg);
    }
    if (!c.dirs.empty()) dirs = resolve_dirs(c, inst);
    SvgOptions opt;
    opt.fan_apex = fan_apex;
    std::string svg = render_svg(inst.points, edges, dirs, opt);
    emit(!c.svg.empty() ? c.svg : c.out, svg);
    return kExitOk;
}

int run_bench(const Common& c, const std::vector<std::string>& files) {
    std::ostringstream csv;
    csv << "instance,algorithm,n,k,length,mst_length,ratio,runtime_ms\n";
    auto row = [&](const std::string& name, const std::string& algo, std::size_t n, int k, double len, double mst,
                   double ms) {
        char buf[256];
        std::snprintf(buf, sizeof buf, ",%s,%zu,%d,%.12g,%.12g,%.12g,%.3f\n", algo.c_str(), n, k, len, mst,
                      mst > 0 ? len / mst : 1.0, ms);
        csv << name << buf;
    };
    for (const auto& file : files) {
        InstanceData inst = parse_instance(read_text_file(file));
        const std::string name = inst.name.empty() ? file : inst.name;
        const std::size_t n = inst.points.size();
        auto t0 = std::chrono::steady_clock::now();
        const double mst = euclidean_mst(inst.points).length();
        row(name, "mst", n, 0, mst, mst, ms_since(t0));

        t0 = std::chrono::steady_clock::now();
        auto k1 = solve_k1(inst.points);
        row(name, "k1", n, 1, k1.length, mst, ms_since(t0));

        std::optional<DirectionSet> dirs;
        if (!c.dirs.empty() || inst.directions) dirs = resolve_dirs(c, inst);
        if (dirs && check_general_position(inst.points, *dirs, c.eps).empty()) {
            SolverOptions opt;
            opt.eps = c.eps;
            opt.threads = c.threads;
            t0 = std::chrono::steady_clock::now();
            auto rep = solve_mmst_fixed(inst.points, *dirs, opt);
            row(name, "mmst", n, dirs->k(), rep.length, mst, ms_since(t0));
            if (static_cast<int>(n) <= c.cap || c.cap_override) {
                t0 = std::chrono::steady_clock::now();
                auto o = oracle_fixed(inst.points, *dirs, c.cap, c.cap_override, c.eps);
                if (o.tree) row(name, "oracle", n, dirs->k(), o.length, mst, ms_since(t0));
            }
        }
    }
    emit(c.out, csv.str());
    return kExitOk;
}

int run_gen_sk(const Common& c) {
    SkInstance s = gen_sk(c.k);
    InstanceData inst;
    inst.points = s.points;
    inst.directions = s.directions;
    inst.name = "S_" + std::to_string(c.k);
    emit(c.out, format_instance(inst));
    return kExitOk;
}

int run_gen_random(const Common& c, int n, double box) {
    std::optional<DirectionSet> dirs;
    if (!c.dirs.empty()) dirs = resolve_dirs(c, InstanceData{});
    InstanceData inst;
    inst.points = gen_random(n, c.seed, Box{{0.0, 0.0}, {box, box}}, dirs);
    inst.directions = dirs;
    inst.name = "random-n" + std::to_string(n) + "-s" + std::to_string(c.seed);
    inst.seed = c.seed;
    emit(c.out, format_instance(inst));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum-length monotone spanning trees for a fixed or free set of directions"};
    app.require_subcommand(1);
    Common c;
    std::string result_path;
    std::vector<std::string> bench_files;
    int gen_n = 8;
    double gen_box = 1.0;
    int fan_apex = -1;

    auto add_input = [&](CLI::App* sub) { sub->add_option("instance", c.input, "Instance JSON ('-' for stdin)"); };
    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", c.out, "Output path (default stdout)");
        sub->add_option("--svg", c.svg, "Also write an SVG drawing");
    };
    auto add_dirs = [&](CLI::App* sub) {
        sub->add_option("--dirs", c.dirs, "Comma-separated direction angles in degrees");
        sub->add_option("--eps", c.eps, "Orthogonality tolerance")->check(CLI::PositiveNumber);
    };
    auto add_solver = [&](CLI::App* sub) {
        sub->add_flag("--perturb", c.perturb, "Jitter points until they are in general position");
        sub->add_option("--seed", c.seed, "Seed for --perturb");
        sub->add_option("--threads", c.threads, "Worker threads (default MONOTREE_THREADS or all cores)")
            ->check(CLI::NonNegativeNumber);
    };
    auto add_cap = [&](CLI::App* sub) {
        sub->add_option("--cap", c.cap, "Largest instance the brute force accepts")->check(CLI::PositiveNumber);
        sub->add_flag("--cap-override", c.cap_override, "Ignore --cap");
    };

    auto* check = app.add_subcommand("check", "Run both monotonicity checkers on a tree");
    add_input(check);
    check->add_option("result", result_path, "Result JSON holding the tree")->required();
    add_dirs(check);

    auto* mmst = app.add_subcommand("mmst", "Shortest D-monotone spanning tree for fixed directions");
    add_input(mmst);
    add_dirs(mmst);
    add_solver(mmst);
    add_out(mmst);

    auto* mmst_k = app.add_subcommand("mmst-k", "Shortest monotone spanning tree using k free directions");
    add_input(mmst_k);
    mmst_k->add_option("--k", c.k, "Number of directions")->check(CLI::PositiveNumber);
    mmst_k->add_option("--eps", c.eps, "Orthogonality tolerance")->check(CLI::PositiveNumber);
    mmst_k->add_option("--threads", c.threads, "Worker threads")->check(CLI::NonNegativeNumber);
    add_out(mmst_k);

    auto* k1 = app.add_subcommand("k1", "Best single direction by rotational sweep");
    add_input(k1);
    add_out(k1);

    auto* oracle = app.add_subcommand("oracle", "Brute force over all spanning trees, fixed directions");
    add_input(oracle);
    add_dirs(oracle);
    add_cap(oracle);
    oracle->add_flag("--perturb", c.perturb, "Jitter points until they are in general position");
    oracle->add_option("--seed", c.seed, "Seed for --perturb");
    add_out(oracle);

    auto* oracle_k_cmd = app.add_subcommand("oracle-k", "Brute force over all spanning trees, k free directions");
    add_input(oracle_k_cmd);
    oracle_k_cmd->add_option("--k", c.k, "Number of directions")->check(CLI::PositiveNumber);
    add_cap(oracle_k_cmd);
    add_out(oracle_k_cmd);

    auto* mst = app.add_subcommand("mst", "Euclidean minimum spanning tree");
    add_input(mst);
    add_out(mst);

    auto* gen = app.add_subcommand("gen", "Generate an instance");
    gen->require_subcommand(1);
    auto* gen_sk_cmd = gen->add_subcommand("sk", "Origin plus 2k circle points forcing a 2k-star");
    gen_sk_cmd->add_option("--k", c.k, "Even number of directions")->required();
    gen_sk_cmd->add_option("--out", c.out, "Output path (default stdout)");
    auto* gen_random_cmd = gen->add_subcommand("random", "Uniform points in general position");
    gen_random_cmd->add_option("--n", gen_n, "Number of points")->check(CLI::PositiveNumber);
    gen_random_cmd->add_option("--seed", c.seed, "Random seed");
    gen_random_cmd->add_option("--box", gen_box, "Side of the square box")->check(CLI::PositiveNumber);
    gen_random_cmd->add_option("--dirs", c.dirs, "Keep general position for these directions (degrees)");
    gen_random_cmd->add_option("--out", c.out, "Output path (default stdout)");

    auto* render = app.add_subcommand("render", "Draw an instance and optionally a tree as SVG");
    add_input(render);
    render->add_option("result", result_path, "Result JSON");
    render->add_option("--dirs", c.dirs, "Directions for the fan overlay (degrees)");
    render->add_option("--fan", fan_apex, "Point index for the wedge-fan overlay");
    add_out(render);

    auto* bench = app.add_subcommand("bench", "CSV of lengths and runtimes over instance files");
    bench->add_option("instances", bench_files, "Instance JSON files")->required();
    add_dirs(bench);
    add_cap(bench);
    bench->add_option("--threads", c.threads, "Worker threads")->check(CLI::NonNegativeNumber);
    bench->add_option("--out", c.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*check) return run_check(c, result_path);
        if (*mmst) return run_mmst(c);
        if (*mmst_k) return run_mmst_k(c);
        if (*k1) return run_k1(c);
        if (*oracle) return run_oracle(c);
        if (*oracle_k_cmd) return run_oracle_k(c);
        if (*mst) return run_mst(c);
        if (*gen_sk_cmd) return run_gen_sk(c);
        if (*gen_random_cmd) return run_gen_random(c, gen_n, gen_box);
        if (*render) return run_render(c, result_path, fan_apex);
        if (*bench) return run_bench(c, bench_files);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::Parse:
            case ErrorCode::CapExceeded:
            case ErrorCode::InvalidArgument:
            case ErrorCode::InvalidDirection:
            case ErrorCode::OppositeDirections:
                return kExitUsage;
            default:
                return kExitFailed;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailed;
    }
    return kExitUsage;
}
