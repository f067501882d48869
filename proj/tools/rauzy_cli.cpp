// rauzy: command-line front end for the library.

#include "rauzy/algebra.hpp"
#include "rauzy/boundary_automaton.hpp"
#include "rauzy/fractal_render.hpp"
#include "rauzy/numeration.hpp"
#include "rauzy/unit_interval_codec.hpp"
#include "rauzy/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;
using namespace rauzy;

constexpr int kExitUsage = 2;
constexpr int kExitVerify = 3;
constexpr int kExitIo = 4;

struct Config {
    int a = 3;
    int depth = 0;
    int samples = 4000;
    int K = 1;
    int width = 1024;
    std::size_t max_points = 2'000'000;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out;
    std::string format;
    std::string t = "0";
    std::string level = "quick";
    bool json = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json point_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::string show(std::complex<double> z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.15f %c %.15fi", z.real(), z.imag() < 0 ? '-' : '+', std::fabs(z.imag()));
    return buf;
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << data;
    f.close();
    if (!f) throw IoError("failed writing '" + path + "'");
}

ExportFormat pick_format(const Config& c, ExportFormat fallback) {
    if (!c.format.empty()) return parse_format(c.format);
    if (!c.out.empty() && c.out.find('.') != std::string::npos) return format_from_path(c.out);
    return fallback;
}

int cmd_automaton(const Config& c) {
    const FamilyParam p(c.a);
    const Embedding e = roots(p);
    const BoundaryAutomaton aut = build_automaton(p, e);
    const bool matches = aut.states() == expected_states(p);
    if (!c.out.empty()) {
        const std::string fmt = c.format.empty() ? "dot" : c.format;
        if (fmt == "dot") {
            write_file(c.out, aut.to_dot());
        } else if (fmt == "json") {
            write_file(c.out, aut.to_json());
        } else {
            throw UsageError("automaton --format must be dot or json");
        }
    }
    if (c.json) {
        std::cout << json{{"a", c.a},
                          {"states", aut.states().size()},
                          {"transitions", aut.edges().size()},
                          {"matches_S", matches},
                          {"out", c.out}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "states: " << aut.states().size() << ", matches S: " << (matches ? "true" : "false") << "\n";
        if (!c.out.empty()) std::cout << "wrote " << c.out << "\n";
    }
    return matches ? 0 : kExitVerify;
}

int cmd_render(const Config& c) {
    const FamilyParam p(c.a);
    const Embedding e = roots(p);
    const int depth = c.depth > 0 ? c.depth : 18;
    const PointCloud cloud = points_of_R(e, depth, {c.max_points, c.seed, c.threads});
    if (c.out.empty()) throw UsageError("render needs --out");
    export_layers({cloud}, pick_format(c, ExportFormat::PPM), c.out, {c.width});
    if (c.json) {
        std::cout << json{{"a", c.a},
                          {"depth", depth},
                          {"points", cloud.points.size()},
                          {"total_words", cloud.meta.total_words},
                          {"subsampled", cloud.meta.subsampled},
                          {"out", c.out}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "points: " << cloud.points.size() << " of " << cloud.meta.total_words << " words"
                  << (cloud.meta.subsampled ? " (uniform subsample)" : "") << "\nwrote " << c.out << "\n";
    }
    return 0;
}

int cmd_boundary(const Config& c) {
    const FamilyParam p(c.a);
    const Parametrization ctx(roots(p));
    const int depth = c.depth > 0 ? c.depth : 40;
    const int per_edge = std::max(1, (c.samples + 3) / 4);
    const PointCloud cloud = boundary_points(ctx, per_edge, depth, c.threads);
    if (!c.out.empty()) export_layers({cloud}, pick_format(c, ExportFormat::SVG), c.out, {c.width});

    const std::pair<const char*, std::pair<double, double>> corners[] = {
        {"F(0,0)", {0, 0}}, {"F(0,1)", {0, 1}}, {"F(1,1)", {1, 1}}, {"F(1,0)", {1, 0}}};
    if (c.json) {
        json j{{"a", c.a}, {"depth", depth}, {"samples", cloud.points.size()}, {"out", c.out}};
        json cj = json::object();
        for (const auto& [name, xy] : corners) {
            const ParamPoint pt = square_param_F(xy.first, xy.second, depth, ctx);
            cj[name] = {{"point", point_json(pt.point)}, {"bound", pt.bound}};
        }
        j["corners"] = std::move(cj);
        json pts = json::array();
        for (const auto& z : cloud.points) pts.push_back(point_json(z));
        j["points"] = std::move(pts);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "boundary samples: " << cloud.points.size() << " at depth " << depth << "\n";
        for (const auto& [name, xy] : corners) {
            const ParamPoint pt = square_param_F(xy.first, xy.second, depth, ctx);
            std::cout << name << " = " << show(pt.point) << "\n";
        }
        if (!c.out.empty()) std::cout << "wrote " << c.out << "\n";
    }
    return 0;
}

int cmd_tiling(const Config& c) {
    const FamilyParam p(c.a);
    const Embedding e = roots(p);
    const int depth = c.depth > 0 ? c.depth : 12;
    const PointCloud base = points_of_R(e, depth, {c.max_points, c.seed, c.threads});
    const Lattice L = lattice(e);
    const auto layers = tiling(base, L, c.K);
    if (!c.out.empty()) export_layers(layers, pick_format(c, ExportFormat::PPM), c.out, {c.width});
    if (c.json) {
        json offs = json::array();
        for (const auto& layer : layers) offs.push_back(point_json(layer.meta.offset));
        std::cout << json{{"a", c.a},
                          {"depth", depth},
                          {"K", c.K},
                          {"translates", layers.size()},
                          {"points_per_translate", base.points.size()},
                          {"generators", {point_json(L.g1), point_json(L.g2)}},
                          {"covolume", L.covolume},
                          {"offsets", std::move(offs)},
                          {"out", c.out}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "translates: " << layers.size() << " (" << base.points.size() << " points each)\n"
                  << "covolume: " << L.covolume << "\n";
        if (!c.out.empty()) std::cout << "wrote " << c.out << "\n";
    }
    return 0;
}

std::string join(const std::vector<int>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

json digits_json(const MixedDigits& d) {
    json entries = json::array();
    for (const auto& e : d.entries()) entries.push_back({{"digit", e.digit}, {"n", e.n}, {"m", e.m}});
    return entries;
}

int cmd_expand(const Config& c) {
    const FamilyParam p(c.a);
    const mpq_class t = parse_rational(c.t);
    const int depth = c.depth > 0 ? c.depth : 40;
    const MixedExpansion ex = expand(t, p, depth);
    const auto digits = ex.digits.digits();
    const auto code = psi(digits, p);
    if (c.json) {
        std::cout << json{{"a", c.a},
                          {"r", p.r()},
                          {"t", t.get_str()},
                          {"depth", depth},
                          {"entries", digits_json(ex.digits)},
                          {"remainder", ex.remainder.get_d()},
                          {"psi", code}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "a=" << c.a << " r=" << p.r() << " t=" << t.get_str() << "\n"
                  << "digits: " << join(digits, ",") << "\n"
                  << "entries a(n,m): " << ex.digits.describe() << "\n"
                  << "remainder: " << ex.remainder.get_d() << "\n"
                  << "psi: " << join(code, ",") << "\n";
    }
    return 0;
}

int cmd_param(const Config& c) {
    const FamilyParam p(c.a);
    const mpq_class t = parse_rational(c.t);
    const int depth = c.depth > 0 ? c.depth : 40;
    if (p.a() < 3) throw std::domain_error("param requires a >= 3");
    const Parametrization ctx(roots(p));
    const ParamPoint pt = boundary_param_f(t, depth, ctx);
    if (c.json) {
        std::cout << json{{"a", c.a},
                          {"t", t.get_str()},
                          {"depth", depth},
                          {"entries", digits_json(pt.digits)},
                          {"psi", pt.code},
                          {"point", point_json(pt.point)},
                          {"bound", pt.bound}}
                         .dump(2)
                  << "\n";
    } else {
        std::ostringstream bound;
        bound.precision(3);
        bound << pt.bound;
        std::cout << "a=" << c.a << " t=" << t.get_str() << " depth=" << depth << "\n"
                  << "entries a(n,m): " << pt.digits.describe() << "\n"
                  << "psi: " << join(pt.code, ",") << "\n"
                  << "f(t) = " << show(pt.point) << " ± " << bound.str() << "\n";
    }
    return 0;
}

int cmd_verify(const Config& c) {
    const FamilyParam p(c.a);
    VerifyLevel level;
    if (c.level == "quick") {
        level = VerifyLevel::Quick;
    } else if (c.level == "full") {
        level = VerifyLevel::Full;
    } else {
        throw UsageError("--level must be quick or full");
    }
    const VerifyReport rep = run_verification(p, level, c.seed, c.threads);
    if (c.json) {
        std::cout << rep.to_json();
    } else {
        for (const auto& chk : rep.checks) {
            std::printf("[%s] %-28s %7.2fs  %s\n", chk.passed ? "PASS" : "FAIL", chk.name.c_str(), chk.seconds,
                        chk.detail.c_str());
        }
        std::printf("%s\n", rep.all_passed() ? "all checks passed" : "some checks FAILED");
    }
    return rep.all_passed() ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rauzy fractal toolkit for x^3 - a x^2 + x - 1"};
    app.require_subcommand(1);
    app.fallthrough();
    Config c;
    app.add_flag("--json", c.json, "Machine-readable JSON on stdout");
    app.add_option("--threads", c.threads, "Worker threads (0: all cores)");
    app.add_option("--seed", c.seed, "Random seed");

    auto add_a = [&](CLI::App* sub) { sub->add_option("--a", c.a, "Family parameter a >= 2")->required(); };

    auto* automaton = app.add_subcommand("automaton", "Build the boundary automaton and compare it with S");
    add_a(automaton);
    automaton->add_option("--format", c.format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
    automaton->add_option("--out", c.out, "Output file");

    auto* render = app.add_subcommand("render", "Render the fractal point cloud");
    add_a(render);
    render->add_option("--depth", c.depth, "Word length (default 18)");
    render->add_option("--out", c.out, "Output file (.ppm, .svg, .csv, .json)")->required();
    render->add_option("--format", c.format, "ppm, svg, csv or json (default from extension)");
    render->add_option("--width", c.width, "Raster width in pixels");
    render->add_option("--max-points", c.max_points, "Subsample above this many words");

    auto* boundary = app.add_subcommand("boundary", "Sample the boundary curve F on the square boundary");
    add_a(boundary);
    boundary->add_option("--samples", c.samples, "Total samples over the four edges");
    boundary->add_option("--depth", c.depth, "Mixed-digit depth (default 40)");
    boundary->add_option("--out", c.out, "Optional output file");
    boundary->add_option("--format", c.format, "ppm, svg, csv or json");
    boundary->add_option("--width", c.width, "Raster width in pixels");

    auto* tiles = app.add_subcommand("tiling", "Lattice translates of the fractal");
    add_a(tiles);
    tiles->add_option("--K", c.K, "Translates k1, k2 in [-K, K]");
    tiles->add_option("--depth", c.depth, "Word length (default 12)");
    tiles->add_option("--out", c.out, "Optional output file");
    tiles->add_option("--format", c.format, "ppm, svg, csv or json");
    tiles->add_option("--width", c.width, "Raster width in pixels");
    tiles->add_option("--max-points", c.max_points, "Subsample above this many words");

    auto* expand_cmd = app.add_subcommand("expand", "Mixed-radix digits of t");
    add_a(expand_cmd);
    expand_cmd->add_option("--t", c.t, "t in [0,1]: 1/3, 0.25, 1e-3")->required();
    expand_cmd->add_option("--depth", c.depth, "Number of digits (default 40)");

    auto* param = app.add_subcommand("param", "Boundary point f(t)");
    add_a(param);
    param->add_option("--t", c.t, "t in [0,1]")->required();
    param->add_option("--depth", c.depth, "Number of digits (default 40)");

    auto* verify = app.add_subcommand("verify", "Run the self-checks");
    add_a(verify);
    verify->add_option("--level", c.level, "quick or full");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c.a < 2) throw UsageError("--a must be >= 2");
        if (*automaton) return cmd_automaton(c);
        if (*render) return cmd_render(c);
        if (*boundary) return cmd_boundary(c);
        if (*tiles) return cmd_tiling(c);
        if (*expand_cmd) return cmd_expand(c);
        if (*param) return cmd_param(c);
        if (*verify) return cmd_verify(c);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
