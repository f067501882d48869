#include "rauzy/fractal_render.hpp"

#include "rauzy/numeration.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <thread>

namespace rauzy {

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace {

// Runs job(i) for i in [0, n) on the given number of workers.
template <class Job>
void parallel_for(std::size_t n, unsigned threads, Job&& job) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) job(i);
        });
    }
    for (auto& th : pool) th.join();
}

std::vector<std::complex<double>> alpha_powers(const Embedding& e, int from, int count) {
    std::vector<std::complex<double>> pw;
    pw.reserve(count);
    AlgNum x = alpha_power(from, e.param);
    for (int i = 0; i < count; ++i) {
        pw.push_back(embed(x, e));
        x = x.mul_alpha();
    }
    return pw;
}

void enumerate_from(FamilyParam p, const std::vector<std::complex<double>>& pw, std::size_t pos, ParryState s,
                    std::complex<double> z, std::vector<std::complex<double>>& out) {
    if (pos == pw.size()) {
        out.push_back(z);
        return;
    }
    for (int d = 0; d < p.a(); ++d) {
        if (auto t = parry_step(s, d, p)) enumerate_from(p, pw, pos + 1, *t, z + static_cast<double>(d) * pw[pos], out);
    }
}

constexpr std::size_t kSampleChunk = 1 << 16;

}  // namespace

PointCloud points_of_R(const Embedding& e, int depth, const CloudOptions& opt) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    const FamilyParam p = e.param;
    const auto pw = alpha_powers(e, 2, depth);
    const mpz_class total = count_admissible(p, depth);
    const unsigned threads = resolve_threads(opt.threads);

    PointCloud cloud;
    cloud.meta = {p.a(), depth, "admissible_words", total.get_str(), false, opt.seed, {0, 0}};

    if (total <= opt.max_points) {
        const int split = std::min(depth, 6);
        std::vector<DigitWord> prefixes;
        AdmissibleStream stream(p, split, 2);
        while (auto w = stream.next()) prefixes.push_back(std::move(*w));
        std::vector<std::vector<std::complex<double>>> parts(prefixes.size());
        parallel_for(prefixes.size(), threads, [&](std::size_t i) {
            ParryState s;
            std::complex<double> z = 0;
            for (int j = 0; j < split; ++j) {
                const int d = prefixes[i].digits[j];
                s = *parry_step(s, d, p);
                z += static_cast<double>(d) * pw[j];
            }
            enumerate_from(p, pw, split, s, z, parts[i]);
        });
        cloud.points.reserve(total.get_ui());
        for (auto& part : parts) cloud.points.insert(cloud.points.end(), part.begin(), part.end());
        return cloud;
    }

    // ways[k][s]: number of admissible continuations of length k from state s
    constexpr int S = ParryState::kCount;
    std::vector<std::array<long double, S>> ways(depth + 1);
    ways[0].fill(1.0L);
    for (int k = 1; k <= depth; ++k) {
        for (int s = 0; s < S; ++s) {
            long double w = 0;
            for (int d = 0; d < p.a(); ++d) {
                if (auto t = parry_step(ParryState::from_index(s), d, p)) w += ways[k - 1][t->index()];
            }
            ways[k][s] = w;
        }
    }

    cloud.meta.subsampled = true;
    const std::size_t n = opt.max_points;
    cloud.points.resize(n);
    const std::size_t chunks = (n + kSampleChunk - 1) / kSampleChunk;
    parallel_for(chunks, threads, [&](std::size_t c) {
        std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                          static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<long double> unit(0.0L, 1.0L);
        const std::size_t end = std::min(n, (c + 1) * kSampleChunk);
        for (std::size_t i = c * kSampleChunk; i < end; ++i) {
            ParryState s;
            std::complex<double> z = 0;
            for (int j = 0; j < depth; ++j) {
                const int rem = depth - j - 1;
                long double x = unit(rng) * ways[rem + 1][s.index()];
                int chosen = -1;
                ParryState next = s;
                for (int d = 0; d < p.a(); ++d) {
                    auto t = parry_step(s, d, p);
                    if (!t) continue;
                    chosen = d;
                    next = *t;
                    x -= ways[rem][t->index()];
                    if (x < 0) break;
                }
                s = next;
                z += static_cast<double>(chosen) * pw[j];
            }
            cloud.points[i] = z;
        }
    });
    return cloud;
}

PointCloud boundary_points(const Parametrization& ctx, int per_edge, int depth, unsigned threads) {
    if (per_edge < 1) throw std::invalid_argument("per-edge sample count must be >= 1");
    const FamilyParam p = ctx.emb.param;
    const std::size_t n = 4 * static_cast<std::size_t>(per_edge);
    PointCloud cloud;
    cloud.meta = {p.a(), depth, "boundary_curve", std::to_string(n), false, 0, {0, 0}};
    cloud.points.resize(n);
    const AffineMap fs[4] = {identity_map(p), f_map(2, p), f_map(3, p), f_map(1, p)};
    parallel_for(n, resolve_threads(threads), [&](std::size_t i) {
        const int edge = static_cast<int>(i / per_edge);
        const long j = static_cast<long>(i % per_edge);
        // left and top run forward, right and bottom run backward
        mpq_class t = edge < 2 ? mpq_class(j, per_edge) : mpq_class(per_edge - j, per_edge);
        t.canonicalize();
        ParamPoint pt = boundary_param_f(t, depth, ctx);
        cloud.points[i] = embed(fs[edge](pt.exact), ctx.emb);
    });
    return cloud;
}

Lattice lattice(const Embedding& e) {
    const AlgNum u = AlgNum::alpha(e.param) - AlgNum::one(e.param);
    const auto g1 = embed(u, e), g2 = embed(u.mul_alpha(), e);
    return {u, g1, g2, std::fabs((std::conj(g1) * g2).imag())};
}

std::vector<PointCloud> tiling(const PointCloud& base, const Lattice& L, int K) {
    if (K < 0) throw std::invalid_argument("lattice range K must be >= 0");
    std::vector<PointCloud> out;
    for (int k1 = -K; k1 <= K; ++k1) {
        for (int k2 = -K; k2 <= K; ++k2) {
            const std::complex<double> off = static_cast<double>(k1) * L.g1 + static_cast<double>(k2) * L.g2;
            PointCloud c;
            c.meta = base.meta;
            c.meta.offset = off;
            c.points.reserve(base.points.size());
            for (const auto& z : base.points) c.points.push_back(z + off);
            out.push_back(std::move(c));
        }
    }
    return out;
}

double area_estimate(std::span<const std::complex<double>> points, double h) {
    if (!(h > 0)) throw std::invalid_argument("pixel size must be positive");
    std::vector<std::uint64_t> cells;
    cells.reserve(points.size());
    for (const auto& z : points) {
        const auto ix = static_cast<std::int64_t>(std::floor(z.real() / h));
        const auto iy = static_cast<std::int64_t>(std::floor(z.imag() / h));
        cells.push_back((static_cast<std::uint64_t>(ix) << 32) ^ (static_cast<std::uint64_t>(iy) & 0xffffffffULL));
    }
    std::sort(cells.begin(), cells.end());
    const auto distinct = std::unique(cells.begin(), cells.end()) - cells.begin();
    return static_cast<double>(distinct) * h * h;
}

ExportFormat parse_format(const std::string& name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "ppm") return ExportFormat::PPM;
    if (s == "svg") return ExportFormat::SVG;
    if (s == "csv") return ExportFormat::CSV;
    if (s == "json") return ExportFormat::JSON;
    throw std::invalid_argument("unknown format '" + name + "' (expected ppm, svg, csv or json)");
}

ExportFormat format_from_path(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) throw std::invalid_argument("cannot infer a format from '" + path + "'");
    return parse_format(path.substr(dot + 1));
}

namespace {

using Rgb = std::array<unsigned char, 3>;

constexpr Rgb kPalette[] = {
    {31, 73, 125}, {192, 80, 77}, {155, 187, 89}, {128, 100, 162},
    {75, 172, 198}, {247, 150, 70}, {89, 89, 89}, {200, 160, 40},
};

Rgb layer_color(std::size_t i) { return kPalette[i % std::size(kPalette)]; }

struct Raster {
    int width = 1, height = 1;
    std::vector<int> owner;  // layer index + 1, 0 for background
};

Raster rasterize(const std::vector<PointCloud>& layers, const RasterOptions& opt) {
    if (opt.width < 1) throw std::invalid_argument("raster width must be >= 1");
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& layer : layers) {
        for (const auto& z : layer.points) {
            x0 = std::min(x0, z.real());
            x1 = std::max(x1, z.real());
            y0 = std::min(y0, z.imag());
            y1 = std::max(y1, z.imag());
        }
    }
    if (!(x0 <= x1)) x0 = y0 = -1, x1 = y1 = 1;
    const double span = std::max({x1 - x0, y1 - y0, 1e-12});
    const double margin = 0.02 * span;
    x0 -= margin, x1 += margin, y0 -= margin, y1 += margin;

    Raster r;
    r.width = opt.width;
    r.height = std::max(1, static_cast<int>(std::lround(opt.width * (y1 - y0) / (x1 - x0))));
    r.owner.assign(static_cast<std::size_t>(r.width) * r.height, 0);
    const double sx = r.width / (x1 - x0), sy = r.height / (y1 - y0);
    for (std::size_t li = 0; li < layers.size(); ++li) {
        for (const auto& z : layers[li].points) {
            const int px = std::clamp(static_cast<int>((z.real() - x0) * sx), 0, r.width - 1);
            const int py = std::clamp(static_cast<int>((y1 - z.imag()) * sy), 0, r.height - 1);
            r.owner[static_cast<std::size_t>(py) * r.width + px] = static_cast<int>(li) + 1;
        }
    }
    return r;
}

std::string to_ppm(const Raster& r) {
    std::string out = "P6\n" + std::to_string(r.width) + " " + std::to_string(r.height) + "\n255\n";
    out.reserve(out.size() + r.owner.size() * 3);
    for (int o : r.owner) {
        const Rgb c = o == 0 ? Rgb{255, 255, 255} : layer_color(o - 1);
        out.append(reinterpret_cast<const char*>(c.data()), 3);
    }
    return out;
}

std::string hex_color(const Rgb& c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
    return buf;
}

std::string to_svg(const Raster& r, std::size_t layer_count) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(r.width) +
           "\" height=\"" + std::to_string(r.height) + "\" shape-rendering=\"crispEdges\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    for (std::size_t li = 0; li < layer_count; ++li) {
        out += "<g fill=\"" + hex_color(layer_color(li)) + "\">\n";
        const int want = static_cast<int>(li) + 1;
        for (int y = 0; y < r.height; ++y) {
            const int* row = &r.owner[static_cast<std::size_t>(y) * r.width];
            for (int x = 0; x < r.width;) {
                if (row[x] != want) {
                    ++x;
                    continue;
                }
                int end = x;
                while (end < r.width && row[end] == want) ++end;
                out += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" width=\"" +
                       std::to_string(end - x) + "\" height=\"1\"/>\n";
                x = end;
            }
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

void append_number(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

std::string to_csv(const std::vector<PointCloud>& layers) {
    std::string out = "re,im\n";
    for (const auto& layer : layers) {
        for (const auto& z : layer.points) {
            append_number(out, z.real());
            out += ',';
            append_number(out, z.imag());
            out += '\n';
        }
    }
    return out;
}

nlohmann::json meta_json(const CloudMeta& m) {
    return {{"a", m.a},
            {"depth", m.depth},
            {"generator", m.generator},
            {"total_words", m.total_words},
            {"subsampled", m.subsampled},
            {"seed", m.seed},
            {"offset", {m.offset.real(), m.offset.imag()}}};
}

std::string to_json(const std::vector<PointCloud>& layers) {
    nlohmann::json head;
    head["meta"] = layers.empty() ? nlohmann::json::object() : meta_json(layers.front().meta);
    nlohmann::json lm = nlohmann::json::array();
    for (const auto& layer : layers) {
        nlohmann::json m = meta_json(layer.meta);
        m["count"] = layer.points.size();
        lm.push_back(std::move(m));
    }
    head["layers"] = std::move(lm);
    // points are streamed by hand; a json tree of millions of pairs is slow and large
    std::string out = head.dump();
    out.pop_back();
    out += ",\"points\":[";
    bool first = true;
    for (const auto& layer : layers) {
        for (const auto& z : layer.points) {
            if (!first) out += ',';
            first = false;
            out += '[';
            append_number(out, z.real());
            out += ',';
            append_number(out, z.imag());
            out += ']';
        }
    }
    out += "]}\n";
    return out;
}

}  // namespace

std::string render_layers(const std::vector<PointCloud>& layers, ExportFormat fmt, const RasterOptions& opt) {
    switch (fmt) {
        case ExportFormat::PPM:
            return to_ppm(rasterize(layers, opt));
        case ExportFormat::SVG:
            return to_svg(rasterize(layers, opt), layers.size());
        case ExportFormat::CSV:
            return to_csv(layers);
        case ExportFormat::JSON:
            return to_json(layers);
    }
    throw std::invalid_argument("unknown export format");
}

void export_layers(const std::vector<PointCloud>& layers, ExportFormat fmt, const std::string& path,
                   const RasterOptions& opt) {
    const std::string data = render_layers(layers, fmt, opt);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    f.close();
    if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace rauzy
