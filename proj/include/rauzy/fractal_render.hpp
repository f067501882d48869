#pragma once

// Point clouds for the fractal, its boundary curve and the lattice tiling, plus
// rasterization and file export.

#include "rauzy/algebra.hpp"
#include "rauzy/unit_interval_codec.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rauzy {

struct CloudMeta {
    int a = 0;
    int depth = 0;
    std::string generator;
    std::string total_words;  // decimal; may exceed 64 bits
    bool subsampled = false;
    std::uint64_t seed = 0;
    std::complex<double> offset{0, 0};  // lattice translation applied to every point
};

struct PointCloud {
    std::vector<std::complex<double>> points;
    CloudMeta meta;
};

struct CloudOptions {
    std::size_t max_points = 2'000'000;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// One point sum_{i=2}^{depth+1} a_i alpha^i per admissible word, in lexicographic word
/// order. Above max_points words, draws max_points words uniformly at random instead;
/// the draw depends on the seed only, not on the thread count.
PointCloud points_of_R(const Embedding& e, int depth, const CloudOptions& opt = {});

/// F at `per_edge` evenly spaced parameters on each side of the unit square, in the order
/// left edge upward, top edge rightward, right edge downward, bottom edge leftward, so the
/// points trace the closed boundary curve starting at F(0,0) = −1.
PointCloud boundary_points(const Parametrization& ctx, int per_edge, int depth, unsigned threads = 0);

struct Lattice {
    AlgNum u;                 // alpha − 1
    std::complex<double> g1;  // embed(u)
    std::complex<double> g2;  // embed(alpha u)
    double covolume;          // |Im(conj(g1) g2)|
};
Lattice lattice(const Embedding& e);

/// Copies of the cloud translated by k1 g1 + k2 g2 for k1, k2 in [−K, K], ordered by (k1, k2).
std::vector<PointCloud> tiling(const PointCloud& base, const Lattice& L, int K);

/// Number of occupied h-by-h pixels times h^2. Throws std::invalid_argument for h <= 0.
double area_estimate(std::span<const std::complex<double>> points, double h);

enum class ExportFormat { PPM, SVG, CSV, JSON };
/// "ppm", "svg", "csv" or "json"; throws std::invalid_argument otherwise.
ExportFormat parse_format(const std::string& name);
/// Format from the file extension; throws std::invalid_argument if unknown.
ExportFormat format_from_path(const std::string& path);

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RasterOptions {
    int width = 1024;  // the height follows from the aspect ratio of the bounding box
};

/// Writes the layers to path; layers are colored by index in the raster formats.
/// Output depends only on the input and options. Throws IoError on write failure.
void export_layers(const std::vector<PointCloud>& layers, ExportFormat fmt, const std::string& path,
                   const RasterOptions& opt = {});
/// The same, to a string (binary for PPM).
std::string render_layers(const std::vector<PointCloud>& layers, ExportFormat fmt, const RasterOptions& opt = {});

/// Worker count for a requested value, 0 meaning the hardware concurrency.
unsigned resolve_threads(unsigned requested);

}  // namespace rauzy
