#pragma once

// Deterministic SVG and PNG emitters.  Identical scene input produces
// byte-identical files: fixed palette, fixed float formatting, fixed zlib
// settings, no timestamps.

#include <cstdint>
#include <string>
#include <vector>

#include "amoebascope/contour.hpp"
#include "amoebascope/regions.hpp"

namespace amoebascope {

struct RGB {
    std::uint8_t r = 0, g = 0, b = 0;
};

// Layers of a 2D scene in data coordinates.
struct SceneLayer {
    enum class Kind { Grid, Points, Polyline } kind = Kind::Points;
    const VoxelGrid* grid = nullptr;       // Kind::Grid
    std::vector<std::array<double, 2>> pts; // Points / Polyline
    RGB color;
    double size = 1.5;                     // point radius / line width (px)
    std::string label;
};

struct SceneSpec {
    Box window;                 // 2D data window
    int width = 640, height = 640;
    std::string title;          // drawn top-left; numbers here must also
                                // appear in the scenario metrics
    std::vector<SceneLayer> layers;
};

void render_svg(const SceneSpec& scene, const std::string& path);
void render_png(const SceneSpec& scene, const std::string& path);

// Three orthographic projections (xy, xz, yz) of 3D point layers, side by
// side in one image.
struct Scene3D {
    Box window;                 // 3D data window
    int panel = 420;            // pixel size of each square panel
    std::string title;
    struct Layer {
        std::vector<std::array<double, 3>> pts;
        RGB color;
        double size = 1.2;
        std::string label;
    };
    std::vector<Layer> layers;
};

void render_projections_svg(const Scene3D& scene, const std::string& path);
void render_projections_png(const Scene3D& scene, const std::string& path);

// Raw RGB raster -> PNG (fixed zlib level; byte-deterministic).
void write_png_rgb(const std::string& path, int width, int height,
                   const std::vector<std::uint8_t>& rgb);

} // namespace amoebascope
