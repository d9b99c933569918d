// Deterministic renderers.  SVG is assembled from fixed-format strings; PNG
// goes through a fixed-level zlib deflate of filter-0 scanlines.  No
// timestamps, no locale-dependent formatting, no font rasterization (PNG
// carries geometry only; annotations live in the SVG and the metrics files).

#include "amoebascope/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>

#include <zlib.h>

namespace amoebascope {

namespace {

// ---- PNG container ---------------------------------------------------------

void put_be32(std::string& s, std::uint32_t v) {
    s.push_back((char)(v >> 24));
    s.push_back((char)(v >> 16));
    s.push_back((char)(v >> 8));
    s.push_back((char)v);
}

void put_chunk(std::string& out, const char* type, const std::string& data) {
    put_be32(out, (std::uint32_t)data.size());
    std::string body = std::string(type, 4) + data;
    out += body;
    put_be32(out, (std::uint32_t)crc32(0, (const Bytef*)body.data(),
                                       (uInt)body.size()));
}

// ---- pixel raster ----------------------------------------------------------

struct Raster {
    int w, h;
    std::vector<std::uint8_t> rgb;
    Raster(int w_, int h_) : w(w_), h(h_), rgb((std::size_t)w_ * h_ * 3, 255) {}

    void set(int x, int y, RGB c) {
        if (x < 0 || y < 0 || x >= w || y >= h) return;
        std::size_t i = ((std::size_t)y * w + x) * 3;
        rgb[i] = c.r;
        rgb[i + 1] = c.g;
        rgb[i + 2] = c.b;
    }
    void fill_rect(double x0, double y0, double x1, double y1, RGB c) {
        int a = (int)std::floor(std::min(x0, x1));
        int b = (int)std::ceil(std::max(x0, x1));
        int u = (int)std::floor(std::min(y0, y1));
        int v = (int)std::ceil(std::max(y0, y1));
        for (int y = u; y < v; ++y)
            for (int x = a; x < b; ++x) set(x, y, c);
    }
    void disk(double cx, double cy, double r, RGB c) {
        int a = (int)std::floor(cx - r), b = (int)std::ceil(cx + r);
        int u = (int)std::floor(cy - r), v = (int)std::ceil(cy + r);
        for (int y = u; y <= v; ++y)
            for (int x = a; x <= b; ++x)
                if ((x + 0.5 - cx) * (x + 0.5 - cx) +
                        (y + 0.5 - cy) * (y + 0.5 - cy) <=
                    r * r)
                    set(x, y, c);
    }
    void segment(double x0, double y0, double x1, double y1, double width,
                 RGB c) {
        double len = std::hypot(x1 - x0, y1 - y0);
        int steps = std::max(1, (int)std::ceil(len));
        for (int i = 0; i <= steps; ++i) {
            double t = (double)i / steps;
            disk(x0 + t * (x1 - x0), y0 + t * (y1 - y0), width / 2.0, c);
        }
    }
};

// ---- data -> pixel mapping -------------------------------------------------

struct Mapper {
    double lox, hix, loy, hiy;
    int w, h, ox, oy;
    double px(double x) const { return ox + (x - lox) / (hix - lox) * w; }
    double py(double y) const { return oy + h - (y - loy) / (hiy - loy) * h; }
};

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string hex_color(RGB c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
    return buf;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrKind::Io, "cannot open for writing: " + path);
    out.write(bytes.data(), (std::streamsize)bytes.size());
}

// shared SVG scaffolding
std::string svg_open(int w, int h) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(w) + "\" height=\"" + std::to_string(h) +
           "\" viewBox=\"0 0 " + std::to_string(w) + " " + std::to_string(h) +
           "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void svg_points(std::string& s, const Mapper& m,
                const std::vector<std::array<double, 2>>& pts, RGB color,
                double size) {
    for (const auto& p : pts)
        s += "<circle cx=\"" + fmt2(m.px(p[0])) + "\" cy=\"" +
             fmt2(m.py(p[1])) + "\" r=\"" + fmt2(size) + "\" fill=\"" +
             hex_color(color) + "\"/>\n";
}

void svg_text(std::string& s, double x, double y, const std::string& text,
              RGB color) {
    std::string esc;
    for (char c : text) {
        if (c == '&') esc += "&amp;";
        else if (c == '<') esc += "&lt;";
        else if (c == '>') esc += "&gt;";
        else esc += c;
    }
    s += "<text x=\"" + fmt2(x) + "\" y=\"" + fmt2(y) +
         "\" font-family=\"monospace\" font-size=\"12\" fill=\"" +
         hex_color(color) + "\">" + esc + "</text>\n";
}

// occupied cells of one grid row merged into horizontal runs
void grid_runs(const VoxelGrid& g, int row,
               const std::function<void(int, int)>& emit) {
    int width = g.res()[0];
    std::vector<int> idx{0, row};
    int start = -1;
    for (int i = 0; i < width; ++i) {
        idx[0] = i;
        bool occ = g.get(idx);
        if (occ && start < 0) start = i;
        if (!occ && start >= 0) {
            emit(start, i);
            start = -1;
        }
    }
    if (start >= 0) emit(start, width);
}

} // namespace

void write_png_rgb(const std::string& path, int width, int height,
                   const std::vector<std::uint8_t>& rgb) {
    if ((std::size_t)width * height * 3 != rgb.size())
        fail(ErrKind::DimensionMismatch, "png buffer size mismatch");
    std::string raw;
    raw.reserve(rgb.size() + height);
    for (int y = 0; y < height; ++y) {
        raw.push_back('\0');  // filter type 0
        raw.append((const char*)rgb.data() + (std::size_t)y * width * 3,
                   (std::size_t)width * 3);
    }
    uLongf bound = compressBound((uLong)raw.size());
    std::string deflated(bound, '\0');
    if (compress2((Bytef*)deflated.data(), &bound, (const Bytef*)raw.data(),
                  (uLong)raw.size(), 6) != Z_OK)
        fail(ErrKind::Io, "png deflate failed");
    deflated.resize(bound);

    std::string png("\x89PNG\r\n\x1a\n", 8);
    std::string ihdr;
    put_be32(ihdr, (std::uint32_t)width);
    put_be32(ihdr, (std::uint32_t)height);
    ihdr += std::string("\x08\x02\x00\x00\x00", 5);  // 8-bit RGB
    put_chunk(png, "IHDR", ihdr);
    put_chunk(png, "IDAT", deflated);
    put_chunk(png, "IEND", "");
    write_file(path, png);
}

void render_svg(const SceneSpec& scene, const std::string& path) {
    Mapper m{scene.window.lo[0], scene.window.hi[0], scene.window.lo[1],
             scene.window.hi[1], scene.width, scene.height, 0, 0};
    std::string s = svg_open(scene.width, scene.height);
    for (const auto& layer : scene.layers) {
        switch (layer.kind) {
            case SceneLayer::Kind::Grid: {
                const VoxelGrid& g = *layer.grid;
                for (int row = 0; row < g.res()[1]; ++row) {
                    double y0 = g.box().lo[1] + row * g.pitch(1);
                    double y1 = y0 + g.pitch(1);
                    grid_runs(g, row, [&](int a, int b) {
                        double x0 = g.box().lo[0] + a * g.pitch(0);
                        double x1 = g.box().lo[0] + b * g.pitch(0);
                        s += "<rect x=\"" + fmt2(m.px(x0)) + "\" y=\"" +
                             fmt2(m.py(y1)) + "\" width=\"" +
                             fmt2(m.px(x1) - m.px(x0)) + "\" height=\"" +
                             fmt2(m.py(y0) - m.py(y1)) + "\" fill=\"" +
                             hex_color(layer.color) + "\"/>\n";
                    });
                }
                break;
            }
            case SceneLayer::Kind::Points:
                svg_points(s, m, layer.pts, layer.color, layer.size);
                break;
            case SceneLayer::Kind::Polyline: {
                if (layer.pts.empty()) break;
                s += "<polyline fill=\"none\" stroke=\"" +
                     hex_color(layer.color) + "\" stroke-width=\"" +
                     fmt2(layer.size) + "\" points=\"";
                for (const auto& p : layer.pts)
                    s += fmt2(m.px(p[0])) + "," + fmt2(m.py(p[1])) + " ";
                s += "\"/>\n";
                break;
            }
        }
    }
    if (!scene.title.empty()) svg_text(s, 8, 16, scene.title, RGB{0, 0, 0});
    double ly = 32;
    for (const auto& layer : scene.layers)
        if (!layer.label.empty()) {
            svg_text(s, 8, ly, layer.label, layer.color);
            ly += 14;
        }
    s += "</svg>\n";
    write_file(path, s);
}

void render_png(const SceneSpec& scene, const std::string& path) {
    Mapper m{scene.window.lo[0], scene.window.hi[0], scene.window.lo[1],
             scene.window.hi[1], scene.width, scene.height, 0, 0};
    Raster r(scene.width, scene.height);
    for (const auto& layer : scene.layers) {
        switch (layer.kind) {
            case SceneLayer::Kind::Grid: {
                const VoxelGrid& g = *layer.grid;
                for (int row = 0; row < g.res()[1]; ++row) {
                    double y0 = g.box().lo[1] + row * g.pitch(1);
                    double y1 = y0 + g.pitch(1);
                    grid_runs(g, row, [&](int a, int b) {
                        double x0 = g.box().lo[0] + a * g.pitch(0);
                        double x1 = g.box().lo[0] + b * g.pitch(0);
                        r.fill_rect(m.px(x0), m.py(y1), m.px(x1), m.py(y0),
                                    layer.color);
                    });
                }
                break;
            }
            case SceneLayer::Kind::Points:
                for (const auto& p : layer.pts)
                    r.disk(m.px(p[0]), m.py(p[1]), layer.size, layer.color);
                break;
            case SceneLayer::Kind::Polyline:
                for (std::size_t i = 1; i < layer.pts.size(); ++i)
                    r.segment(m.px(layer.pts[i - 1][0]),
                              m.py(layer.pts[i - 1][1]),
                              m.px(layer.pts[i][0]), m.py(layer.pts[i][1]),
                              layer.size, layer.color);
                break;
        }
    }
    write_png_rgb(path, scene.width, scene.height, r.rgb);
}

// ---- 3D triples ------------------------------------------------------------

namespace {

constexpr int kGap = 10;

struct Panel {
    int ax, ay;        // which data axes
    const char* name;
};
constexpr Panel kPanels[3] = {{0, 1, "x1-x2"}, {0, 2, "x1-x3"}, {1, 2, "x2-x3"}};

Mapper panel_mapper(const Scene3D& scene, int p) {
    const Panel& pn = kPanels[p];
    return Mapper{scene.window.lo[pn.ax], scene.window.hi[pn.ax],
                  scene.window.lo[pn.ay], scene.window.hi[pn.ay],
                  scene.panel,            scene.panel,
                  p * (scene.panel + kGap), 0};
}

} // namespace

void render_projections_svg(const Scene3D& scene, const std::string& path) {
    int w = 3 * scene.panel + 2 * kGap;
    int h = scene.panel + 24;
    std::string s = svg_open(w, h);
    for (int p = 0; p < 3; ++p) {
        Mapper m = panel_mapper(scene, p);
        s += "<rect x=\"" + std::to_string(m.ox) +
             "\" y=\"0\" width=\"" + std::to_string(scene.panel) +
             "\" height=\"" + std::to_string(scene.panel) +
             "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
        for (const auto& layer : scene.layers) {
            std::vector<std::array<double, 2>> pts;
            pts.reserve(layer.pts.size());
            for (const auto& q : layer.pts)
                pts.push_back({q[kPanels[p].ax], q[kPanels[p].ay]});
            svg_points(s, m, pts, layer.color, layer.size);
        }
        svg_text(s, m.ox + 4, scene.panel + 16, kPanels[p].name, RGB{0, 0, 0});
    }
    if (!scene.title.empty()) svg_text(s, 8, 16, scene.title, RGB{0, 0, 0});
    s += "</svg>\n";
    write_file(path, s);
}

void render_projections_png(const Scene3D& scene, const std::string& path) {
    int w = 3 * scene.panel + 2 * kGap;
    int h = scene.panel;
    Raster r(w, h);
    for (int p = 0; p < 3; ++p) {
        Mapper m = panel_mapper(scene, p);
        for (const auto& layer : scene.layers)
            for (const auto& q : layer.pts)
                r.disk(m.px(q[kPanels[p].ax]), m.py(q[kPanels[p].ay]),
                       layer.size, layer.color);
    }
    write_png_rgb(path, w, h, r.rgb);
}

} // namespace amoebascope
