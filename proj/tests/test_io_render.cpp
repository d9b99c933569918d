#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <zlib.h>

#include "amoebascope/csvio.hpp"
#include "amoebascope/parse.hpp"
#include "amoebascope/render.hpp"

using namespace amoebascope;

namespace {

namespace fs = std::filesystem;

fs::path out_dir() {
    fs::path d = fs::path("io_render_out");
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("format_double round-trips exactly and stays short") {
    const double values[] = {0.0,    -0.0,   1.0,     1.0 / 3, 0.1,
                             -2.5e4, 1e300,  -7.0 / 12, 6.02e23,
                             0.4082482904638630};
    for (double v : values) {
        std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");
    // shortest representation: 0.1 must not be printed with 17 digits
    CHECK(format_double(0.1) == "0.1");
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        double v = (uniform01(rng) - 0.5) * std::pow(10.0, (int)(uniform01(rng) * 40) - 20);
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("contour and cloud CSV schemas") {
    ContourCloud cloud;
    ContourEntry e;
    e.point.coords = {cplx(1, 2), cplx(-3, 0.5)};
    e.log.coords = {0.25, -1.5};
    cloud.entries.push_back(e);
    fs::path p = out_dir() / "contour.csv";
    write_contour_csv(cloud, 2, p.string());
    std::vector<std::string> lines = split_lines(slurp(p));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "c1_re,c1_im,c2_re,c2_im,x1,x2");
    CHECK(lines[1] == "1,2,-3,0.5,0.25,-1.5");

    SampleCloud sc;
    sc.points.push_back(CloudPoint{{0.5, 1.5, -2.0}, cplx(0.1, -0.2)});
    fs::path q = out_dir() / "cloud.csv";
    write_cloud_csv(sc, 3, q.string());
    lines = split_lines(slurp(q));
    CHECK(lines[0] == "t_re,t_im,x1,x2,x3");
    CHECK(lines[1] == "0.1,-0.2,0.5,1.5,-2");
}

TEST_CASE("grid RLE round-trips a real raster") {
    LaurentPolynomial f = parse_polynomial("1 + z + w");
    Box w;
    w.lo = {-2, -2};
    w.hi = {2, 2};
    VoxelGrid g = rasterize_amoeba_2d(f, w, 41);
    fs::path rle = out_dir() / "g.rle", meta = out_dir() / "g.rle.json";
    write_grid_rle(g, rle.string(), meta.string());
    VoxelGrid back = read_grid_rle(rle.string(), meta.string());
    REQUIRE(back.same_layout(g));
    for (std::size_t i = 0; i < g.cell_count(); ++i)
        CHECK(back.get_flat(i) == g.get_flat(i));
    // sidecar mentions the occupancy count
    CHECK(slurp(meta).find("\"occupied\"") != std::string::npos);
}

TEST_CASE("corrupt RLE input is rejected") {
    fs::path rle = out_dir() / "bad.rle", meta = out_dir() / "bad.rle.json";
    {
        std::ofstream r(rle), m(meta);
        r << "3x1 4x0 nonsense\n";
        m << R"({"dim":2,"lo":[0,0],"hi":[1,1],"res":[3,3],"occupied":3,"total":9})";
    }
    CHECK_THROWS_AS(read_grid_rle(rle.string(), meta.string()), Error);
    {
        std::ofstream r(rle), m(meta);
        r << "3x1 4x0\n";  // 7 cells, layout says 9
        m << R"({"dim":2,"lo":[0,0],"hi":[1,1],"res":[3,3],"occupied":3,"total":9})";
    }
    CHECK_THROWS_AS(read_grid_rle(rle.string(), meta.string()), Error);
}

TEST_CASE("classification CSV batch") {
    LaurentPolynomial f = parse_polynomial("1 + z + w");
    fs::path in = out_dir() / "pts.csv", out = out_dir() / "cls.csv";
    {
        std::ofstream o(in);
        o << "x1,x2\n0,0\n5,0\n0," << format_double(std::log(2.0)) << "\n";
    }
    classify_csv(f, in.string(), out.string());
    std::vector<std::string> lines = split_lines(slurp(out));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "x1,x2,verdict,cluster_count,hull,v1,v2,note");
    CHECK(lines[1].find("interior") != std::string::npos);
    CHECK(lines[2].find("outside") != std::string::npos);
    CHECK(lines[3].find("boundary") != std::string::npos);
    // boundary rows carry a normal
    std::stringstream row(lines[3]);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() >= 7);
    CHECK(std::abs(std::stod(fields[5]) - 1.0 / std::sqrt(5.0)) < 0.05);
    CHECK(std::abs(std::stod(fields[6]) + 2.0 / std::sqrt(5.0)) < 0.1);
}

TEST_CASE("SVG output is deterministic and well-formed") {
    SceneSpec scene;
    scene.window.lo = {-1, -1};
    scene.window.hi = {1, 1};
    scene.title = "determinism probe";
    SceneLayer pts;
    pts.pts = {{0.0, 0.0}, {0.5, -0.25}};
    pts.color = RGB{10, 20, 30};
    pts.label = "two points";
    scene.layers.push_back(pts);
    fs::path a = out_dir() / "a.svg", b = out_dir() / "b.svg";
    render_svg(scene, a.string());
    render_svg(scene, b.string());
    std::string sa = slurp(a);
    CHECK(sa == slurp(b));
    CHECK(sa.find("<svg") != std::string::npos);
    CHECK(sa.find("determinism probe") != std::string::npos);
    CHECK(sa.rfind("</svg>") != std::string::npos);
}

TEST_CASE("PNG output is deterministic with a valid structure") {
    SceneSpec scene;
    scene.window.lo = {-1, -1};
    scene.window.hi = {1, 1};
    scene.width = 64;
    scene.height = 64;
    SceneLayer pts;
    pts.pts = {{0.0, 0.0}};
    pts.color = RGB{255, 0, 0};
    pts.size = 2.0;
    scene.layers.push_back(pts);
    fs::path a = out_dir() / "a.png", b = out_dir() / "b.png";
    render_png(scene, a.string());
    render_png(scene, b.string());
    std::string bytes = slurp(a);
    CHECK(bytes == slurp(b));

    static const unsigned char sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n',
                                         0x1a, '\n'};
    REQUIRE(bytes.size() > 8);
    CHECK(std::memcmp(bytes.data(), sig, 8) == 0);
    // IHDR: width and height at offsets 16 and 20 (big-endian)
    auto be32 = [&](std::size_t off) {
        return ((unsigned)(unsigned char)bytes[off] << 24) |
               ((unsigned)(unsigned char)bytes[off + 1] << 16) |
               ((unsigned)(unsigned char)bytes[off + 2] << 8) |
               (unsigned)(unsigned char)bytes[off + 3];
    };
    CHECK(be32(16) == 64);
    CHECK(be32(20) == 64);
    CHECK(bytes.find("IDAT") != std::string::npos);
    CHECK(bytes.rfind("IEND") == bytes.size() - 8);
}

TEST_CASE("a single cloud point lands at the expected pixel") {
    // window [0,4]x[0,4], canvas 100x100: point (1,3) maps to x=25,
    // y=25 (y axis flips)
    SceneSpec scene;
    scene.window.lo = {0, 0};
    scene.window.hi = {4, 4};
    scene.width = 100;
    scene.height = 100;
    SceneLayer pts;
    pts.pts = {{1.0, 3.0}};
    pts.color = RGB{0, 0, 255};
    pts.size = 1.0;
    scene.layers.push_back(pts);
    fs::path p = out_dir() / "pixel.png";
    render_png(scene, p.string());
    std::string bytes = slurp(p);

    // decode the IDAT stream and inspect the raster
    std::size_t pos = bytes.find("IDAT");
    REQUIRE(pos != std::string::npos);
    auto be32 = [&](std::size_t off) {
        return ((unsigned)(unsigned char)bytes[off] << 24) |
               ((unsigned)(unsigned char)bytes[off + 1] << 16) |
               ((unsigned)(unsigned char)bytes[off + 2] << 8) |
               (unsigned)(unsigned char)bytes[off + 3];
    };
    unsigned idat_len = be32(pos - 4);
    std::vector<unsigned char> raw(100 * (1 + 300));
    uLongf out_len = raw.size();
    int zrc = uncompress(raw.data(), &out_len,
                         (const Bytef*)bytes.data() + pos + 4, idat_len);
    REQUIRE(zrc == Z_OK);
    REQUIRE(out_len == raw.size());
    auto pixel = [&](int x, int y) {
        std::size_t off = y * 301 + 1 + 3 * x;
        return std::array<int, 3>{raw[off], raw[off + 1], raw[off + 2]};
    };
    CHECK(pixel(25, 25) == std::array<int, 3>{0, 0, 255});
    CHECK(pixel(75, 75) == std::array<int, 3>{255, 255, 255});
}

TEST_CASE("3D projections render all three panels deterministically") {
    Scene3D scene;
    scene.window.lo = {-1, -1, -1};
    scene.window.hi = {1, 1, 1};
    scene.panel = 120;
    scene.title = "panels";
    Scene3D::Layer l;
    l.pts = {{0.2, -0.3, 0.9}, {-0.5, 0.5, 0.0}};
    l.color = RGB{0, 128, 0};
    l.label = "probe";
    scene.layers.push_back(l);
    fs::path s = out_dir() / "proj.svg", p = out_dir() / "proj.png";
    render_projections_svg(scene, s.string());
    render_projections_png(scene, p.string());
    std::string svg = slurp(s);
    CHECK(svg.find("x1-x2") != std::string::npos);
    CHECK(svg.find("x1-x3") != std::string::npos);
    CHECK(svg.find("x2-x3") != std::string::npos);
    fs::path s2 = out_dir() / "proj2.svg", p2 = out_dir() / "proj2.png";
    render_projections_svg(scene, s2.string());
    render_projections_png(scene, p2.string());
    CHECK(svg == slurp(s2));
    CHECK(slurp(p) == slurp(p2));
}

TEST_CASE("empty scenes produce blank canvases of the configured size") {
    SceneSpec scene;
    scene.window.lo = {0, 0};
    scene.window.hi = {1, 1};
    scene.width = 32;
    scene.height = 16;
    fs::path p = out_dir() / "blank.png";
    render_png(scene, p.string());
    std::string bytes = slurp(p);
    auto be32 = [&](std::size_t off) {
        return ((unsigned)(unsigned char)bytes[off] << 24) |
               ((unsigned)(unsigned char)bytes[off + 1] << 16) |
               ((unsigned)(unsigned char)bytes[off + 2] << 8) |
               (unsigned)(unsigned char)bytes[off + 3];
    };
    CHECK(be32(16) == 32);
    CHECK(be32(20) == 16);
}
