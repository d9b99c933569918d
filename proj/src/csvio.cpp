// CSV and voxel-grid serialization.

#include "amoebascope/csvio.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace amoebascope {

std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: no CRLF surprises
    if (!out) fail(ErrKind::Io, "cannot open for writing: " + path);
    return out;
}

} // namespace

void write_contour_csv(const ContourCloud& cloud, int ambient_dim,
                       const std::string& path) {
    std::ofstream out = open_out(path);
    for (int k = 1; k <= ambient_dim; ++k)
        out << "c" << k << "_re,c" << k << "_im,";
    for (int k = 1; k <= ambient_dim; ++k)
        out << "x" << k << (k == ambient_dim ? "\n" : ",");
    for (const auto& e : cloud.entries) {
        if ((int)e.point.coords.size() != ambient_dim)
            fail(ErrKind::DimensionMismatch, "contour CSV: dimension mismatch");
        for (int k = 0; k < ambient_dim; ++k)
            out << format_double(e.point.coords[k].real()) << ','
                << format_double(e.point.coords[k].imag()) << ',';
        for (int k = 0; k < ambient_dim; ++k)
            out << format_double(e.log.coords[k])
                << (k + 1 == ambient_dim ? "\n" : ",");
    }
}

void write_cloud_csv(const SampleCloud& cloud, int ambient_dim,
                     const std::string& path) {
    std::ofstream out = open_out(path);
    out << "t_re,t_im";
    for (int k = 1; k <= ambient_dim; ++k) out << ",x" << k;
    out << "\n";
    for (const auto& p : cloud.points) {
        if ((int)p.y.size() != ambient_dim)
            fail(ErrKind::DimensionMismatch, "cloud CSV: dimension mismatch");
        out << format_double(p.t.real()) << ',' << format_double(p.t.imag());
        for (int k = 0; k < ambient_dim; ++k)
            out << ',' << format_double(p.y[k]);
        out << "\n";
    }
}

void write_arg_csv(const ArgCloud& cloud, int ambient_dim,
                   const std::string& path) {
    std::ofstream out = open_out(path);
    for (int k = 1; k <= ambient_dim; ++k)
        out << "a" << k << (k == ambient_dim ? "\n" : ",");
    for (const auto& p : cloud.points) {
        if ((int)p.angles.size() != ambient_dim)
            fail(ErrKind::DimensionMismatch, "arg CSV: dimension mismatch");
        for (int k = 0; k < ambient_dim; ++k)
            out << format_double(p.angles[k])
                << (k + 1 == ambient_dim ? "\n" : ",");
    }
}

void write_fiber_csv(const FiberScanResult& scan, int ambient_dim,
                     const std::string& path) {
    std::ofstream out = open_out(path);
    out << "angle_index";
    for (int k = 1; k <= ambient_dim; ++k)
        out << ",c" << k << "_re,c" << k << "_im";
    out << ",radial_residual,f_residual\n";
    for (const auto& h : scan.hits) {
        if ((int)h.point.coords.size() != ambient_dim)
            fail(ErrKind::DimensionMismatch, "fiber CSV: dimension mismatch");
        out << h.angle_index;
        for (int k = 0; k < ambient_dim; ++k)
            out << ',' << format_double(h.point.coords[k].real()) << ','
                << format_double(h.point.coords[k].imag());
        out << ',' << format_double(h.radial_residual) << ','
            << format_double(h.f_residual) << "\n";
    }
}

// ---- grid RLE --------------------------------------------------------------

void write_grid_rle(const VoxelGrid& g, const std::string& rle_path,
                    const std::string& json_path) {
    {
        std::ofstream out = open_out(rle_path);
        std::size_t i = 0, tokens = 0;
        while (i < g.cell_count()) {
            bool bit = g.get_flat(i);
            std::size_t run = 1;
            while (i + run < g.cell_count() && g.get_flat(i + run) == bit)
                ++run;
            out << run << 'x' << (bit ? 1 : 0);
            i += run;
            ++tokens;
            out << (i == g.cell_count() || tokens % 16 == 0 ? '\n' : ' ');
        }
        if (g.cell_count() == 0) out << "\n";
    }
    nlohmann::ordered_json j;
    j["dim"] = g.dim();
    j["lo"] = g.box().lo;
    j["hi"] = g.box().hi;
    j["res"] = g.res();
    j["occupied"] = grid_count(g);
    j["total"] = g.cell_count();
    open_out(json_path) << j.dump(2) << "\n";
}

VoxelGrid read_grid_rle(const std::string& rle_path,
                        const std::string& json_path) {
    std::ifstream jin(json_path, std::ios::binary);
    if (!jin) fail(ErrKind::Io, "cannot open: " + json_path);
    nlohmann::json j;
    try {
        jin >> j;
    } catch (const std::exception& e) {
        fail(ErrKind::Parse, std::string("grid sidecar: ") + e.what());
    }
    Box box{j.at("lo").get<std::vector<double>>(),
            j.at("hi").get<std::vector<double>>()};
    VoxelGrid g(box, j.at("res").get<std::vector<int>>());

    std::ifstream in(rle_path, std::ios::binary);
    if (!in) fail(ErrKind::Io, "cannot open: " + rle_path);
    std::size_t i = 0;
    std::string tok;
    while (in >> tok) {
        std::size_t xpos = tok.find('x');
        if (xpos == std::string::npos || xpos == 0 || xpos + 2 != tok.size())
            fail(ErrKind::Parse, "grid RLE: bad token '" + tok + "'");
        std::size_t run = std::strtoull(tok.c_str(), nullptr, 10);
        char bit = tok[xpos + 1];
        if ((bit != '0' && bit != '1') || run == 0)
            fail(ErrKind::Parse, "grid RLE: bad token '" + tok + "'");
        if (i + run > g.cell_count())
            fail(ErrKind::Parse, "grid RLE: longer than the grid");
        if (bit == '1')
            for (std::size_t k = 0; k < run; ++k) g.set_flat(i + k, true);
        i += run;
    }
    if (i != g.cell_count())
        fail(ErrKind::Parse, "grid RLE: shorter than the grid");
    return g;
}

// ---- classification batches ------------------------------------------------

namespace {

const char* verdict_name(PointClass v) {
    switch (v) {
        case PointClass::Outside: return "outside";
        case PointClass::Interior: return "interior";
        case PointClass::Boundary: return "boundary";
        case PointClass::NonRegular: return "non_regular";
        case PointClass::Degenerate: return "degenerate";
    }
    return "?";
}

const char* hull_name(HullVerdict v) {
    switch (v) {
        case HullVerdict::Outside: return "outside";
        case HullVerdict::StrictlyInside: return "strictly_inside";
        case HullVerdict::OnBoundary: return "on_boundary";
    }
    return "?";
}

} // namespace

void classify_csv(const LaurentPolynomial& f, const std::string& in_path,
                  const std::string& out_path, const ClassifyParams& params) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) fail(ErrKind::Io, "cannot open: " + in_path);
    std::ofstream out = open_out(out_path);
    out << "x1,x2,verdict,cluster_count,hull,v1,v2,note\n";
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
            line.pop_back();
        if (line.empty()) continue;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            fail(ErrKind::Parse,
                 "classify input line " + std::to_string(lineno) +
                     ": expected 'x1,x2'");
        char* end1 = nullptr;
        char* end2 = nullptr;
        std::string s1 = line.substr(0, comma), s2 = line.substr(comma + 1);
        double x1 = std::strtod(s1.c_str(), &end1);
        double x2 = std::strtod(s2.c_str(), &end2);
        if (end1 == s1.c_str() || end2 == s2.c_str()) {
            if (lineno == 1) continue;  // header row
            fail(ErrKind::Parse, "classify input line " +
                                     std::to_string(lineno) +
                                     ": not numeric");
        }
        Classification c = classify_point(f, {x1, x2}, params);
        out << format_double(x1) << ',' << format_double(x2) << ','
            << verdict_name(c.verdict) << ',' << c.scan.clusters.size() << ',';
        if (!c.branches.empty()) {
            double v1 = 0, v2 = 0;
            for (const auto& b : c.branches) {
                v1 += b.inward_normal[0];
                v2 += b.inward_normal[1];
            }
            v1 /= c.branches.size();
            v2 /= c.branches.size();
            out << hull_name(c.hull) << ',' << format_double(v1) << ','
                << format_double(v2);
        } else {
            out << ",,";
        }
        out << ',' << c.note << "\n";
    }
}

} // namespace amoebascope
