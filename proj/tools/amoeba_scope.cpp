// amoeba-scope CLI.  Thin shell over the C API: parses arguments, merges the
// optional JSON config with command-line overrides, and maps status codes to
// exit codes (0 ok, 2 validation, 3 numeric failure).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "amoebascope.h"

namespace {

using nlohmann::json;

int exit_code(int rc) {
    switch (rc) {
        case ASC_OK:
            return 0;
        case ASC_ERR_INVALID:
        case ASC_ERR_PARSE:
        case ASC_ERR_DIMENSION:
        case ASC_ERR_GRID_MISMATCH:
        case ASC_ERR_NOT_IN_IDEAL:
        case ASC_ERR_UNKNOWN_SCENARIO:
        case ASC_ERR_UNSUPPORTED:
        case ASC_ERR_IO:
            return 2;
        default:
            return 3;  // numeric / convergence failure
    }
}

int report(int rc) {
    if (rc != ASC_OK) std::fprintf(stderr, "error: %s\n", asc_last_error());
    return exit_code(rc);
}

std::vector<double> parse_csv_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            double v = std::stod(item, &pos);
            while (pos < item.size() && std::isspace((unsigned char)item[pos]))
                ++pos;
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw CLI::ValidationError("expected comma-separated numbers, got '" +
                                       text + "'");
        }
    }
    return out;
}

struct PolyHandle {
    asc_poly* p = nullptr;
    ~PolyHandle() { asc_poly_free(p); }
};
struct CurveHandle {
    asc_curve* c = nullptr;
    ~CurveHandle() { asc_curve_free(c); }
};

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir + "/" + name;
}

// The scenario runner makes its own out_dir; the single-file subcommands
// write through bare streams, so create the parent here.
void ensure_parent(const std::string& file_path) {
    std::filesystem::path p(file_path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
}

const char* class_name(int cls) {
    switch (cls) {
        case ASC_CLASS_OUTSIDE: return "outside";
        case ASC_CLASS_INTERIOR: return "interior";
        case ASC_CLASS_BOUNDARY: return "boundary";
        case ASC_CLASS_NONREGULAR: return "non_regular";
        case ASC_CLASS_DEGENERATE: return "degenerate";
    }
    return "?";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"amoeba-scope: amoebas, coamoebas and contours of plane and "
                 "space curves"};
    app.require_subcommand(1);

    // shared option storage
    std::string config_file, out_dir, poly_text, curve_text, in_csv, out_csv;
    std::string window_text, point_text, scenario_name;
    std::uint64_t seed = 0;
    int res = 0, angles = 0, grid = 0;
    bool list_scenarios = false;
    std::vector<std::string> gens;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_file, "JSON config file");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "RNG seed");
        sub->add_option("--res", res, "raster resolution");
        sub->add_option("--angles", angles, "fiber scan angles");
        sub->add_option("--window", window_text,
                        "window as lo1,hi1,lo2,hi2[,lo3,hi3]");
    };

    CLI::App* sc = app.add_subcommand("scenario", "run a registered scenario");
    sc->add_option("name", scenario_name, "scenario name");
    sc->add_option("--grid", grid, "sampling grid");
    sc->add_flag("--list", list_scenarios, "list registered scenarios");
    add_common(sc);

    CLI::App* cl = app.add_subcommand("classify",
                                      "classify points against an amoeba");
    cl->add_option("poly", poly_text, "polynomial literal")->required();
    cl->add_option("--in", in_csv, "input CSV of x1,x2 rows");
    cl->add_option("--out-file", out_csv, "output CSV path");
    cl->add_option("--point", point_text, "single point x1,x2");
    add_common(cl);

    CLI::App* ra = app.add_subcommand("raster", "membership raster to RLE");
    ra->add_option("poly", poly_text, "polynomial literal")->required();
    add_common(ra);

    CLI::App* co = app.add_subcommand("contour", "contour sweep to CSV");
    co->add_option("poly", poly_text, "polynomial literal");
    co->add_option("--curve", curve_text, "parametrized curve literal");
    co->add_option("--grid", grid, "sweep grid");
    add_common(co);

    CLI::App* pi = app.add_subcommand("pinch", "locate a pinching radius");
    pi->add_option("curve", curve_text, "parametrized curve literal")
        ->required();
    add_common(pi);

    CLI::App* bg = app.add_subcommand("basis-gap",
                                      "generator intersection gap report");
    bg->add_option("curve", curve_text, "parametrized curve literal")
        ->required();
    bg->add_option("--gen", gens, "generator polynomial (repeatable)");
    add_common(bg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::vector<double> window;
    if (!window_text.empty()) {
        try {
            window = parse_csv_doubles(window_text);
        } catch (const CLI::Error& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return 2;
        }
    }

    if (sc->parsed()) {
        if (list_scenarios) {
            char buf[4096];
            if (int rc = asc_scenario_list(buf, sizeof buf)) return report(rc);
            std::fputs(buf, stdout);
            return 0;
        }
        json cfg = json::object();
        if (!config_file.empty()) {
            std::ifstream in(config_file, std::ios::binary);
            if (!in) {
                std::fprintf(stderr, "error: cannot read %s\n",
                             config_file.c_str());
                return 2;
            }
            std::stringstream ss;
            ss << in.rdbuf();
            try {
                cfg = json::parse(ss.str());
            } catch (const std::exception& e) {
                std::fprintf(stderr, "error: %s: %s\n", config_file.c_str(),
                             e.what());
                return 2;
            }
        }
        if (!scenario_name.empty()) cfg["name"] = scenario_name;
        if (!cfg.contains("name") || !cfg["name"].is_string() ||
            cfg["name"].get<std::string>().empty()) {
            std::fprintf(stderr,
                         "error: scenario name required (argument or config)\n");
            return 2;
        }
        if (!out_dir.empty()) cfg["out_dir"] = out_dir;
        if (seed != 0) cfg["seed"] = seed;
        if (res != 0) cfg["res"] = res;
        if (angles != 0) cfg["angles"] = angles;
        if (grid != 0) cfg["grid"] = grid;
        if (!window.empty()) cfg["window"] = window;
        std::string name = cfg["name"].get<std::string>();
        std::string cfg_text = cfg.dump();
        std::vector<char> metrics(1 << 20);
        int rc = asc_scenario_run(name.c_str(), cfg_text.c_str(), nullptr, 0,
                                  metrics.data(), metrics.size());
        if (rc != ASC_OK) return report(rc);
        std::fputs(metrics.data(), stdout);
        return 0;
    }

    if (cl->parsed()) {
        PolyHandle poly;
        if (int rc = asc_poly_parse(poly_text.c_str(), &poly.p))
            return report(rc);
        if (!point_text.empty()) {
            std::vector<double> pt;
            try {
                pt = parse_csv_doubles(point_text);
            } catch (const CLI::Error& e) {
                std::fprintf(stderr, "error: %s\n", e.what());
                return 2;
            }
            if (pt.size() != 2) {
                std::fprintf(stderr, "error: --point needs x1,x2\n");
                return 2;
            }
            int cls = 0;
            double normal[2] = {0, 0};
            if (int rc = asc_classify(poly.p, pt[0], pt[1], &cls, normal))
                return report(rc);
            std::printf("%s %.17g %.17g\n", class_name(cls), normal[0],
                        normal[1]);
            return 0;
        }
        if (in_csv.empty()) {
            std::fprintf(stderr, "error: need --in CSV or --point x1,x2\n");
            return 2;
        }
        std::string dest = out_csv.empty()
                               ? join_path(out_dir, "classified.csv")
                               : out_csv;
        ensure_parent(dest);
        if (int rc = asc_classify_csv(poly.p, in_csv.c_str(), dest.c_str()))
            return report(rc);
        std::printf("%s\n", dest.c_str());
        return 0;
    }

    if (ra->parsed()) {
        PolyHandle poly;
        if (int rc = asc_poly_parse(poly_text.c_str(), &poly.p))
            return report(rc);
        double w[4] = {-3, 3, -3, 3};
        if (!window.empty()) {
            if (window.size() != 4) {
                std::fprintf(stderr, "error: raster window needs 4 numbers\n");
                return 2;
            }
            for (int i = 0; i < 4; ++i) w[i] = window[i];
        }
        std::string prefix = join_path(out_dir, "amoeba");
        ensure_parent(prefix);
        if (int rc = asc_raster(poly.p, w, res > 0 ? res : 101,
                                angles > 0 ? angles : 360, prefix.c_str()))
            return report(rc);
        std::printf("%s.rle\n%s.json\n", prefix.c_str(), prefix.c_str());
        return 0;
    }

    if (co->parsed()) {
        double w[4] = {-3, 3, -3, 3};
        if (!window.empty()) {
            if (window.size() != 4) {
                std::fprintf(stderr, "error: contour window needs 4 numbers\n");
                return 2;
            }
            for (int i = 0; i < 4; ++i) w[i] = window[i];
        }
        std::string dest = join_path(out_dir, "contour.csv");
        ensure_parent(dest);
        if (!curve_text.empty()) {
            CurveHandle curve;
            if (int rc = asc_curve_parse(curve_text.c_str(), &curve.c))
                return report(rc);
            if (window.empty()) {
                w[0] = -5; w[1] = 5; w[2] = -3.15; w[3] = 3.15;
            }
            if (int rc = asc_curve_contour_csv(curve.c, w, grid, dest.c_str()))
                return report(rc);
        } else if (!poly_text.empty()) {
            PolyHandle poly;
            if (int rc = asc_poly_parse(poly_text.c_str(), &poly.p))
                return report(rc);
            if (int rc = asc_contour_csv(poly.p, w, grid, dest.c_str()))
                return report(rc);
        } else {
            std::fprintf(stderr, "error: need a polynomial or --curve\n");
            return 2;
        }
        std::printf("%s\n", dest.c_str());
        return 0;
    }

    if (pi->parsed()) {
        CurveHandle curve;
        if (int rc = asc_curve_parse(curve_text.c_str(), &curve.c))
            return report(rc);
        double r_lo = 0.1, r_hi = 0.9;
        if (!window.empty()) {
            if (window.size() != 2) {
                std::fprintf(stderr, "error: pinch window needs r_lo,r_hi\n");
                return 2;
            }
            r_lo = window[0];
            r_hi = window[1];
        }
        double out5[5];
        if (int rc = asc_pinch_locate(curve.c, r_lo, r_hi, out5))
            return report(rc);
        json j;
        j["r_star"] = out5[0];
        j["oscillation"] = out5[1];
        j["x"] = {out5[2], out5[3]};
        std::printf("%s\n", j.dump(2).c_str());
        return 0;
    }

    if (bg->parsed()) {
        CurveHandle curve;
        if (int rc = asc_curve_parse(curve_text.c_str(), &curve.c))
            return report(rc);
        int dim = 0;
        if (int rc = asc_curve_dim(curve.c, &dim)) return report(rc);
        if (gens.empty()) {
            std::fprintf(stderr, "error: need at least one --gen\n");
            return 2;
        }
        std::vector<double> w(window);
        if (w.empty()) w.assign({-4, 4, -4, 4, -4, 4});
        if ((int)w.size() != 2 * dim) {
            std::fprintf(stderr, "error: window needs %d numbers\n", 2 * dim);
            return 2;
        }
        std::vector<const char*> gen_ptrs;
        for (const auto& g : gens) gen_ptrs.push_back(g.c_str());
        std::string dest = join_path(out_dir, "basis_gap.json");
        ensure_parent(dest);
        if (int rc = asc_basis_gap(curve.c, gen_ptrs.data(),
                                   (int)gen_ptrs.size(), w.data(),
                                   res > 0 ? res : 64, 1, dest.c_str()))
            return report(rc);
        std::ifstream in(dest, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        std::fputs(ss.str().c_str(), stdout);
        return 0;
    }

    return 2;
}
