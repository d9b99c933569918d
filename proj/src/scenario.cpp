// Registered end-to-end scenarios.  Each builds its inputs from literal
// definitions, runs the library pipeline, writes images + CSVs + a metrics
// JSON into the output directory, and returns the metrics text.  Everything
// downstream of (config, seed) is deterministic.

#include "amoebascope/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "json.hpp"

#include "amoebascope/algebra.hpp"
#include "amoebascope/boundary.hpp"
#include "amoebascope/csvio.hpp"
#include "amoebascope/parse.hpp"
#include "amoebascope/regions.hpp"
#include "amoebascope/render.hpp"

namespace amoebascope {

namespace {

using nlohmann::ordered_json;

// shared palette
constexpr RGB kBlue{70, 130, 220};
constexpr RGB kLightBlue{160, 200, 240};
constexpr RGB kRed{200, 40, 40};
constexpr RGB kGreen{30, 160, 60};
constexpr RGB kGray{150, 150, 150};
constexpr RGB kOrange{230, 140, 20};
constexpr RGB kPurple{140, 60, 180};
constexpr RGB kBlack{0, 0, 0};
constexpr RGB kMagenta{220, 60, 180};

double uniform01(std::mt19937_64& rng) {
    return (rng() >> 11) * 0x1.0p-53;
}

struct Ctx {
    ScenarioConfig cfg;
    std::filesystem::path dir;
    ordered_json metrics;

    std::string path(const std::string& name) const {
        return (dir / name).string();
    }
};

int or_default(int v, int dflt) {
    return v > 0 ? v : dflt;
}

Box window_or(const Ctx& ctx, int dim, double lo, double hi) {
    if (ctx.cfg.window.empty()) {
        Box b;
        b.lo.assign(dim, lo);
        b.hi.assign(dim, hi);
        return b;
    }
    if ((int)ctx.cfg.window.size() != 2 * dim)
        fail(ErrKind::InvalidArgument,
             "window: expected " + std::to_string(2 * dim) +
                 " numbers (lo1,hi1,...)");
    Box b;
    for (int k = 0; k < dim; ++k) {
        b.lo.push_back(ctx.cfg.window[2 * k]);
        b.hi.push_back(ctx.cfg.window[2 * k + 1]);
        if (!(b.lo[k] < b.hi[k]))
            fail(ErrKind::InvalidArgument,
                 "window: lo" + std::to_string(k + 1) + " >= hi" +
                     std::to_string(k + 1));
    }
    return b;
}

void metrics_envelope(Ctx& ctx, const Box& window) {
    ctx.metrics["schema_version"] = 1;
    ctx.metrics["scenario"] = ctx.cfg.name;
    ctx.metrics["seed"] = ctx.cfg.seed;
    ordered_json w = ordered_json::array();
    for (std::size_t k = 0; k < window.lo.size(); ++k) {
        w.push_back(window.lo[k]);
        w.push_back(window.hi[k]);
    }
    ctx.metrics["window"] = w;
}

std::string finish(Ctx& ctx) {
    std::string text = ctx.metrics.dump(2) + "\n";
    std::ofstream out(ctx.path("metrics.json"), std::ios::binary);
    if (!out) fail(ErrKind::Io, "cannot write metrics.json");
    out << text;
    return text;
}

// literal inputs shared by scenarios
RationalCurve line3_real() { return parse_curve("3; t; t + 1/2; t - 3/2"); }
RationalCurve line3_complex() { return parse_curve("3; t; t + 1; t - 2i"); }
RationalCurve hyperbola_graph() {
    return parse_curve("2; t; (-1/6 - t)/(1 + t)");
}
LaurentPolynomial hyperbola_poly() {
    return parse_polynomial("1/6 + z + w + z*w");
}
LaurentPolynomial line2_poly() { return parse_polynomial("1 + z + w"); }

std::vector<LaurentPolynomial> line3_generators() {
    return {parse_polynomial("z2 - z1 - 1/2", 3),
            parse_polynomial("z3 - z1 + 3/2", 3),
            parse_polynomial("z3 - z2 + 2", 3)};
}

std::vector<std::array<double, 3>> cloud_pts3(const SampleCloud& cloud) {
    std::vector<std::array<double, 3>> pts;
    pts.reserve(cloud.points.size());
    for (const auto& p : cloud.points) pts.push_back({p.y[0], p.y[1], p.y[2]});
    return pts;
}

// ---- 3D line scenarios -----------------------------------------------------

// Shared by the two line scenarios: pushforward cloud + contour of the
// parametrization, rendered as orthographic projections.
void run_line_cloud(Ctx& ctx, const RationalCurve& rho, bool audit_convexity) {
    Box window = window_or(ctx, 3, -4.0, 4.0);
    metrics_envelope(ctx, window);
    const int grid = or_default(ctx.cfg.grid, 240);
    const double lo_t = window.lo[0] - 1.0, hi_t = window.hi[0] + 1.0;

    SampleCloud cloud = pushforward_curve(rho, lo_t, hi_t, grid, grid);
    write_cloud_csv(cloud, 3, ctx.path("cloud.csv"));

    Box param{{lo_t}, {hi_t}};
    ContourCloud contour = curve_contour(rho, param, 200);
    write_contour_csv(contour, 3, ctx.path("contour.csv"));

    Scene3D scene;
    scene.window = window;
    scene.title = ctx.cfg.name + ": cloud " +
                  std::to_string(cloud.points.size()) + ", contour " +
                  std::to_string(contour.entries.size());
    Scene3D::Layer cl;
    cl.pts = cloud_pts3(cloud);
    cl.color = kLightBlue;
    cl.size = 1.0;
    cl.label = "log image cloud";
    scene.layers.push_back(std::move(cl));
    Scene3D::Layer ct;
    for (const auto& e : contour.entries)
        ct.pts.push_back({e.log.coords[0], e.log.coords[1], e.log.coords[2]});
    ct.color = kRed;
    ct.size = 1.8;
    ct.label = "contour";
    scene.layers.push_back(std::move(ct));
    render_projections_svg(scene, ctx.path("projections.svg"));
    render_projections_png(scene, ctx.path("projections.png"));

    ctx.metrics["grid"] = grid;
    ctx.metrics["sample_count"] = cloud.points.size();
    ctx.metrics["contour_count"] = contour.entries.size();

    if (audit_convexity) {
        // sweep seeded base points and tally local surface shapes
        std::mt19937_64 rng(ctx.cfg.seed);
        const double radius = 0.4;
        int saddles = 0, convex = 0, indeterminate = 0, audited = 0;
        std::ofstream audits(ctx.path("audits.csv"), std::ios::binary);
        if (!audits) fail(ErrKind::Io, "cannot write audits.csv");
        audits << "x1,x2,x3,lambda1,lambda2,fit_residual,samples,shape\n";
        for (int probe = 0; probe < 200; ++probe) {
            if (cloud.points.empty()) break;
            std::size_t i = (std::size_t)(uniform01(rng) * cloud.points.size());
            if (i >= cloud.points.size()) i = cloud.points.size() - 1;
            const auto& y = cloud.points[i].y;
            try {
                ConvexityAudit a =
                    convexity_audit(cloud, {y[0], y[1], y[2]}, radius);
                ++audited;
                const char* shape =
                    a.shape == PatchShape::Saddle
                        ? "saddle"
                        : a.shape == PatchShape::Convex ? "convex"
                                                        : "indeterminate";
                if (a.shape == PatchShape::Saddle) ++saddles;
                else if (a.shape == PatchShape::Convex) ++convex;
                else ++indeterminate;
                audits << format_double(y[0]) << ',' << format_double(y[1])
                       << ',' << format_double(y[2]) << ','
                       << format_double(a.eigenvalues[0]) << ','
                       << format_double(a.eigenvalues[1]) << ','
                       << format_double(a.fit_residual) << ','
                       << a.sample_count << ',' << shape << "\n";
            } catch (const Error& e) {
                if (e.kind() != ErrKind::InsufficientSamples &&
                    e.kind() != ErrKind::NonConvergence)
                    throw;
            }
        }
        ctx.metrics["audit_base_points"] = 200;
        ctx.metrics["audited"] = audited;
        ctx.metrics["saddle_count"] = saddles;
        ctx.metrics["convex_count"] = convex;
        ctx.metrics["indeterminate_count"] = indeterminate;
        ctx.metrics["audit_radius"] = radius;
    }
}

// ---- hyperbola raster scenario ---------------------------------------------

// the alternate pinch candidate tracked alongside the derived one
struct AltCandidate {
    double r;
    std::array<double, 2> x;
};

AltCandidate alt_pinch_candidate() {
    AltCandidate alt;
    alt.x = {-std::log(3.0) / 2.0, std::log((5.0 - std::sqrt(3.0)) / 8.0)};
    alt.r = std::exp(alt.x[0]);
    return alt;
}

void run_fig3(Ctx& ctx) {
    Box window = window_or(ctx, 2, -3.0, 3.0);
    metrics_envelope(ctx, window);
    const int res = or_default(ctx.cfg.res, 151);
    const int angles = or_default(ctx.cfg.angles, 360);
    const int grid = or_default(ctx.cfg.grid, 200);
    LaurentPolynomial f = hyperbola_poly();
    RationalCurve graph = hyperbola_graph();

    FiberScanParams scan;
    scan.angles = angles;
    VoxelGrid raster = rasterize_amoeba_2d(f, window, res, scan);
    write_grid_rle(raster, ctx.path("amoeba.rle"), ctx.path("amoeba.rle.json"));

    ContourParams cp;
    cp.grid = grid;
    ContourCloud contour = contour_cloud(f, window, cp);
    write_contour_csv(contour, 2, ctx.path("contour.csv"));

    PinchResult pinch = locate_pinch(graph, 0.1, 0.9);
    AltCandidate alt = alt_pinch_candidate();
    double alt_osc = circle_oscillation(graph, alt.r);

    ArgCloud argcrit = arg_critical_values(f, window, cp);
    write_arg_csv(argcrit, 2, ctx.path("arg_critical.csv"));
    ArgCloud coam = coamoeba_cloud(graph, window.lo[0] - 1.0,
                                   window.hi[0] + 1.0, grid, grid);
    write_arg_csv(coam, 2, ctx.path("coamoeba.csv"));

    // amoeba picture: raster + contour + both pinch candidates
    SceneSpec scene;
    scene.window = window;
    scene.title = "hyperbola amoeba; pinch r " + format_double(pinch.r_star);
    SceneLayer gridl;
    gridl.kind = SceneLayer::Kind::Grid;
    gridl.grid = &raster;
    gridl.color = kLightBlue;
    gridl.label = "amoeba raster";
    scene.layers.push_back(gridl);
    SceneLayer ctl;
    ctl.kind = SceneLayer::Kind::Points;
    for (const auto& e : contour.entries)
        ctl.pts.push_back({e.log.coords[0], e.log.coords[1]});
    ctl.color = kRed;
    ctl.size = 1.2;
    ctl.label = "contour";
    scene.layers.push_back(std::move(ctl));
    SceneLayer derived;
    derived.pts = {{pinch.x.coords[0], pinch.x.coords[1]}};
    derived.color = kBlack;
    derived.size = 5.0;
    derived.label = "pinch (derived)";
    scene.layers.push_back(std::move(derived));
    SceneLayer altl;
    altl.pts = {{alt.x[0], alt.x[1]}};
    altl.color = kMagenta;
    altl.size = 5.0;
    altl.label = "pinch (alternate candidate)";
    scene.layers.push_back(std::move(altl));
    render_svg(scene, ctx.path("amoeba.svg"));
    render_png(scene, ctx.path("amoeba.png"));

    // coamoeba picture on the angle torus
    SceneSpec cscene;
    cscene.window.lo = {-M_PI, -M_PI};
    cscene.window.hi = {M_PI, M_PI};
    cscene.title = "hyperbola coamoeba and argument critical values";
    SceneLayer cml;
    for (const auto& a : coam.points) cml.pts.push_back({a.angles[0], a.angles[1]});
    cml.color = kLightBlue;
    cml.size = 1.0;
    cml.label = "coamoeba cloud";
    cscene.layers.push_back(std::move(cml));
    SceneLayer acl;
    for (const auto& a : argcrit.points)
        acl.pts.push_back({a.angles[0], a.angles[1]});
    acl.color = kRed;
    acl.size = 1.6;
    acl.label = "arg critical values";
    cscene.layers.push_back(std::move(acl));
    render_svg(cscene, ctx.path("coamoeba.svg"));
    render_png(cscene, ctx.path("coamoeba.png"));

    ctx.metrics["res"] = res;
    ctx.metrics["angles"] = angles;
    ctx.metrics["grid"] = grid;
    ctx.metrics["raster_occupied"] = grid_count(raster);
    ctx.metrics["complement_components"] = complement_components(raster);
    ctx.metrics["contour_count"] = contour.entries.size();
    ctx.metrics["arg_critical_count"] = argcrit.points.size();
    ctx.metrics["coamoeba_count"] = coam.points.size();
    ctx.metrics["pinch_r"] = pinch.r_star;
    ctx.metrics["pinch_osc"] = pinch.oscillation;
    ctx.metrics["pinch_x"] = pinch.x.coords;
    ctx.metrics["alt_candidate_r"] = alt.r;
    ctx.metrics["alt_candidate_x"] = alt.x;
    ctx.metrics["alt_candidate_osc"] = alt_osc;
    ctx.metrics["note"] =
        "alternate candidate evaluated and reported alongside the derived "
        "pinch; derived result not altered";
}

// ---- pinch scenario --------------------------------------------------------

void run_pinch(Ctx& ctx) {
    Box rwin;  // oscillation is plotted over this radius window
    double r_lo = 0.1, r_hi = 0.9;
    if (!ctx.cfg.window.empty()) {
        if (ctx.cfg.window.size() != 2)
            fail(ErrKind::InvalidArgument,
                 "window: expected 2 numbers (r_lo,r_hi)");
        r_lo = ctx.cfg.window[0];
        r_hi = ctx.cfg.window[1];
        if (!(0 < r_lo && r_lo < r_hi))
            fail(ErrKind::InvalidArgument, "window: need 0 < r_lo < r_hi");
    }
    rwin.lo = {r_lo};
    rwin.hi = {r_hi};
    metrics_envelope(ctx, rwin);

    RationalCurve graph = hyperbola_graph();
    LaurentPolynomial f = hyperbola_poly();
    PinchResult pinch = locate_pinch(graph, r_lo, r_hi);
    AltCandidate alt = alt_pinch_candidate();
    double alt_osc = circle_oscillation(graph, alt.r);

    // oscillation curve
    const int samples = 200;
    std::vector<std::array<double, 2>> curve;
    double omax = 0;
    {
        std::ofstream csv(ctx.path("oscillation.csv"), std::ios::binary);
        if (!csv) fail(ErrKind::Io, "cannot write oscillation.csv");
        csv << "r,osc\n";
        for (int i = 0; i < samples; ++i) {
            double r = r_lo + (r_hi - r_lo) * i / (samples - 1);
            double o = circle_oscillation(graph, r);
            omax = std::max(omax, o);
            curve.push_back({r, o});
            csv << format_double(r) << ',' << format_double(o) << "\n";
        }
    }

    SceneSpec scene;
    scene.window.lo = {r_lo, -0.05 * omax};
    scene.window.hi = {r_hi, 1.05 * omax};
    scene.title = "modulus oscillation over circles |t| = r; min at r " +
                  format_double(pinch.r_star);
    SceneLayer curve_l;
    curve_l.kind = SceneLayer::Kind::Polyline;
    curve_l.pts = curve;
    curve_l.color = kBlue;
    curve_l.size = 1.5;
    curve_l.label = "osc(r)";
    scene.layers.push_back(std::move(curve_l));
    SceneLayer derived;
    derived.pts = {{pinch.r_star, pinch.oscillation}};
    derived.color = kBlack;
    derived.size = 5.0;
    derived.label = "derived minimum";
    scene.layers.push_back(std::move(derived));
    SceneLayer altl;
    altl.pts = {{alt.r, alt_osc}};
    altl.color = kMagenta;
    altl.size = 5.0;
    altl.label = "alternate candidate";
    scene.layers.push_back(std::move(altl));
    render_svg(scene, ctx.path("oscillation.svg"));
    render_png(scene, ctx.path("oscillation.png"));

    // fiber structure over the derived pinch
    FiberScanParams scan;
    scan.angles = 720;
    FiberScanResult fiber =
        fiber_scan(f, {pinch.x.coords[0], pinch.x.coords[1]}, scan);
    write_fiber_csv(fiber, 2, ctx.path("pinch_fiber.csv"));

    ctx.metrics["r_star"] = pinch.r_star;
    ctx.metrics["oscillation"] = pinch.oscillation;
    ctx.metrics["x_pinch"] = pinch.x.coords;
    ctx.metrics["alt_candidate_r"] = alt.r;
    ctx.metrics["alt_candidate_x"] = alt.x;
    ctx.metrics["alt_candidate_osc"] = alt_osc;
    ctx.metrics["fiber_angles"] = fiber.angles;
    ctx.metrics["fiber_angles_with_hits"] = fiber.angles_with_hits;
    ctx.metrics["fiber_dimension"] =
        fiber.dimension_estimate == FiberDim::PositiveDimensional
            ? "positive_dimensional"
            : fiber.dimension_estimate == FiberDim::Finite ? "finite" : "empty";
    ctx.metrics["note"] =
        "alternate candidate evaluated and reported alongside the derived "
        "pinch; derived result not altered";
}

// ---- basis gap -------------------------------------------------------------

void run_basis_gap(Ctx& ctx) {
    Box window = window_or(ctx, 3, -4.0, 4.0);
    metrics_envelope(ctx, window);

    BasisGapParams params;
    params.res = or_default(ctx.cfg.res, 64);
    params.raster_angles = or_default(ctx.cfg.angles, 360);
    params.cloud_radii = or_default(ctx.cfg.grid, 1024);
    params.cloud_angles = params.cloud_radii;
    params.seed = ctx.cfg.seed;

    RationalCurve rho = line3_real();
    std::vector<LaurentPolynomial> gens = line3_generators();
    BasisGapReport rep = basis_gap_report(rho, gens, window, params);
    {
        std::ofstream out(ctx.path("basis_gap.json"), std::ios::binary);
        if (!out) fail(ErrKind::Io, "cannot write basis_gap.json");
        out << basis_gap_to_json(rep);
    }

    // calibration: a hypersurface is its own basis, so the same pipeline on
    // the hyperbola graph vs its defining polynomial measures raster noise
    Box w2;
    w2.lo = {-3.0, -3.0};
    w2.hi = {3.0, 3.0};
    BasisGapParams p2 = params;
    p2.cloud_radii = std::min(params.cloud_radii, 512);
    p2.cloud_angles = p2.cloud_radii;
    BasisGapReport self =
        basis_gap_report(hyperbola_graph(), {hyperbola_poly()}, w2, p2);

    // witness overlay over the cloud projections
    SampleCloud cloud =
        pushforward_curve(rho, window.lo[0] - params.logt_margin,
                          window.hi[0] + params.logt_margin, 512, 512);
    Scene3D scene;
    scene.window = window;
    scene.title = "generator-intersection gap ratio " +
                  format_double(rep.gap_ratio);
    Scene3D::Layer cl;
    cl.pts = cloud_pts3(cloud);
    cl.color = kLightBlue;
    cl.size = 1.0;
    cl.label = "curve cloud";
    scene.layers.push_back(std::move(cl));
    Scene3D::Layer wl;
    for (const auto& w : rep.witnesses) wl.pts.push_back({w[0], w[1], w[2]});
    wl.color = kRed;
    wl.size = 4.0;
    wl.label = "gap witnesses";
    scene.layers.push_back(std::move(wl));
    render_projections_svg(scene, ctx.path("witnesses.svg"));
    render_projections_png(scene, ctx.path("witnesses.png"));

    auto report_json = [](const BasisGapReport& r) {
        ordered_json j;
        j["generator_counts"] = r.generator_counts;
        j["intersection_count"] = r.intersection_count;
        j["amoeba_count"] = r.amoeba_count;
        j["difference_count"] = r.difference_count;
        j["gap_ratio"] = r.gap_ratio;
        j["witnesses"] = r.witnesses;
        return j;
    };
    ctx.metrics["res"] = params.res;
    ctx.metrics["cloud_grid"] = params.cloud_radii;
    ctx.metrics["line_experiment"] = report_json(rep);
    ctx.metrics["hypersurface_self_test"] = report_json(self);
    ctx.metrics["noise_floor"] = self.gap_ratio;
    ctx.metrics["gap_exceeds_noise"] = rep.gap_ratio > self.gap_ratio;
    return;
}

// ---- boundary demo ---------------------------------------------------------

void run_boundary_demo(Ctx& ctx) {
    Box window = window_or(ctx, 2, -3.0, 3.0);
    metrics_envelope(ctx, window);
    const int res = or_default(ctx.cfg.res, 101);
    const int angles = or_default(ctx.cfg.angles, 360);
    LaurentPolynomial f = line2_poly();

    // query set: points on both boundary arcs plus interior/outside controls
    std::vector<std::array<double, 2>> queries;
    for (int i = 0; i < 20; ++i) {
        double x1 = -2.0 + 4.0 * i / 19.0;
        queries.push_back({x1, std::log(1.0 + std::exp(x1))});
    }
    queries.push_back({std::log(0.5), std::log(0.5)});
    queries.push_back({0.0, 0.0});
    queries.push_back({5.0, 0.0});
    {
        std::ofstream q(ctx.path("queries.csv"), std::ios::binary);
        if (!q) fail(ErrKind::Io, "cannot write queries.csv");
        q << "x1,x2\n";
        for (const auto& p : queries)
            q << format_double(p[0]) << ',' << format_double(p[1]) << "\n";
    }
    ClassifyParams cp;
    cp.regularity.scan.angles = angles;
    classify_csv(f, ctx.path("queries.csv"), ctx.path("classified.csv"), cp);

    FiberScanParams scan;
    scan.angles = angles;
    VoxelGrid raster = rasterize_amoeba_2d(f, window, res, scan);

    // color-coded classification picture
    SceneSpec scene;
    scene.window = window;
    scene.title = "line amoeba with classified query points";
    SceneLayer gridl;
    gridl.kind = SceneLayer::Kind::Grid;
    gridl.grid = &raster;
    gridl.color = kLightBlue;
    gridl.label = "amoeba raster";
    scene.layers.push_back(gridl);
    SceneLayer boundary, interior, outside, nonregular, degenerate;
    boundary.color = kRed;
    boundary.label = "boundary";
    interior.color = kGreen;
    interior.label = "interior";
    outside.color = kGray;
    outside.label = "outside";
    nonregular.color = kOrange;
    nonregular.label = "non-regular";
    degenerate.color = kPurple;
    degenerate.label = "degenerate";
    for (auto* l : {&boundary, &interior, &outside, &nonregular, &degenerate})
        l->size = 3.0;

    int counts[5] = {0, 0, 0, 0, 0};
    for (const auto& p : queries) {
        Classification c = classify_point(f, {p[0], p[1]}, cp);
        switch (c.verdict) {
            case PointClass::Boundary:
                boundary.pts.push_back(p);
                ++counts[0];
                break;
            case PointClass::Interior:
                interior.pts.push_back(p);
                ++counts[1];
                break;
            case PointClass::Outside:
                outside.pts.push_back(p);
                ++counts[2];
                break;
            case PointClass::NonRegular:
                nonregular.pts.push_back(p);
                ++counts[3];
                break;
            case PointClass::Degenerate:
                degenerate.pts.push_back(p);
                ++counts[4];
                break;
        }
    }
    for (auto* l : {&boundary, &interior, &outside, &nonregular, &degenerate})
        scene.layers.push_back(std::move(*l));
    render_svg(scene, ctx.path("classified.svg"));
    render_png(scene, ctx.path("classified.png"));

    ctx.metrics["res"] = res;
    ctx.metrics["angles"] = angles;
    ctx.metrics["query_count"] = queries.size();
    ctx.metrics["boundary_count"] = counts[0];
    ctx.metrics["interior_count"] = counts[1];
    ctx.metrics["outside_count"] = counts[2];
    ctx.metrics["non_regular_count"] = counts[3];
    ctx.metrics["degenerate_count"] = counts[4];
}

} // namespace

std::vector<std::string> scenario_names() {
    return {"fig1_real_line", "fig2_complex_line", "fig3_hyperbola",
            "pinch_locate",   "basis_gap",         "boundary_demo"};
}

std::string run_scenario(const ScenarioConfig& config) {
    Ctx ctx;
    ctx.cfg = config;
    if (config.res < 0 || config.angles < 0 || config.grid < 0)
        fail(ErrKind::InvalidArgument, "res/angles/grid: must be >= 0");
    ctx.dir = config.out_dir.empty() ? "." : config.out_dir;
    std::error_code ec;
    std::filesystem::create_directories(ctx.dir, ec);
    if (ec) fail(ErrKind::Io, "cannot create output dir: " + ec.message());

    if (config.name == "fig1_real_line")
        run_line_cloud(ctx, line3_real(), false);
    else if (config.name == "fig2_complex_line")
        run_line_cloud(ctx, line3_complex(), true);
    else if (config.name == "fig3_hyperbola")
        run_fig3(ctx);
    else if (config.name == "pinch_locate")
        run_pinch(ctx);
    else if (config.name == "basis_gap")
        run_basis_gap(ctx);
    else if (config.name == "boundary_demo")
        run_boundary_demo(ctx);
    else
        fail(ErrKind::UnknownScenario, "unknown scenario: " + config.name);
    return finish(ctx);
}

ScenarioConfig config_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        fail(ErrKind::Parse, std::string("config: ") + e.what());
    }
    if (!j.is_object()) fail(ErrKind::Parse, "config: expected an object");
    ScenarioConfig cfg;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "name") cfg.name = value.get<std::string>();
            else if (key == "out_dir") cfg.out_dir = value.get<std::string>();
            else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
            else if (key == "res") cfg.res = value.get<int>();
            else if (key == "angles") cfg.angles = value.get<int>();
            else if (key == "grid") cfg.grid = value.get<int>();
            else if (key == "window")
                cfg.window = value.get<std::vector<double>>();
            else
                fail(ErrKind::Parse, "config: unknown key '" + key + "'");
        } catch (const nlohmann::json::exception& e) {
            fail(ErrKind::Parse, "config." + key + ": " + e.what());
        }
    }
    if (cfg.name.empty()) fail(ErrKind::Parse, "config.name: required");
    return cfg;
}

} // namespace amoebascope
