// Acceptance gate: one line per criterion, pinned tolerances, no doctest
// machinery.  Every check is against an independent oracle or a frozen
// expected value; failures print their measured numbers and are never
// downgraded.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "amoebascope/boundary.hpp"
#include "amoebascope/contour.hpp"
#include "amoebascope/csvio.hpp"
#include "amoebascope/fibers.hpp"
#include "amoebascope/parse.hpp"
#include "amoebascope/regions.hpp"
#include "amoebascope/scenario.hpp"

using namespace amoebascope;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int index, bool pass, const std::string& what,
            const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", index,
                what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

template <typename Fn>
void criterion(int index, const std::string& what, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        report(index, false, what, std::string("exception: ") + e.what());
    }
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---- shared fixtures -------------------------------------------------------

LaurentPolynomial line_poly() { return parse_polynomial("1 + z + w"); }
LaurentPolynomial hyperbola() { return parse_polynomial("1/6 + z + w + z*w"); }
RationalCurve space_line() { return parse_curve("3; t; t + 1/2; t - 3/2"); }
RationalCurve complex_line() { return parse_curve("3; t; t + 1; t - 2i"); }
RationalCurve graph_curve() { return parse_curve("2; t; (-1/6 - t)/(1 + t)"); }

const double kPinchR = 0.4082482904638630;   // 6^{-1/2}
const double kPinchX = -0.8958797346140275;  // log of it
const double kFiberIm = 9.746794344808963 / 12.0;  // sqrt(95)/12

bool line_member_oracle(double x1, double x2) {
    double a = std::exp(x1), b = std::exp(x2);
    return b <= 1 + a && a <= 1 + b && 1 <= a + b;
}

// dense polylines along the three boundary arcs of the 1+z+w amoeba
std::vector<std::array<double, 2>> line_boundary_samples() {
    std::vector<std::array<double, 2>> pts;
    const int N = 8000;
    for (int i = 0; i <= N; ++i) {
        double u = -4.5 + 9.0 * i / N;
        pts.push_back({u, std::log(1 + std::exp(u))});   // e^x2 = 1 + e^x1
        pts.push_back({std::log(1 + std::exp(u)), u});   // e^x1 = 1 + e^x2
        if (u < -1e-3) {
            double v = std::log(1 - std::exp(u));        // e^x1 + e^x2 = 1
            pts.push_back({u, v});
        }
    }
    return pts;
}

double dist_to_samples(const std::vector<std::array<double, 2>>& pts,
                       double x, double y) {
    double best = 1e300;
    for (const auto& p : pts)
        best = std::min(best, std::hypot(p[0] - x, p[1] - y));
    return best;
}

// support-sampling oracles reused by criterion 10
double hull_oracle(const std::vector<std::vector<double>>& vs, int dim) {
    double best = 1e300;
    if (dim == 2) {
        const int N = 4096;
        for (int k = 0; k < N; ++k) {
            double a = 2 * M_PI * k / N;
            double h = -1e300;
            for (const auto& v : vs)
                h = std::max(h, std::cos(a) * v[0] + std::sin(a) * v[1]);
            best = std::min(best, h);
        }
    } else {
        const int N = 8000;
        const double ga = M_PI * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < N; ++k) {
            double y = 1.0 - 2.0 * (k + 0.5) / N;
            double r = std::sqrt(std::max(0.0, 1.0 - y * y));
            double ux = std::cos(ga * k) * r, uz = std::sin(ga * k) * r;
            double h = -1e300;
            for (const auto& v : vs)
                h = std::max(h, ux * v[0] + y * v[1] + uz * v[2]);
            best = std::min(best, h);
        }
    }
    return best;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double torus_dist2(double a1, double a2, double b1, double b2) {
    return std::hypot(normalize_angle(a1 - b1), normalize_angle(a2 - b2));
}

} // namespace

// ---- criteria --------------------------------------------------------------

void criterion1() {
    const std::string what =
        "line amoeba raster agrees with the triangle-inequality oracle";
    double t0 = now_seconds();
    LaurentPolynomial f = line_poly();
    Box w;
    w.lo = {-3, -3};
    w.hi = {3, 3};
    const int res = 101;
    FiberScanParams params;
    params.angles = 360;
    VoxelGrid g = rasterize_amoeba_2d(f, w, res, params);
    double elapsed = now_seconds() - t0;

    std::vector<std::array<double, 2>> arcs = line_boundary_samples();
    double pitch = g.pitch(0);
    int compared = 0, wrong = 0;
    for (int i = 0; i < res; ++i)
        for (int j = 0; j < res; ++j) {
            std::vector<double> c = g.cell_center({i, j});
            if (dist_to_samples(arcs, c[0], c[1]) < pitch) continue;
            ++compared;
            if (g.get({i, j}) != line_member_oracle(c[0], c[1])) ++wrong;
        }
    bool pass = wrong == 0 && elapsed < 10.0 && compared > res * res / 2;
    report(1, pass, what,
           "compared " + std::to_string(compared) + " cells, " +
               std::to_string(wrong) + " disagreements, " + fmt(elapsed) +
               " s");
}

void criterion2() {
    const std::string what =
        "upper-arc points classify Boundary with the analytic normal";
    double t0 = now_seconds();
    LaurentPolynomial f = line_poly();
    int bad_class = 0;
    double worst_angle = 0;
    for (int i = 0; i < 20; ++i) {
        double x1 = -2.0 + 4.0 * i / 19.0;
        double x2 = std::log(1 + std::exp(x1));
        Classification c = classify_point(f, {x1, x2});
        if (c.verdict != PointClass::Boundary || c.branches.empty()) {
            ++bad_class;
            continue;
        }
        double v0 = 0, v1 = 0;
        for (const auto& b : c.branches) {
            v0 += b.inward_normal[0];
            v1 += b.inward_normal[1];
        }
        double s = std::hypot(v0, v1);
        double e = std::exp(x1);
        double nx = e / (1 + e), ny = -1;
        double ns = std::hypot(nx, ny);
        double dot = (v0 * nx + v1 * ny) / (s * ns);
        dot = std::max(-1.0, std::min(1.0, dot));
        worst_angle = std::max(worst_angle, std::acos(dot));
    }
    bool interior_ok =
        classify_point(f, {0.0, 0.0}).verdict == PointClass::Interior;
    bool outside_ok =
        classify_point(f, {5.0, 0.0}).verdict == PointClass::Outside;
    double elapsed = now_seconds() - t0;
    bool pass = bad_class == 0 && worst_angle < 5.0 * M_PI / 180 &&
                interior_ok && outside_ok && elapsed < 5.0;
    report(2, pass, what,
           std::to_string(bad_class) + " misclassified, worst normal off " +
               fmt(worst_angle * 180 / M_PI) + " deg, interior " +
               (interior_ok ? "ok" : "WRONG") + ", outside " +
               (outside_ok ? "ok" : "WRONG") + ", " + fmt(elapsed) + " s");
}

void criterion3() {
    const std::string what =
        "hyperbola fiber over the log origin: 2 clusters at -7/12 +- i sqrt95/12";
    FiberScanParams params;
    params.angles = 720;
    FiberScanResult r = fiber_scan(hyperbola(), {0.0, 0.0}, params);
    bool count_ok = r.clusters.size() == 2;
    double err = 1e300;
    if (count_ok) {
        cplx lo(-7.0 / 12, -kFiberIm), hi(-7.0 / 12, kFiberIm);
        err = std::max(std::abs(r.clusters[0].representative.coords[0] - lo),
                       std::abs(r.clusters[1].representative.coords[0] - hi));
    }
    bool pass = count_ok && err < 1e-6;
    report(3, pass, what,
           std::to_string(r.clusters.size()) + " clusters, max error " +
               fmt(err));
}

void criterion4() {
    const std::string what =
        "pinch at r = 6^{-1/2} with a full positive-dimensional fiber";
    PinchResult p = locate_pinch(graph_curve(), 0.1, 0.9);
    double r_err = std::abs(p.r_star - kPinchR);

    FiberScanParams params;
    params.angles = 720;
    FiberScanResult fiber =
        fiber_scan(hyperbola(), {p.x.coords[0], p.x.coords[1]}, params);
    bool posdim = fiber.dimension_estimate == FiberDim::PositiveDimensional;
    bool full = fiber.angles_with_hits == fiber.angles;

    // the scenario must additionally record the alternate candidate without
    // moving the derived answer
    ScenarioConfig cfg;
    cfg.name = "pinch_locate";
    cfg.out_dir = "acceptance_out/pinch";
    nlohmann::json m = nlohmann::json::parse(run_scenario(cfg));
    double alt1 = m["alt_candidate_x"][0].get<double>();
    double alt2 = m["alt_candidate_x"][1].get<double>();
    double alt_osc = m["alt_candidate_osc"].get<double>();
    bool alt_ok = std::abs(alt1 - (-0.5493061443340549)) < 1e-9 &&
                  std::abs(alt2 - (-0.8952789117946357)) < 1e-9 &&
                  alt_osc > 0.4 && alt_osc < 0.6;  // exact value: 1/2
    bool derived_kept =
        std::abs(m["r_star"].get<double>() - p.r_star) < 1e-12;

    bool pass = r_err < 1e-6 && p.oscillation < 1e-8 && posdim && full &&
                alt_ok && derived_kept;
    report(4, pass, what,
           "r err " + fmt(r_err) + ", osc " + fmt(p.oscillation) + ", fiber " +
               (posdim ? "posdim" : "NOT posdim") + " " +
               std::to_string(fiber.angles_with_hits) + "/" +
               std::to_string(fiber.angles) + " angles, alternate recorded " +
               (alt_ok ? "ok" : "WRONG"));
}

void criterion5() {
    const std::string what = "gauss degrees match the shoelace oracle";
    auto shoelace = [](const LaurentPolynomial& f) {
        NewtonPolytope np = newton_polytope(f);
        // order vertices by angle around the centroid, then shoelace
        double cx = 0, cy = 0;
        for (const auto& v : np.vertices) {
            cx += v[0];
            cy += v[1];
        }
        cx /= (double)np.vertices.size();
        cy /= (double)np.vertices.size();
        std::vector<std::array<double, 2>> ring;
        for (const auto& v : np.vertices) ring.push_back({(double)v[0], (double)v[1]});
        std::sort(ring.begin(), ring.end(),
                  [&](const std::array<double, 2>& a,
                      const std::array<double, 2>& b) {
                      return std::atan2(a[1] - cy, a[0] - cx) <
                             std::atan2(b[1] - cy, b[0] - cx);
                  });
        double two_a = 0;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const auto& a = ring[i];
            const auto& b = ring[(i + 1) % ring.size()];
            two_a += a[0] * b[1] - b[0] * a[1];
        }
        return (long long)std::llround(std::abs(two_a));
    };
    long long d_line = gauss_degree(line_poly());
    long long d_hyp = gauss_degree(hyperbola());
    bool pass = d_line == 1 && d_hyp == 2 &&
                shoelace(line_poly()) == d_line && shoelace(hyperbola()) == d_hyp;
    report(5, pass, what,
           "line " + std::to_string(d_line) + ", hyperbola " +
               std::to_string(d_hyp));
}

void criterion6() {
    const std::string what =
        "pushforward samples of the space line lie in all generator cylinders";
    RationalCurve line = space_line();
    std::vector<LaurentPolynomial> gens{
        parse_polynomial("z2 - z1 - 1/2", 3),
        parse_polynomial("z3 - z1 + 3/2", 3),
        parse_polynomial("z3 - z2 + 2", 3)};
    SampleCloud cloud = pushforward_curve(line, -5, 5, 100, 100);
    std::size_t violations = 0;
    for (const CloudPoint& p : cloud.points)
        for (const auto& g : gens)
            if (!linear_cylinder_member(g, p.y, 1e-12)) ++violations;
    bool pass = cloud.points.size() >= 10000 && violations == 0;
    report(6, pass, what,
           std::to_string(cloud.points.size()) + " samples, " +
               std::to_string(violations) + " violations");
}

void criterion7() {
    const std::string what =
        "generator-intersection gap is real while the self-test stays quiet";
    double t0 = now_seconds();
    Box w3;
    w3.lo = {-4, -4, -4};
    w3.hi = {4, 4, 4};
    std::vector<LaurentPolynomial> gens{
        parse_polynomial("z2 - z1 - 1/2", 3),
        parse_polynomial("z3 - z1 + 3/2", 3),
        parse_polynomial("z3 - z2 + 2", 3)};
    BasisGapParams params;  // res 64, cloud 1024
    BasisGapReport rep = basis_gap_report(space_line(), gens, w3, params);

    Box w2;
    w2.lo = {-3, -3};
    w2.hi = {3, 3};
    BasisGapParams p2;
    p2.res = 64;
    p2.cloud_radii = p2.cloud_angles = 512;
    BasisGapReport self =
        basis_gap_report(graph_curve(), {hyperbola()}, w2, p2);
    double elapsed = now_seconds() - t0;
    bool pass = rep.gap_ratio > 0.05 && self.gap_ratio <= 0.02 &&
                elapsed < 120.0;
    report(7, pass, what,
           "gap " + fmt(rep.gap_ratio) + ", self-test " +
               fmt(self.gap_ratio) + ", " + fmt(elapsed) + " s");
}

void criterion8() {
    const std::string what =
        "convexity audit: exact on synthetic quadrics, saddles in the cloud";
    auto quad_cloud = [](double c2) {
        SampleCloud cloud;
        for (int i = -12; i <= 12; ++i)
            for (int j = -12; j <= 12; ++j) {
                double t1 = 0.03 * i, t2 = 0.03 * j;
                cloud.points.push_back(
                    CloudPoint{{t1, t2, t1 * t1 + c2 * t2 * t2}, cplx(0, 0)});
            }
        return cloud;
    };
    bool bowl_ok = convexity_audit(quad_cloud(1.0), {0, 0, 0}, 0.3).shape ==
                   PatchShape::Convex;
    bool saddle_ok = convexity_audit(quad_cloud(-1.0), {0, 0, 0}, 0.3).shape ==
                     PatchShape::Saddle;

    ScenarioConfig cfg;
    cfg.name = "fig2_complex_line";
    cfg.out_dir = "acceptance_out/fig2";
    nlohmann::json m = nlohmann::json::parse(run_scenario(cfg));
    int saddles = m["saddle_count"].get<int>();
    int audited = m["audited"].get<int>();
    bool pass = bowl_ok && saddle_ok && saddles >= 1;
    report(8, pass, what,
           std::string("paraboloid ") + (bowl_ok ? "ok" : "WRONG") +
               ", saddle " + (saddle_ok ? "ok" : "WRONG") + ", cloud " +
               std::to_string(saddles) + " saddles of " +
               std::to_string(audited) + " audited");
}

void criterion9() {
    const std::string what =
        "argument critical values: (pi,pi) present; the rest is one loop "
        "meeting the half-period lattice twice";
    LaurentPolynomial f = hyperbola();
    Box w;
    w.lo = {-3, -3};
    w.hi = {3, 3};
    ArgCloud crit = arg_critical_values(f, w);
    double d_pipi = 1e300;
    for (const AngleVec& a : crit.points)
        d_pipi = std::min(d_pipi,
                          torus_dist2(a.angles[0], a.angles[1], M_PI, M_PI));
    bool pipi_ok = d_pipi < 1e-6;

    // drop a 0.2-ball around (pi,pi), cluster the rest
    ArgCloud rest;
    for (const AngleVec& a : crit.points)
        if (torus_dist2(a.angles[0], a.angles[1], M_PI, M_PI) > 0.2)
            rest.points.push_back(a);
    std::vector<int> labels = torus_single_linkage(rest, 0.1);
    int n_clusters = 0;
    for (int l : labels) n_clusters = std::max(n_clusters, l + 1);

    // which corners of {0, pi}^2 does the loop meet?
    int corners_met = 0;
    const double corners[4][2] = {{0, 0}, {0, M_PI}, {M_PI, 0}, {M_PI, M_PI}};
    for (const auto& c : corners) {
        double d = 1e300;
        for (const AngleVec& a : rest.points)
            d = std::min(d, torus_dist2(a.angles[0], a.angles[1], c[0], c[1]));
        if (d < 1e-3) ++corners_met;
    }
    bool pass = pipi_ok && n_clusters == 1 && corners_met == 2;
    report(9, pass, what,
           "(pi,pi) dist " + fmt(d_pipi) + ", " + std::to_string(n_clusters) +
               " cluster(s), " + std::to_string(corners_met) +
               " corners met");
}

void criterion10() {
    const std::string what =
        "hull verdicts match the support-sampling oracle on random input";
    std::mt19937_64 rng(1234321);
    int checked = 0, disagreements = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        int dim = trial < 1000 ? 2 : 3;
        int n = 2 + (int)(uniform01(rng) * (dim == 2 ? 5 : 7));
        std::vector<std::vector<double>> vs;
        for (int i = 0; i < n; ++i) {
            std::vector<double> v;
            for (int k = 0; k < dim; ++k) v.push_back(2 * uniform01(rng) - 1);
            vs.push_back(v);
        }
        double d = hull_oracle(vs, dim);
        // positive side: full kink-error band (support min sits at a kink,
        // error up to max|v| * covering radius of the direction set);
        // negative side: a separating direction is a certificate
        double band = dim == 2 ? 1.2e-3 : 0.06;
        if (d <= band && d >= -1e-8) continue;
        ++checked;
        HullVerdict verdict = origin_in_hull(vs);
        bool ok = d < 0 ? verdict == HullVerdict::Outside
                        : verdict == HullVerdict::StrictlyInside;
        if (!ok) ++disagreements;
    }
    bool pass = disagreements == 0 && checked > 1200;
    report(10, pass, what,
           std::to_string(checked) + " instances checked, " +
               std::to_string(disagreements) + " disagreements");
}

void criterion11() {
    const std::string what =
        "all scenarios reproduce byte-identical outputs on a second run";
    struct Run {
        const char* name;
        int res, angles, grid;
    };
    const Run runs[] = {
        {"fig1_real_line", 0, 0, 120},  {"fig2_complex_line", 0, 0, 120},
        {"fig3_hyperbola", 81, 180, 100}, {"pinch_locate", 0, 0, 0},
        {"basis_gap", 32, 180, 256},    {"boundary_demo", 61, 180, 0},
    };
    int mismatched_files = 0, scenarios_ok = 0;
    std::string first_bad;
    for (const Run& r : runs) {
        std::map<std::string, std::string> bytes[2];
        for (int pass_i = 0; pass_i < 2; ++pass_i) {
            ScenarioConfig cfg;
            cfg.name = r.name;
            cfg.res = r.res;
            cfg.angles = r.angles;
            cfg.grid = r.grid;
            cfg.seed = 1;
            cfg.out_dir = std::string("acceptance_out/det_") + r.name +
                          (pass_i == 0 ? "_a" : "_b");
            run_scenario(cfg);
            for (const auto& e : fs::directory_iterator(cfg.out_dir))
                bytes[pass_i][e.path().filename().string()] =
                    slurp(e.path());
        }
        bool same = bytes[0].size() == bytes[1].size();
        if (same)
            for (const auto& [file, content] : bytes[0]) {
                auto it = bytes[1].find(file);
                if (it == bytes[1].end() || it->second != content) {
                    same = false;
                    ++mismatched_files;
                    if (first_bad.empty())
                        first_bad = std::string(r.name) + "/" + file;
                }
            }
        if (same) ++scenarios_ok;
    }
    bool pass = scenarios_ok == 6;
    report(11, pass, what,
           std::to_string(scenarios_ok) + "/6 scenarios identical" +
               (first_bad.empty() ? "" : ", first mismatch " + first_bad));
}

int main() {
    fs::create_directories("acceptance_out");
    criterion(1, "line raster oracle", [] { criterion1(); });
    criterion(2, "boundary classification", [] { criterion2(); });
    criterion(3, "fiber clusters", [] { criterion3(); });
    criterion(4, "pinch detection", [] { criterion4(); });
    criterion(5, "gauss degree", [] { criterion5(); });
    criterion(6, "cylinder containment", [] { criterion6(); });
    criterion(7, "basis gap", [] { criterion7(); });
    criterion(8, "convexity audit", [] { criterion8(); });
    criterion(9, "coamoeba critical values", [] { criterion9(); });
    criterion(10, "hull oracle", [] { criterion10(); });
    criterion(11, "determinism", [] { criterion11(); });
    if (g_failures == 0) {
        std::printf("acceptance: all 11 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return 1;
}
