#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "amoebascope/boundary.hpp"
#include "amoebascope/parse.hpp"

using namespace amoebascope;

namespace {

double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

// Support-sampling oracle: signed distance of the origin to conv(vectors),
// min over unit directions u of max_v <u, v>.  Positive: inside with that
// depth; negative: outside at that distance.  Sampling a direction subset can
// only overestimate the minimum, so any negative value is a separating-
// direction certificate; on the positive side the minimizer sits at a kink
// of the support function, where the error is first order in the direction
// spacing: up to max|v| * rho with rho the covering radius of the direction
// set (pi/4096 in 2D, ~0.030 for the 8000-point Fibonacci sphere).
double hull_distance_oracle_2d(const std::vector<std::vector<double>>& vs) {
    double best = 1e300;
    const int N = 4096;
    for (int k = 0; k < N; ++k) {
        double a = 2 * M_PI * k / N;
        double ux = std::cos(a), uy = std::sin(a);
        double h = -1e300;
        for (const auto& v : vs) h = std::max(h, ux * v[0] + uy * v[1]);
        best = std::min(best, h);
    }
    return best;
}

double hull_distance_oracle_3d(const std::vector<std::vector<double>>& vs) {
    double best = 1e300;
    const int N = 8000;
    const double ga = M_PI * (3.0 - std::sqrt(5.0));  // golden angle
    for (int k = 0; k < N; ++k) {
        double y = 1.0 - 2.0 * (k + 0.5) / N;
        double r = std::sqrt(std::max(0.0, 1.0 - y * y));
        double ux = std::cos(ga * k) * r, uz = std::sin(ga * k) * r;
        double h = -1e300;
        for (const auto& v : vs)
            h = std::max(h, ux * v[0] + y * v[1] + uz * v[2]);
        best = std::min(best, h);
    }
    return best;
}

std::array<double, 2> line_inward_normal(double x1) {
    // analytic inward normal on the arc e^{x2} = 1 + e^{x1}
    double e = std::exp(x1);
    double nx = e / (1 + e), ny = -1;
    double s = std::hypot(nx, ny);
    return {nx / s, ny / s};
}

double angle_between(const std::array<double, 2>& a,
                     const std::array<double, 2>& b) {
    double dot = a[0] * b[0] + a[1] * b[1];
    dot = std::max(-1.0, std::min(1.0, dot));
    return std::acos(dot);
}

} // namespace

TEST_CASE("origin_in_hull: fixed 2D cases") {
    CHECK(origin_in_hull({{1, 0}, {0, 1}}) == HullVerdict::Outside);
    CHECK(origin_in_hull({{1, 0}, {-1, 0}}) == HullVerdict::OnBoundary);
    CHECK(origin_in_hull({{1, 0}, {0, 1}, {-1, -1}}) ==
          HullVerdict::StrictlyInside);
    CHECK(origin_in_hull({{0.5, 0.1}}) == HullVerdict::Outside);
    // near-boundary falls into the tol band
    CHECK(origin_in_hull({{1, 1e-12}, {-1, 1e-12}}) == HullVerdict::OnBoundary);
}

TEST_CASE("origin_in_hull: fixed 3D cases") {
    CHECK(origin_in_hull({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) ==
          HullVerdict::Outside);
    CHECK(origin_in_hull({{1, 0, 0},
                          {-1, 0, 0},
                          {0, 1, 0},
                          {0, -1, 0},
                          {0, 0, 1},
                          {0, 0, -1}}) == HullVerdict::StrictlyInside);
    // coplanar set with the origin in its relative interior: boundary case
    CHECK(origin_in_hull({{1, 0, 0}, {-1, 1, 0}, {-1, -1, 0}}) ==
          HullVerdict::OnBoundary);
    // rank-1 set straddling the origin
    CHECK(origin_in_hull({{2, 0, 0}, {-3, 0, 0}}) == HullVerdict::OnBoundary);
}

TEST_CASE("origin_in_hull agrees with the support-sampling oracle") {
    std::mt19937_64 rng(424242);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int dim = trial % 2 == 0 ? 2 : 3;
        int n = 2 + (int)(uniform01(rng) * (dim == 2 ? 5 : 7));
        std::vector<std::vector<double>> vs;
        for (int i = 0; i < n; ++i) {
            std::vector<double> v;
            for (int k = 0; k < dim; ++k) v.push_back(2 * uniform01(rng) - 1);
            vs.push_back(v);
        }
        double d = dim == 2 ? hull_distance_oracle_2d(vs)
                            : hull_distance_oracle_3d(vs);
        // positive values need the full kink-error band (max|v| <= sqrt(dim));
        // negative values are certificates and only skip the OnBoundary zone
        double band = dim == 2 ? 1.2e-3 : 0.06;
        if (d <= band && d >= -1e-8) continue;
        ++checked;
        HullVerdict verdict = origin_in_hull(vs);
        CAPTURE(trial);
        CAPTURE(d);
        if (d < 0) CHECK(verdict == HullVerdict::Outside);
        else CHECK(verdict == HullVerdict::StrictlyInside);
    }
    CHECK(checked > 100);
}

TEST_CASE("branch normal on the upper line arc") {
    LaurentPolynomial f = parse_polynomial("1 + z + w");
    // fiber point over (0, log 2)
    TorusPoint z{{cplx(1, 0), cplx(-2, 0)}};
    BranchData b = branch_normal(f, z);
    std::array<double, 2> expect = line_inward_normal(0.0);
    CHECK(angle_between(b.inward_normal, expect) < 5.0 * M_PI / 180);
    // tangent and normal are unit and orthogonal
    CHECK(std::hypot(b.tangent[0], b.tangent[1]) == doctest::Approx(1.0));
    CHECK(std::hypot(b.inward_normal[0], b.inward_normal[1]) ==
          doctest::Approx(1.0));
    CHECK(std::abs(b.tangent[0] * b.inward_normal[0] +
                   b.tangent[1] * b.inward_normal[1]) < 1e-12);
    // the side call is decisive, not ambiguous
    CHECK(std::abs(b.projection_mean) > 0.1 * b.projection_std);
}

TEST_CASE("branch normal on the lower line arc") {
    LaurentPolynomial f = parse_polynomial("1 + z + w");
    // fiber point over (log 1/2, log 1/2): z = w = -1/2
    TorusPoint z{{cplx(-0.5, 0), cplx(-0.5, 0)}};
    BranchData b = branch_normal(f, z);
    std::array<double, 2> expect{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    CHECK(angle_between(b.inward_normal, expect) < 5.0 * M_PI / 180);
}

TEST_CASE("branch normal refuses non-critical points") {
    LaurentPolynomial f = parse_polynomial("1/6 + z + w + z*w");
    cplx z0 = std::polar(0.8, 0.5);
    cplx w0 = -(z0 + 1.0 / 6) / (1.0 + z0);
    CHECK_THROWS_AS(branch_normal(f, TorusPoint{{z0, w0}}), Error);
}

TEST_CASE("classification of line points") {
    LaurentPolynomial f = parse_polynomial("1 + z + w");
    CHECK(classify_point(f, {0.0, 0.0}).verdict == PointClass::Interior);
    CHECK(classify_point(f, {5.0, 0.0}).verdict == PointClass::Outside);
    Classification on_arc = classify_point(f, {0.0, std::log(2.0)});
    CHECK(on_arc.verdict == PointClass::Boundary);
    REQUIRE(!on_arc.branches.empty());
    CHECK(on_arc.hull == HullVerdict::Outside);
    Classification lower = classify_point(f, {std::log(0.5), std::log(0.5)});
    CHECK(lower.verdict == PointClass::Boundary);
}

TEST_CASE("classification of hyperbola points") {
    LaurentPolynomial f = parse_polynomial("1/6 + z + w + z*w");
    // interior: fiber exists but is not log-critical
    CHECK(classify_point(f, {0.0, 0.0}).verdict == PointClass::Interior);
    // real branch point through z = -2: boundary
    Classification real_branch =
        classify_point(f, {std::log(2.0), std::log(11.0 / 6)});
    CHECK(real_branch.verdict == PointClass::Boundary);
    // pinch log point: positive-dimensional fiber -> non-regular
    const double xp = -0.8958797346140275;
    CHECK(classify_point(f, {xp, xp}).verdict == PointClass::NonRegular);
}

TEST_CASE("boundary verdicts survive the membership probe") {
    // boundary point: stepping inward along the mean normal stays inside,
    // stepping outward leaves the amoeba
    LaurentPolynomial f = parse_polynomial("1 + z + w");
    Classification c = classify_point(f, {0.0, std::log(2.0)});
    REQUIRE(c.verdict == PointClass::Boundary);
    double v0 = 0, v1 = 0;
    for (const auto& b : c.branches) {
        v0 += b.inward_normal[0];
        v1 += b.inward_normal[1];
    }
    double s = std::hypot(v0, v1);
    REQUIRE(s > 0);
    v0 /= s;
    v1 /= s;
    const double eps = 1e-3;
    CHECK(amoeba_membership_2d(f, {0.0 + eps * v0, std::log(2.0) + eps * v1}));
    CHECK(!amoeba_membership_2d(f, {0.0 - eps * v0, std::log(2.0) - eps * v1}));

    // interior point: membership holds in every probed direction
    std::mt19937_64 rng(5);
    for (int k = 0; k < 16; ++k) {
        double a = 2 * M_PI * uniform01(rng);
        CHECK(amoeba_membership_2d(
            f, {0.3 + eps * std::cos(a), 0.4 + eps * std::sin(a)}));
    }
}

TEST_CASE("pinch locator finds the hyperbola pinch") {
    RationalCurve graph = parse_curve("2; t; (-1/6 - t)/(1 + t)");
    PinchResult r = locate_pinch(graph, 0.1, 0.9);
    CHECK(std::abs(r.r_star - 0.4082482904638630) < 1e-6);
    CHECK(r.oscillation < 1e-8);
    REQUIRE(r.x.coords.size() == 2);
    CHECK(std::abs(r.x.coords[0] - (-0.8958797346140275)) < 1e-6);
    CHECK(std::abs(r.x.coords[1] - (-0.8958797346140275)) < 1e-6);
}

TEST_CASE("pinch locator failure modes") {
    // |t| is constant on every circle: the whole family degenerates
    RationalCurve ident = parse_curve("1; t");
    CHECK_THROWS_AS(locate_pinch(ident, 0.1, 0.9), Error);
    try {
        locate_pinch(ident, 0.1, 0.9);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::EntireFamily);
    }

    // |t + 1| oscillates by 2r on every circle: no pinch anywhere
    RationalCurve shift = parse_curve("2; t; t + 1");
    try {
        locate_pinch(shift, 0.1, 0.9);
        FAIL("expected NoPinch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::NoPinch);
    }
}

TEST_CASE("circle oscillation skips excluded parameters") {
    RationalCurve graph = parse_curve("2; t; (-1/6 - t)/(1 + t)");
    // t = -1 lies on |t| = 1; the sampler must survive the pole next door
    double osc = circle_oscillation(graph, 1.0);
    CHECK(std::isfinite(osc));
    CHECK(osc > 1.0);
    // at r = 3^{-1/2}: |w| spans [(r+1/6)/(1+r), (r-1/6)/(1-r)], whose width
    // simplifies to exactly 1/2 (extremes at the real axis, which the angle
    // grid hits exactly)
    double alt = circle_oscillation(graph, 1.0 / std::sqrt(3.0));
    CHECK(alt == doctest::Approx(0.5).epsilon(1e-6));
}
