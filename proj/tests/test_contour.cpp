#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "amoebascope/contour.hpp"
#include "amoebascope/parse.hpp"

using namespace amoebascope;

namespace {
Box box2(double lo, double hi) {
    Box b;
    b.lo = {lo, lo};
    b.hi = {hi, hi};
    return b;
}
} // namespace

TEST_CASE("box diameter is the largest axis extent") {
    Box b;
    b.lo = {-1, 0, 2};
    b.hi = {1, 5, 3};
    CHECK(b.diameter() == doctest::Approx(5.0));
}

TEST_CASE("line contour equals the amoeba boundary curves") {
    // for 1 + z + w every curve point with real gauss image is real (up to
    // common phase), so the contour is exactly the boundary: the three arcs
    // e^{x2} = 1 + e^{x1}, e^{x1} = 1 + e^{x2}, 1 = e^{x1} + e^{x2}
    LaurentPolynomial f = parse_polynomial("1 + z + w");
    ContourCloud cloud = contour_cloud(f, box2(-3, 3));
    REQUIRE(cloud.entries.size() > 100);
    for (const ContourEntry& e : cloud.entries) {
        double x1 = e.log.coords[0], x2 = e.log.coords[1];
        double d1 = std::abs(std::exp(x2) - 1 - std::exp(x1));
        double d2 = std::abs(std::exp(x1) - 1 - std::exp(x2));
        double d3 = std::abs(std::exp(x1) + std::exp(x2) - 1);
        double d = std::min({d1, d2, d3});
        CAPTURE(x1);
        CAPTURE(x2);
        CHECK(d < 1e-6 * (1 + std::exp(x1) + std::exp(x2)));
    }
}

TEST_CASE("contour entries pass the pointwise criticality test") {
    LaurentPolynomial f = parse_polynomial("1/6 + z + w + z*w");
    ContourCloud cloud = contour_cloud(f, box2(-3, 3));
    REQUIRE(!cloud.entries.empty());
    for (const ContourEntry& e : cloud.entries)
        CHECK(is_log_critical(f, e.point, 1e-6, 1e-6));
}

TEST_CASE("hyperbola contour contains the pinch ring and the real branches") {
    LaurentPolynomial f = parse_polynomial("1/6 + z + w + z*w");
    ContourParams params;
    params.grid = 240;
    ContourCloud cloud = contour_cloud(f, box2(-3, 3), params);
    const double xp = -0.8958797346140275;  // log 6^{-1/2}

    // the circle |z|^2 = 1/6 maps to the single log point (xp, xp)
    bool pinch_found = false;
    // the real branch through z = -2 passes (log 2, log(11/6))
    bool real_found = false;
    for (const ContourEntry& e : cloud.entries) {
        double dxp = std::hypot(e.log.coords[0] - xp, e.log.coords[1] - xp);
        if (dxp < 2e-2) pinch_found = true;
        double dre = std::hypot(e.log.coords[0] - std::log(2.0),
                                e.log.coords[1] - std::log(11.0 / 6));
        if (dre < 5e-2) real_found = true;
    }
    CHECK(pinch_found);
    CHECK(real_found);
}

TEST_CASE("contour respects the window") {
    LaurentPolynomial f = parse_polynomial("1 + z + w");
    Box small = box2(-1, 1);
    ContourCloud cloud = contour_cloud(f, small);
    REQUIRE(!cloud.entries.empty());
    for (const ContourEntry& e : cloud.entries) {
        CHECK(e.log.coords[0] >= small.lo[0] - 1e-12);
        CHECK(e.log.coords[0] <= small.hi[0] + 1e-12);
        CHECK(e.log.coords[1] >= small.lo[1] - 1e-12);
        CHECK(e.log.coords[1] <= small.hi[1] + 1e-12);
    }
}

TEST_CASE("contour output is deterministic and sorted") {
    LaurentPolynomial f = parse_polynomial("1/6 + z + w + z*w");
    ContourParams params;
    params.grid = 80;
    ContourCloud a = contour_cloud(f, box2(-2, 2), params);
    ContourCloud b = contour_cloud(f, box2(-2, 2), params);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].log.coords == b.entries[i].log.coords);
        CHECK(a.entries[i].point.coords == b.entries[i].point.coords);
    }
    bool sorted = std::is_sorted(
        a.entries.begin(), a.entries.end(),
        [](const ContourEntry& u, const ContourEntry& v) {
            return u.log.coords < v.log.coords;
        });
    CHECK(sorted);
}

TEST_CASE("real space line: contour is the real parameter locus") {
    RationalCurve line = parse_curve("3; t; t + 1/2; t - 3/2");
    Box param;
    param.lo = {-3.0};
    param.hi = {3.0};
    ContourCloud cloud = curve_contour(line, param, 160);
    REQUIRE(!cloud.entries.empty());
    for (const ContourEntry& e : cloud.entries) {
        // parametrized at real t: all three coordinates are real
        for (const cplx& c : e.point.coords)
            CHECK(std::abs(c.imag()) <= 1e-9 * (1 + std::abs(c)));
    }
    // both signs of t appear
    bool pos = false, neg = false;
    for (const ContourEntry& e : cloud.entries) {
        if (e.point.coords[0].real() > 0) pos = true;
        if (e.point.coords[0].real() < 0) neg = true;
    }
    CHECK(pos);
    CHECK(neg);
}

TEST_CASE("complex space line: contour is empty") {
    RationalCurve line = parse_curve("3; t; t + 1; t - 2i");
    Box param;
    param.lo = {-3.0};
    param.hi = {3.0};
    ContourCloud cloud = curve_contour(line, param, 160);
    CHECK(cloud.entries.empty());
}
