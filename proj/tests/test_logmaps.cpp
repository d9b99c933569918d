#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "amoebascope/logmaps.hpp"
#include "amoebascope/parse.hpp"

using namespace amoebascope;

namespace {

TorusPoint tp(std::initializer_list<cplx> zs) { return TorusPoint{{zs}}; }

// w on the hyperbola 1/6 + z + w + zw = 0 as a graph over z
cplx hyperbola_w(cplx z) { return -(z + 1.0 / 6) / (1.0 + z); }

} // namespace

TEST_CASE("log and arg maps") {
    TorusPoint z = tp({cplx(0, 2), cplx(-3, 0)});
    LogPoint x = log_map(z);
    CHECK(x.coords[0] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(x.coords[1] == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    AngleVec a = arg_map(z);
    CHECK(a.angles[0] == doctest::Approx(M_PI / 2).epsilon(1e-15));
    CHECK(a.angles[1] == doctest::Approx(M_PI).epsilon(1e-15));
}

TEST_CASE("angle normalization lands in (-pi, pi]") {
    CHECK(normalize_angle(3 * M_PI) == doctest::Approx(M_PI));
    CHECK(normalize_angle(-M_PI) == doctest::Approx(M_PI));
    CHECK(normalize_angle(0.25) == doctest::Approx(0.25));
    CHECK(normalize_angle(-7.0) > -M_PI);
    CHECK(normalize_angle(-7.0) <= M_PI);
}

TEST_CASE("log gauss map of the line") {
    LaurentPolynomial f = parse_polynomial("1 + z + w");
    // gamma = [z : w]
    TorusPoint z = tp({cplx(2, 1), cplx(-3, 1)});
    ProjectivePoint g = log_gauss(f, z);
    cplx ratio = g.coords[0] / g.coords[1];
    CHECK(std::abs(ratio - cplx(2, 1) / cplx(-3, 1)) < 1e-14);
}

TEST_CASE("singular points of V are refused") {
    // z*w - z - w + 1 = (z-1)(w-1): the point (1,1) kills both partials
    LaurentPolynomial f = parse_polynomial("z*w - z - w + 1");
    CHECK_THROWS_AS(log_gauss(f, tp({cplx(1, 0), cplx(1, 0)})), Error);
}

TEST_CASE("real projectivity and the realness defect") {
    ProjectivePoint real_pt{{cplx(2, 0), cplx(-1, 0)}};
    CHECK(is_real_projective(real_pt));
    CHECK(realness_defect(real_pt) == doctest::Approx(0.0));

    // common phase does not matter
    cplx phase = std::polar(1.0, 0.9);
    ProjectivePoint rotated{{phase * cplx(2, 0), phase * cplx(-1, 0)}};
    CHECK(is_real_projective(rotated));

    ProjectivePoint complex_pt{{cplx(1, 0), cplx(0, 1)}};
    CHECK(!is_real_projective(complex_pt));
    CHECK(std::abs(realness_defect(complex_pt)) == doctest::Approx(1.0));

    // defect is antisymmetric under conjugation
    ProjectivePoint p{{cplx(1, 0.3), cplx(0.5, -0.2)}};
    ProjectivePoint pc{{std::conj(p.coords[0]), std::conj(p.coords[1])}};
    CHECK(realness_defect(p) == doctest::Approx(-realness_defect(pc)));
}

TEST_CASE("hyperbola critical points: the real locus is log-critical") {
    LaurentPolynomial f = parse_polynomial("1/6 + z + w + z*w");
    for (double zr : {-3.0, -0.5, 0.2, 2.0}) {
        cplx z(zr, 0);
        if (std::abs(z + 1.0) < 1e-9) continue;
        TorusPoint p = tp({z, hyperbola_w(z)});
        CAPTURE(zr);
        CHECK(is_log_critical(f, p));
    }
}

TEST_CASE("hyperbola critical points: the circle |z|^2 = 1/6 is log-critical") {
    LaurentPolynomial f = parse_polynomial("1/6 + z + w + z*w");
    double r = 1.0 / std::sqrt(6.0);
    for (double th : {0.3, 1.7, 2.9, -2.0, -0.4}) {
        cplx z = std::polar(r, th);
        TorusPoint p = tp({z, hyperbola_w(z)});
        CAPTURE(th);
        CHECK(is_log_critical(f, p));
        // the second coordinate sits on the same circle: |w|^2 = 1/6
        CHECK(std::abs(p.coords[1]) ==
              doctest::Approx(r).epsilon(1e-12));
    }
}

TEST_CASE("generic hyperbola points are not log-critical") {
    LaurentPolynomial f = parse_polynomial("1/6 + z + w + z*w");
    for (double th : {0.5, 1.1, 2.2}) {
        cplx z = std::polar(0.8, th);
        TorusPoint p = tp({z, hyperbola_w(z)});
        CAPTURE(th);
        CHECK(!is_log_critical(f, p));
    }
    // off the curve entirely
    CHECK(!is_log_critical(f, tp({cplx(1, 0), cplx(1, 0)})));
}

TEST_CASE("curve log jacobian: real line drops rank on the real axis only") {
    RationalCurve line = parse_curve("3; t; t + 1/2; t - 3/2");
    CurveLogJacobian at_real = curve_log_jacobian(line, cplx(0.7, 0));
    CHECK(at_real.rank < 2);
    CurveLogJacobian neg_real = curve_log_jacobian(line, cplx(-2.3, 0));
    CHECK(neg_real.rank < 2);
    CurveLogJacobian off_axis = curve_log_jacobian(line, cplx(0.7, 0.4));
    CHECK(off_axis.rank == 2);
    CHECK(off_axis.sigma1 >= off_axis.sigma2);
    CHECK(off_axis.sigma2 > 0);
}

TEST_CASE("curve log jacobian: complex line keeps rank 2 on a sample sweep") {
    RationalCurve line = parse_curve("3; t; t + 1; t - 2i");
    int full = 0, total = 0;
    for (double r : {0.3, 0.8, 1.7, 3.1}) {
        for (int k = 0; k < 16; ++k) {
            cplx t = std::polar(r, -M_PI + 2 * M_PI * (k + 0.5) / 16);
            ++total;
            if (curve_log_jacobian(line, t).rank == 2) ++full;
        }
    }
    CHECK(full == total);
}
