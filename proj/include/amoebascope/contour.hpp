#pragma once

// Contours: log images of the critical points of the log map restricted to
// the curve.  Implicit plane curves are swept over an (x_1, theta_1) grid
// with sign-change refinement of the realness defect; parametrized space
// curves are swept over a log-polar parameter grid with a rank test on the
// log Jacobian.

#include <array>
#include <vector>

#include "amoebascope/algebra.hpp"
#include "amoebascope/logmaps.hpp"

namespace amoebascope {

struct Box {                     // axis-aligned window, lo[k] < hi[k]
    std::vector<double> lo, hi;
    double diameter() const;
};

struct ContourEntry {
    TorusPoint point;            // on-curve critical point
    LogPoint log;                // its log image
};

struct ContourCloud {
    std::vector<ContourEntry> entries;
};

struct ContourParams {
    int grid = 200;              // N: grid per axis of the (x_1, theta_1) sweep
    double tol_f = 1e-9;
    double tol_gamma = 1e-8;
};

// Sweep z over an N x N grid in (x_1, theta_1) (x_1 over the window's first
// axis, theta_1 over the full circle including 0 and pi); for each z take all
// w with f(z, w) = 0, w != 0, and keep pairs passing is_log_critical.  Grid
// cells never straddle the critical set exactly, so sign changes of the
// realness defect along both grid directions are refined by bisection before
// the test.  Entries are clipped to the window and deduplicated on the joint
// (log, arg) grid of pitch diameter/(4N).
ContourCloud contour_cloud(const LaurentPolynomial& f, const Box& window,
                           const ContourParams& params = {});

// Parametrized curve contour: sample t over a log-polar grid (N radii over
// the param window's first axis, N angles including 0 and pi), skip excluded
// parameters, and keep samples where the n x 2 log Jacobian has rank < 2.
ContourCloud curve_contour(const RationalCurve& rho, const Box& param_window,
                           int grid = 200, double rank_tol = 1e-6);

} // namespace amoebascope
