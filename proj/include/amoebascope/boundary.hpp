#pragma once

// Boundary detection for plane-curve amoebas: inward branch normals at
// contour points, the origin-in-convex-hull test on those normals, point
// classification, and the locator for pinch points (positive-dimensional
// circle fibers of a parametrized family).

#include <array>
#include <string>
#include <vector>

#include "amoebascope/contour.hpp"
#include "amoebascope/fibers.hpp"

namespace amoebascope {

// One critical branch over a contour point: the fiber point, the contour
// tangent there, and the unit inward normal (side the local amoeba patch
// lies on).
struct BranchData {
    TorusPoint fiber_point;
    std::array<double, 2> tangent{};       // unit contour tangent
    std::array<double, 2> inward_normal{}; // unit, orthogonal to tangent
    double projection_mean = 0;  // curvature-corrected normal projections
    double projection_std = 0;   // of the disk samples: mean and spread
};

enum class PointClass { Outside, Interior, Boundary, NonRegular, Degenerate };

enum class HullVerdict { Outside, StrictlyInside, OnBoundary };

struct BranchParams {
    double h = 1e-3;          // step scale for tangent + disk sampling
    int disk_samples = 32;    // >= 32 on-curve samples in the h-disk
    double tol_f = 1e-9;
    double tol_gamma = 1e-8;
};

// Inward normal of the amoeba-boundary branch through fiber point z_i over
// x = Log z_i.  Tangent: locate the two nearby log-critical points reached by
// on-curve steps of size h from z_i (direction refined by bisection on the
// realness defect), difference their log images.  Side: push >= disk_samples
// on-curve points from the h-disk through Log, subtract the branch's own
// quadratic deviation from the tangent line (calibrated from the two
// crossings; raw normal-line projections average to zero because log-moduli
// are harmonic in the curve parameter), and take the sign of the corrected
// mean.  Throws AmbiguousNormal when the corrected projections carry mixed
// signs with |mean| < 0.1 * std.
BranchData branch_normal(const LaurentPolynomial& f, const TorusPoint& z_i,
                         const BranchParams& params = {});

// Does conv{v_i} contain the origin?  dim 2: angular-gap test (outside iff an
// open half-plane contains all vectors); dim 3: small feasibility program
// (min-norm point of the hull).  |distance| <= tol reports OnBoundary.
HullVerdict origin_in_hull(const std::vector<std::vector<double>>& vectors,
                           double tol = 1e-9);

struct Classification {
    PointClass verdict = PointClass::Outside;
    FiberScanResult scan;
    std::vector<BranchData> branches;
    HullVerdict hull = HullVerdict::Outside;
    std::string note;
};

struct ClassifyParams {
    RegularityParams regularity;
    BranchParams branch;
    double hull_tol = 1e-9;
};

// Full pipeline: empty fiber -> Outside; any non-critical cluster ->
// Interior; non-regular (positive-dimensional, gauss-critical, ambiguous
// normal) -> NonRegular; otherwise hull of inward normals: origin outside ->
// Boundary, strictly inside -> Interior, on the tol band -> Degenerate.
Classification classify_point(const LaurentPolynomial& f,
                              const std::vector<double>& x,
                              const ClassifyParams& params = {});

// ---- pinch locator ---------------------------------------------------------

struct PinchResult {
    double r_star = 0;          // modulus of the parameter circle
    double oscillation = 0;     // max - min of |rho| over that circle
    LogPoint x;                 // log image (constant over the circle)
};

struct PinchParams {
    int circle_samples = 256;
    double osc_tol = 1e-8;      // "constant" threshold
    double family_tol = 1e-6;   // EntireFamily when osc < this across window
    double no_pinch_tol = 1e-3; // NoPinch when min osc exceeds this
    double r_accuracy = 1e-10;
};

// Golden-section minimization of osc(r) = max_theta |rho(r e^{i theta})| -
// min_theta |rho(...)| (componentwise max of the per-coordinate oscillations)
// over [r_lo, r_hi].  Samples within 1e-9 of an excluded parameter are
// skipped.  Throws EntireFamily if osc is ~0 across the whole window and
// NoPinch if the minimum stays above no_pinch_tol.
PinchResult locate_pinch(const RationalCurve& rho, double r_lo, double r_hi,
                         const PinchParams& params = {});

// Oscillation of |rho| over the circle |t| = r (max over coordinates);
// exposed for oscillation-curve plots and reporting.
double circle_oscillation(const RationalCurve& rho, double r,
                          int circle_samples = 256);

} // namespace amoebascope
