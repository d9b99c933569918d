#pragma once

// Fiber scans: which torus points over a given log point lie on the curve,
// how they cluster, and whether the fiber looks zero- or positive-
// dimensional.  Plane curves (ambient dim 2) only.

#include <vector>

#include "amoebascope/algebra.hpp"
#include "amoebascope/logmaps.hpp"

namespace amoebascope {

struct FiberHit {
    TorusPoint point;
    int angle_index = -1;        // grid angle it was found from (-1: refined)
    double radial_residual = 0;  // |log|w| - x_2|
    double f_residual = 0;       // |f(point)| / term scale
};

enum class FiberDim { Empty, Finite, PositiveDimensional };

struct FiberCluster {
    TorusPoint representative;   // polished to ~1e-12
    int hit_count = 0;
    bool log_critical = false;
};

struct FiberScanResult {
    std::vector<FiberHit> hits;
    std::vector<FiberCluster> clusters;
    FiberDim dimension_estimate = FiberDim::Empty;
    int angles = 0;              // M used
    int angles_with_hits = 0;
};

struct FiberScanParams {
    int angles = 360;            // M >= 8
    double tol_radial = 1e-3;    // gate on |log|w| - x_2| for grid hits
    double tol_f = 1e-9;
    double tol_gamma = 1e-8;
    // fraction thresholds for the positive-dimensional verdict
    double angle_coverage = 0.9;
    double arg_sweep = 0.9;
};

// Sweep theta_1 over an M-grid on (-pi, pi]; for each z = e^{x_1 + i theta_1}
// solve the fiber restriction in w; keep roots whose log-modulus is within
// tol_radial of x_2, plus refined hits from sign changes of the radial offset
// between adjacent angles (so membership does not depend on tol_radial).
// Clusters merge hits by torus distance 10*tol_radial and angle adjacency;
// representatives are polished by bisection (offset sign change) or extremum
// bisection (tangential contact).  positive-dimensional: hits on >= 90% of
// grid angles and the hit arguments of both coordinates each cover >= 90% of
// the circle.
FiberScanResult fiber_scan(const LaurentPolynomial& f,
                           const std::vector<double>& x,
                           const FiberScanParams& params = {});

// Closed-amoeba membership: fiber_scan nonempty.
bool amoeba_membership_2d(const LaurentPolynomial& f,
                          const std::vector<double>& x,
                          const FiberScanParams& params = {});

// ---- regular-value test ----------------------------------------------------

enum class RegularityVerdict {
    Regular,
    GaussCritical,          // some fiber point is a critical point of gamma
    PositiveDimensional,
    FiberNotCritical,       // some cluster is not log-critical (interior point)
};

struct RegularityReport {
    RegularityVerdict verdict = RegularityVerdict::Regular;
    FiberScanResult scan;
    std::vector<double> gauss_derivative_norms;  // per cluster, when computed
};

struct RegularityParams {
    FiberScanParams scan;
    double h = 1e-5;        // on-curve step for the gamma derivative
    double tol_reg = 1e-6;  // |d gamma_affine / ds| below this => critical
};

RegularityReport is_regular_value(const LaurentPolynomial& f,
                                  const std::vector<double>& x,
                                  const RegularityParams& params = {});

// ---- shared on-curve helpers (used by boundary analysis too) ---------------

// Newton-correct the dependent coordinate so that |f| <= tol * scale; the
// dependent axis is the one with the larger |z_i df/dz_i| at the start.
// Returns false if correction fails to converge.
bool newton_correct_on_curve(const LaurentPolynomial& f, TorusPoint& z,
                             int dependent_axis, double tol = 1e-12,
                             int max_iters = 12);
int pick_dependent_axis(const LaurentPolynomial& f, const TorusPoint& z);

} // namespace amoebascope
