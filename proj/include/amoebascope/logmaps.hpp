#pragma once

// Log / argument images of torus points, the logarithmic Gauss map, and the
// criticality tests built on it.  Curves are treated through their smooth
// points: a point is log-critical exactly when its log-Gauss image is real
// projective (the operational definition used throughout this project).

#include <array>
#include <vector>

#include "amoebascope/algebra.hpp"

namespace amoebascope {

struct LogPoint {
    std::vector<double> coords;     // (log|z_1|, ..., log|z_n|)
};

// Componentwise principal arguments, normalized to (-pi, pi].
struct AngleVec {
    std::vector<double> angles;
};

// Point of CP^{n-1}; invariant: max coordinate modulus > 1e-14.
struct ProjectivePoint {
    std::vector<cplx> coords;
};

LogPoint log_map(const TorusPoint& z);
AngleVec arg_map(const TorusPoint& z);

// Normalize any angle to (-pi, pi].
double normalize_angle(double a);

// gamma(z) = [z_1 df/dz_1 : ... : z_n df/dz_n].  Throws SingularPoint when
// every coordinate is <= 1e-12 * term_scale(f, z) (singular point of V).
ProjectivePoint log_gauss(const LaurentPolynomial& f, const TorusPoint& z);

// True iff some unit-modulus rescaling makes all coordinates real:
// pairwise |Im(p_i conj(p_j))| <= tol * |p_i| * |p_j|.
bool is_real_projective(const ProjectivePoint& p, double tol = 1e-8);

// Signed pairwise realness defect, max_{i<j} Im(p_i conj p_j)/(|p_i||p_j|)
// by magnitude; the sign function whose zero set is the critical locus.
// For n=2 this is exactly Im(p_1 conj p_2)/(|p_1||p_2|).
double realness_defect(const ProjectivePoint& p);

// Point lies on V (|f| <= tol_f * term scale) and gamma is real projective.
bool is_log_critical(const LaurentPolynomial& f, const TorusPoint& z,
                     double tol_f = 1e-9, double tol_gamma = 1e-8);

// n! * Vol of the Newton polytope; throws DegeneratePolytope unless the
// polytope is full-dimensional in its ambient space.
long long gauss_degree(const LaurentPolynomial& f);

// Jacobian of t -> Log rho(t) as an n x 2 real matrix with rows
// (Re L_k, -Im L_k), L_k = rho_k'/rho_k, plus its singular values and the
// rank verdict sigma2 <= rank_tol * sigma1.
struct CurveLogJacobian {
    std::vector<std::array<double, 2>> rows;
    double sigma1 = 0.0, sigma2 = 0.0;
    int rank = 0;
};

CurveLogJacobian curve_log_jacobian(const RationalCurve& rho, cplx t,
                                    double rank_tol = 1e-6);

} // namespace amoebascope
