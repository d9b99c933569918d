#pragma once

// Sparse Laurent polynomials over C in up to a few variables, rational
// parametrized curves, and integer Newton polytopes.  These are the base
// objects everything else (log maps, fiber scans, region rasters) builds on.

#include <complex>
#include <vector>

#include "amoebascope/errors.hpp"

namespace amoebascope {

using cplx = std::complex<double>;

// One term: coefficient * prod_j z_j^exponents[j].  Exponents may be negative.
struct Monomial {
    cplx coeff;
    std::vector<int> exponents;
};

// Sparse Laurent polynomial with a fixed ambient dimension.  Terms are kept
// with distinct exponent vectors, sorted lexicographically; construction
// merges duplicates and drops exact-zero coefficients.
class LaurentPolynomial {
public:
    LaurentPolynomial() = default;
    LaurentPolynomial(int ambient_dim, std::vector<Monomial> terms);

    int ambient_dim() const { return dim_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

private:
    int dim_ = 0;
    std::vector<Monomial> terms_;
};

// Point on the complex torus: all coordinates nonzero.
struct TorusPoint {
    std::vector<cplx> coords;
};

// Parametrized curve t -> (num_k(t)/den_k(t))_k with excluded parameter
// values (zeros of numerators and denominators, where some coordinate
// leaves the torus).
struct UniPoly {                 // dense univariate polynomial, coeffs[k] ~ t^k
    std::vector<cplx> coeffs;
};

class RationalCurve {
public:
    RationalCurve() = default;
    RationalCurve(int ambient_dim, std::vector<UniPoly> numerators,
                  std::vector<UniPoly> denominators);

    int ambient_dim() const { return dim_; }
    const std::vector<UniPoly>& numerators() const { return num_; }
    const std::vector<UniPoly>& denominators() const { return den_; }
    // Zeros of all numerators and denominators (deduplicated); parameters at
    // which evaluation is refused.
    const std::vector<cplx>& excluded_params() const { return excluded_; }

private:
    int dim_ = 0;
    std::vector<UniPoly> num_, den_;
    std::vector<cplx> excluded_;
};

// Convex hull of exponent vectors, exact integer arithmetic.
struct NewtonPolytope {
    int ambient_dim = 0;
    std::vector<std::vector<int>> vertices;   // extreme points, lex-sorted
    int affine_dim = 0;                       // dimension of the affine hull
};

// ---- univariate helpers ----------------------------------------------------

cplx eval_unipoly(const UniPoly& p, cplx t);
UniPoly derivative_unipoly(const UniPoly& p);
int degree(const UniPoly& p, double tol = 0.0);   // index of last |coeff| > tol

// ---- polynomial operations -------------------------------------------------

cplx eval_poly(const LaurentPolynomial& f, const std::vector<cplx>& z);

// Largest single-term magnitude |c_a z^a| at z; natural scale for residual
// tests on evaluations of f.
double term_scale(const LaurentPolynomial& f, const std::vector<cplx>& z);

LaurentPolynomial partial_derivative(const LaurentPolynomial& f, int axis);

// Curve evaluation; refuses parameters within `tol` of an excluded value.
std::vector<cplx> eval_curve(const RationalCurve& rho, cplx t,
                             double tol = 1e-12);

// Result of restricting f to a fiber line: the univariate polynomial in the
// free coordinate after clearing negative powers, plus how many powers of the
// free variable were cleared (roots at 0 are discarded by callers: the torus
// excludes them).
struct FiberRestriction {
    UniPoly poly;
    int cleared_multiplicity = 0;
};

// Substitute z_j = e^{x_j + i theta_j} for every j != free_axis and collect a
// univariate polynomial in the free coordinate.  x supplies the moduli for
// the fixed axes (entry at free_axis ignored), theta the angles in fixed-axis
// order (skipping free_axis).  Throws DegenerateRestriction when the result
// is identically ~0 (all |coeffs| <= tol * scale of the substituted terms).
FiberRestriction restrict_to_fiber(const LaurentPolynomial& f,
                                   const std::vector<double>& x,
                                   const std::vector<double>& theta,
                                   int free_axis, double tol = 1e-12);

// All roots of p (degree after trimming trailing ~0 coefficients).  Contract:
// every root has residual |p(r)| <= tol * (1 + max |coeff|); roots returned
// sorted lex by (real, imag).  Simultaneous (Ehrlich-Aberth) iteration with a
// final Newton polish; throws NonConvergence after max_iters sweeps.
std::vector<cplx> univariate_roots(const UniPoly& p, double tol = 1e-10,
                                   int max_iters = 200);

NewtonPolytope newton_polytope(const LaurentPolynomial& f);

// Normalized volume n! * vol_n for full-dimensional polytopes, used for the
// degree of the logarithmic Gauss map.  Exact for ambient_dim <= 2; higher
// full-dimensional volumes are out of scope (Unsupported).
long long normalized_volume(const NewtonPolytope& np);

// Degree in the free variable of the fiber restriction (max minus min
// exponent of `axis` over the terms of f); bound on per-angle root counts.
int axis_degree_span(const LaurentPolynomial& f, int axis);

} // namespace amoebascope
