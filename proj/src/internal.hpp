#pragma once

// Internal helpers shared by the fiber-scan, contour and boundary
// implementations.  Not installed; not part of the public surface.

#include <cmath>
#include <vector>

#include "amoebascope/algebra.hpp"
#include "amoebascope/logmaps.hpp"

namespace amoebascope::detail {

// f restricted to the ring |z_sweep| = r_sweep, viewed as a univariate
// polynomial in the free coordinate; coefficients reassembled per angle
// without allocation in the hot path.
class RingRestrictor {
public:
    RingRestrictor(const LaurentPolynomial& f, int sweep_axis, int free_axis,
                   double r_sweep)
        : sweep_axis_(sweep_axis), free_axis_(free_axis), r_(r_sweep) {
        min_e_ = 0;
        bool first = true;
        for (const auto& m : f.terms()) {
            Term t;
            t.c = m.coeff;
            t.es = m.exponents[sweep_axis];
            t.ef = m.exponents[free_axis];
            if (first) { min_e_ = max_e_ = t.ef; first = false; }
            min_e_ = std::min(min_e_, t.ef);
            max_e_ = std::max(max_e_, t.ef);
            terms_.push_back(t);
        }
        if (first)
            fail(ErrKind::DegenerateRestriction, "restriction of empty polynomial");
    }

    int cleared() const { return min_e_ < 0 ? -min_e_ : 0; }
    int coeff_count() const { return max_e_ - min_e_ + 1; }

    // assemble cleared coefficients at angle theta; returns max term scale
    double assemble(double theta, std::vector<cplx>& out) const {
        out.assign(coeff_count(), cplx{0.0, 0.0});
        double scale = 0.0;
        cplx z = std::polar(r_, theta);
        for (const auto& t : terms_) {
            cplx v = t.c * zpow(z, t.es);
            scale = std::max(scale, std::abs(v));
            out[t.ef - min_e_] += v;
        }
        return scale;
    }

    // roots of the restriction at theta; normalized coefficients; roots with
    // modulus below drop_below are discarded (cleared zeros, off the torus).
    // Throws DegenerateRestriction when all coefficients vanish at this angle.
    std::vector<cplx> roots_at(double theta, double drop_below,
                               double tol = 1e-12) const {
        std::vector<cplx> coeffs;
        double scale = assemble(theta, coeffs);
        if (scale == 0.0) scale = 1.0;
        bool all_zero = true;
        for (cplx c : coeffs)
            if (std::abs(c) > tol * scale) { all_zero = false; break; }
        if (all_zero)
            fail(ErrKind::DegenerateRestriction,
                 "fiber restriction vanishes identically on this ring angle");
        UniPoly p;
        p.coeffs = coeffs;
        for (cplx& c : p.coeffs) c /= scale;
        std::vector<cplx> roots = univariate_roots(p, 1e-12);
        std::vector<cplx> kept;
        for (cplx r : roots)
            if (std::abs(r) > drop_below) kept.push_back(r);
        return kept;
    }

    cplx ring_point(double theta) const { return std::polar(r_, theta); }
    int sweep_axis() const { return sweep_axis_; }
    int free_axis() const { return free_axis_; }

private:
    struct Term {
        cplx c;
        int es, ef;
    };
    static cplx zpow(cplx z, int e) {
        if (e == 0) return {1.0, 0.0};
        bool inv = e < 0;
        unsigned n = inv ? -e : e;
        cplx b = z, acc = {1.0, 0.0};
        while (n) {
            if (n & 1) acc *= b;
            b *= b;
            n >>= 1;
        }
        return inv ? cplx{1.0, 0.0} / acc : acc;
    }

    int sweep_axis_, free_axis_;
    double r_;
    int min_e_ = 0, max_e_ = 0;
    std::vector<Term> terms_;
};

// index of the root in `roots` nearest to w; -1 when empty
inline int nearest_root(const std::vector<cplx>& roots, cplx w) {
    int best = -1;
    double bd = 0.0;
    for (int i = 0; i < (int)roots.size(); ++i) {
        double d = std::abs(roots[i] - w);
        if (best < 0 || d < bd) { best = i; bd = d; }
    }
    return best;
}

// assemble a TorusPoint placing ring/free values on their axes (ambient 2)
inline TorusPoint make_plane_point(int sweep_axis, cplx z_ring, cplx w_free) {
    TorusPoint p;
    p.coords.assign(2, cplx{});
    p.coords[sweep_axis] = z_ring;
    p.coords[1 - sweep_axis] = w_free;
    return p;
}

// cached partial derivatives of a plane curve polynomial
struct PlanePartials {
    LaurentPolynomial fz, fw;
    explicit PlanePartials(const LaurentPolynomial& f)
        : fz(partial_derivative(f, 0)), fw(partial_derivative(f, 1)) {}

    // gamma = (z f_z, w f_w); realness defect Im(g1 conj g2)/(|g1||g2|)
    double defect(const std::vector<cplx>& z) const {
        cplx g1 = z[0] * eval_poly(fz, z);
        cplx g2 = z[1] * eval_poly(fw, z);
        double denom = std::abs(g1) * std::abs(g2);
        if (denom == 0.0) return 0.0;
        return std::imag(g1 * std::conj(g2)) / denom;
    }
};

} // namespace amoebascope::detail
