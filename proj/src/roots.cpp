// Univariate complex roots: closed forms for degree <= 2, simultaneous
// Ehrlich-Aberth iteration above that, then a Newton polish pass.  All roots
// are refined together; output order is canonical (lex by real, then imag).

#include <algorithm>
#include <cmath>

#include "amoebascope/algebra.hpp"

namespace amoebascope {

namespace {

// p and p' at z by Horner
std::pair<cplx, cplx> horner2(const std::vector<cplx>& c, cplx z) {
    cplx p = {0.0, 0.0}, dp = {0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
    return {p, dp};
}

void canonical_sort(std::vector<cplx>& r) {
    std::sort(r.begin(), r.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

std::vector<cplx> quadratic_roots(cplx c0, cplx c1, cplx c2) {
    // stable formula: q = -(c1 + sgn * sqrt(disc)) / 2, roots q/c2 and c0/q
    cplx disc = c1 * c1 - 4.0 * c2 * c0;
    cplx sq = std::sqrt(disc);
    if (std::real(std::conj(c1) * sq) < 0.0) sq = -sq;
    cplx q = -0.5 * (c1 + sq);
    std::vector<cplx> out;
    if (std::abs(q) > 0.0) {
        out.push_back(q / c2);
        out.push_back(c0 / q);
    } else {  // c1 ~ 0 and disc ~ 0: double root at 0-ish center
        out.push_back(sq / (2.0 * c2));
        out.push_back(-sq / (2.0 * c2));
    }
    return out;
}

} // namespace

std::vector<cplx> univariate_roots(const UniPoly& p, double tol, int max_iters) {
    // trim trailing ~0 coefficients (absolute, per documented contract)
    std::vector<cplx> c = p.coeffs;
    double cmax = 0.0;
    for (cplx v : c) cmax = std::max(cmax, std::abs(v));
    while (!c.empty() && std::abs(c.back()) <= tol) c.pop_back();
    const int deg = (int)c.size() - 1;
    if (deg <= 0) return {};

    std::vector<cplx> roots;
    if (deg == 1) {
        roots = {-c[0] / c[1]};
    } else if (deg == 2) {
        roots = quadratic_roots(c[0], c[1], c[2]);
    } else {
        // initial guesses on a circle at the Cauchy bound, symmetry broken by
        // a fixed irrational angular offset
        double bound = 0.0;
        for (int k = 0; k < deg; ++k)
            bound = std::max(bound, std::abs(c[k] / c[deg]));
        double radius = 1.0 + bound;
        roots.resize(deg);
        for (int k = 0; k < deg; ++k) {
            double ang = 2.0 * M_PI * (k + 0.257) / deg + 0.4;
            roots[k] = std::polar(0.7 * radius, ang);
        }
        bool converged = false;
        for (int iter = 0; iter < max_iters && !converged; ++iter) {
            double max_step = 0.0;
            for (int k = 0; k < deg; ++k) {
                auto [pv, dpv] = horner2(c, roots[k]);
                if (std::abs(pv) == 0.0) continue;
                if (std::abs(dpv) == 0.0) {
                    roots[k] += cplx{1e-8 * radius, 1e-8 * radius};
                    max_step = radius;
                    continue;
                }
                cplx newton = pv / dpv;
                cplx sum = {0.0, 0.0};
                for (int j = 0; j < deg; ++j) {
                    if (j == k) continue;
                    cplx d = roots[k] - roots[j];
                    if (std::abs(d) < 1e-300) d = {1e-300, 0.0};
                    sum += 1.0 / d;
                }
                cplx denom = 1.0 - newton * sum;
                cplx step = std::abs(denom) > 1e-300 ? newton / denom : newton;
                roots[k] -= step;
                max_step = std::max(max_step,
                                    std::abs(step) / (1.0 + std::abs(roots[k])));
            }
            converged = max_step < 1e-14;
        }
    }

    // Newton polish (also covers the closed-form branches)
    for (cplx& r : roots) {
        for (int it = 0; it < 3; ++it) {
            auto [pv, dpv] = horner2(c, r);
            if (std::abs(dpv) == 0.0) break;
            cplx step = pv / dpv;
            if (std::abs(step) > 0.5 * (1.0 + std::abs(r))) break;
            r -= step;
        }
    }

    // residual contract: tol * (1 + max|coeff|), plus the floating-point
    // noise floor of evaluating p at the root (largest monomial magnitude
    // times a few ulps) which no iteration can get under
    for (cplx r : roots) {
        auto [pv, dpv] = horner2(c, r);
        (void)dpv;
        double local = 1.0;
        double rp = 1.0, ra = std::abs(r);
        for (cplx v : c) {
            local = std::max(local, std::abs(v) * rp);
            rp *= ra;
        }
        double budget = tol * (1.0 + cmax) + 64.0 * 2.22e-16 * local;
        if (std::abs(pv) > budget)
            fail(ErrKind::NonConvergence,
                 "root refinement failed the residual contract");
    }
    canonical_sort(roots);
    return roots;
}

} // namespace amoebascope
