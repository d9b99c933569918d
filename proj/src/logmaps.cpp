#include "amoebascope/logmaps.hpp"

#include <cmath>

namespace amoebascope {

LogPoint log_map(const TorusPoint& z) {
    LogPoint out;
    for (cplx c : z.coords) {
        double m = std::abs(c);
        if (m == 0.0)
            fail(ErrKind::InvalidArgument, "log map of a point off the torus");
        out.coords.push_back(std::log(m));
    }
    return out;
}

double normalize_angle(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a <= -M_PI) a += 2.0 * M_PI;
    else if (a > M_PI) a -= 2.0 * M_PI;
    return a;
}

AngleVec arg_map(const TorusPoint& z) {
    AngleVec out;
    for (cplx c : z.coords) {
        if (std::abs(c) == 0.0)
            fail(ErrKind::InvalidArgument, "argument map of a point off the torus");
        out.angles.push_back(normalize_angle(std::arg(c)));
    }
    return out;
}

ProjectivePoint log_gauss(const LaurentPolynomial& f, const TorusPoint& z) {
    const int n = f.ambient_dim();
    if ((int)z.coords.size() != n)
        fail(ErrKind::DimensionMismatch, "log_gauss: point dimension mismatch");
    ProjectivePoint p;
    double scale = term_scale(f, z.coords);
    double maxmod = 0.0;
    for (int j = 0; j < n; ++j) {
        cplx g = z.coords[j] * eval_poly(partial_derivative(f, j), z.coords);
        p.coords.push_back(g);
        maxmod = std::max(maxmod, std::abs(g));
    }
    if (maxmod <= 1e-12 * scale)
        fail(ErrKind::SingularPoint,
             "log Gauss map undefined: all scaled partials vanish");
    return p;
}

bool is_real_projective(const ProjectivePoint& p, double tol) {
    const int n = (int)p.coords.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            // a zero coordinate aligns with anything (lhs is exactly 0 then)
            double lhs = std::abs(std::imag(p.coords[i] * std::conj(p.coords[j])));
            double rhs = tol * std::abs(p.coords[i]) * std::abs(p.coords[j]);
            if (lhs > rhs) return false;
        }
    return true;
}

double realness_defect(const ProjectivePoint& p) {
    const int n = (int)p.coords.size();
    double best = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double denom = std::abs(p.coords[i]) * std::abs(p.coords[j]);
            if (denom == 0.0) continue;
            double v = std::imag(p.coords[i] * std::conj(p.coords[j])) / denom;
            if (std::abs(v) > std::abs(best)) best = v;
        }
    return best;
}

bool is_log_critical(const LaurentPolynomial& f, const TorusPoint& z,
                     double tol_f, double tol_gamma) {
    double residual = std::abs(eval_poly(f, z.coords));
    if (residual > tol_f * term_scale(f, z.coords)) return false;
    ProjectivePoint g;
    try {
        g = log_gauss(f, z);
    } catch (const Error& e) {
        if (e.kind() == ErrKind::SingularPoint) return false;
        throw;
    }
    return is_real_projective(g, tol_gamma);
}

long long gauss_degree(const LaurentPolynomial& f) {
    return normalized_volume(newton_polytope(f));
}

CurveLogJacobian curve_log_jacobian(const RationalCurve& rho, cplx t,
                                    double rank_tol) {
    CurveLogJacobian out;
    const int n = rho.ambient_dim();
    std::vector<cplx> vals = eval_curve(rho, t);  // throws on excluded params
    // L_k = rho_k'/rho_k = num'/num - den'/den
    double a11 = 0, a12 = 0, a22 = 0;  // Gram matrix of the n x 2 Jacobian
    for (int k = 0; k < n; ++k) {
        const UniPoly& num = rho.numerators()[k];
        const UniPoly& den = rho.denominators()[k];
        cplx L = eval_unipoly(derivative_unipoly(num), t) / eval_unipoly(num, t) -
                 eval_unipoly(derivative_unipoly(den), t) / eval_unipoly(den, t);
        std::array<double, 2> row{std::real(L), -std::imag(L)};
        out.rows.push_back(row);
        a11 += row[0] * row[0];
        a12 += row[0] * row[1];
        a22 += row[1] * row[1];
    }
    // singular values from the 2x2 Gram eigenvalues
    double tr = a11 + a22;
    double det = a11 * a22 - a12 * a12;
    double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    double l1 = tr / 2.0 + disc, l2 = tr / 2.0 - disc;
    out.sigma1 = std::sqrt(std::max(0.0, l1));
    out.sigma2 = std::sqrt(std::max(0.0, l2));
    if (out.sigma1 > 0.0) out.rank = 1;
    if (n >= 2 && out.sigma2 > rank_tol * out.sigma1) out.rank = 2;
    return out;
}

} // namespace amoebascope
