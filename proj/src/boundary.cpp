// Branch normals, the origin-in-hull test, the point classifier, and the
// pinch locator.

#include "amoebascope/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "internal.hpp"

namespace amoebascope {

namespace {

double cross2(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return a[0] * b[1] - a[1] * b[0];
}

// monotone-chain hull, CCW, collinear points dropped
std::vector<std::array<double, 2>> hull2d(std::vector<std::array<double, 2>> p) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (p.size() < 3) return p;
    auto turn = [](const std::array<double, 2>& a, const std::array<double, 2>& b,
                   const std::array<double, 2>& c) {
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    };
    std::vector<std::array<double, 2>> h(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && turn(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, lo = k + 1; i-- > 0;) {
        while (k >= lo && turn(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    h.resize(k - 1);
    return h;
}

double seg_dist(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    // distance from the origin to segment [a, b]
    std::array<double, 2> d{b[0] - a[0], b[1] - a[1]};
    double len2 = d[0] * d[0] + d[1] * d[1];
    double t = len2 > 0 ? -(a[0] * d[0] + a[1] * d[1]) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(a[0] + t * d[0], a[1] + t * d[1]);
}

// signed distance from the origin to the hull of the points (negative: inside)
double signed_dist_2d(const std::vector<std::array<double, 2>>& pts) {
    auto h = hull2d(pts);
    if (h.empty()) fail(ErrKind::InvalidArgument, "origin_in_hull: no vectors");
    if (h.size() == 1) return std::hypot(h[0][0], h[0][1]);
    if (h.size() == 2) return seg_dist(h[0], h[1]);
    double inside_depth = 1e300, outside = 1e300;
    bool in = true;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const auto& a = h[i];
        const auto& b = h[(i + 1) % h.size()];
        std::array<double, 2> e{b[0] - a[0], b[1] - a[1]};
        double elen = std::hypot(e[0], e[1]);
        if (elen == 0) continue;
        // origin is left of a CCW edge when this is positive
        double d = cross2(e, {-a[0], -a[1]}) / elen;
        if (d < 0) in = false;
        inside_depth = std::min(inside_depth, d);
        outside = std::min(outside, seg_dist(a, b));
    }
    return in ? -inside_depth : outside;
}

using V3 = std::array<double, 3>;
V3 sub3(const V3& a, const V3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
double dot3(const V3& a, const V3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
V3 cross3(const V3& a, const V3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}
double norm3(const V3& a) { return std::sqrt(dot3(a, a)); }

HullVerdict verdict_from_distance(double d, double tol) {
    if (d > tol) return HullVerdict::Outside;
    if (d < -tol) return HullVerdict::StrictlyInside;
    return HullVerdict::OnBoundary;
}

HullVerdict origin_in_hull_3d(const std::vector<V3>& v, double tol) {
    double scale = 1.0;
    for (const auto& p : v) scale = std::max(scale, norm3(p));

    // orthonormal basis of the affine hull through v[0]
    std::vector<V3> basis;
    for (std::size_t i = 1; i < v.size() && basis.size() < 3; ++i) {
        V3 d = sub3(v[i], v[0]);
        for (const auto& b : basis) {
            double c = dot3(d, b);
            for (int k = 0; k < 3; ++k) d[k] -= c * b[k];
        }
        double n = norm3(d);
        if (n > 1e-10 * scale)
            basis.push_back({d[0] / n, d[1] / n, d[2] / n});
    }

    if (basis.size() < 3) {
        // flat hull: split the origin's offset into the affine-hull component
        // and the residual; strictly-inside is impossible
        V3 o = {-v[0][0], -v[0][1], -v[0][2]};  // origin - v[0]
        std::vector<double> oc;
        for (const auto& b : basis) oc.push_back(dot3(o, b));
        V3 res = o;
        for (std::size_t k = 0; k < basis.size(); ++k)
            for (int j = 0; j < 3; ++j) res[j] -= oc[k] * basis[k][j];
        double d_perp = norm3(res);
        double d_in = 0.0;
        if (basis.size() == 2) {
            std::vector<std::array<double, 2>> pts;
            for (const auto& p : v) {
                V3 d = sub3(p, v[0]);
                pts.push_back({dot3(d, basis[0]) - oc[0],
                               dot3(d, basis[1]) - oc[1]});
            }
            d_in = std::max(signed_dist_2d(pts), 0.0);
        } else if (basis.size() == 1) {
            double lo = 1e300, hi = -1e300;
            for (const auto& p : v) {
                double t = dot3(sub3(p, v[0]), basis[0]);
                lo = std::min(lo, t);
                hi = std::max(hi, t);
            }
            d_in = std::max({lo - oc[0], oc[0] - hi, 0.0});
        }
        double d = std::hypot(d_perp, d_in);
        return d <= tol ? HullVerdict::OnBoundary : HullVerdict::Outside;
    }

    // full-dimensional: enumerate facet planes; the hull is the intersection
    // of their half-spaces, so the minimal origin margin is the signed depth
    const double eps_side = 1e-12 * (1.0 + scale);
    double min_margin = 1e300;
    bool any = false;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i + 2 < n; ++i)
        for (std::size_t j = i + 1; j + 1 < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                V3 nrm = cross3(sub3(v[j], v[i]), sub3(v[k], v[i]));
                double ln = norm3(nrm);
                if (ln <= 1e-14 * scale * scale) continue;
                for (int q = 0; q < 3; ++q) nrm[q] /= ln;
                double c = dot3(nrm, v[i]);
                double mx = -1e300, mn = 1e300;
                for (const auto& p : v) {
                    double s = dot3(nrm, p) - c;
                    mx = std::max(mx, s);
                    mn = std::min(mn, s);
                }
                if (mx <= eps_side) {       // all on the <= side: margin c
                    min_margin = std::min(min_margin, c);
                    any = true;
                }
                if (mn >= -eps_side) {      // all on the >= side: margin -c
                    min_margin = std::min(min_margin, -c);
                    any = true;
                }
            }
    if (!any)
        fail(ErrKind::NonConvergence, "origin_in_hull: no supporting facet");
    return verdict_from_distance(-min_margin, tol);
}

} // namespace

HullVerdict origin_in_hull(const std::vector<std::vector<double>>& vectors,
                           double tol) {
    if (vectors.empty())
        fail(ErrKind::InvalidArgument, "origin_in_hull: empty input");
    std::size_t dim = vectors[0].size();
    for (const auto& p : vectors)
        if (p.size() != dim)
            fail(ErrKind::DimensionMismatch, "origin_in_hull: ragged input");
    if (dim == 2) {
        std::vector<std::array<double, 2>> pts;
        for (const auto& p : vectors) pts.push_back({p[0], p[1]});
        return verdict_from_distance(signed_dist_2d(pts), tol);
    }
    if (dim == 3) {
        std::vector<V3> pts;
        for (const auto& p : vectors) pts.push_back({p[0], p[1], p[2]});
        return origin_in_hull_3d(pts, tol);
    }
    fail(ErrKind::Unsupported, "origin_in_hull supports dimensions 2 and 3");
}

// ---- branch normals --------------------------------------------------------

BranchData branch_normal(const LaurentPolynomial& f, const TorusPoint& z_i,
                         const BranchParams& params) {
    if (f.ambient_dim() != 2)
        fail(ErrKind::Unsupported, "branch_normal handles plane curves only");
    if (!is_log_critical(f, z_i, params.tol_f, params.tol_gamma))
        fail(ErrKind::InvalidArgument,
             "branch_normal: fiber point is not log-critical");

    LogPoint x = log_map(z_i);
    const int dep = pick_dependent_axis(f, z_i);
    const int par = 1 - dep;
    const double h = params.h;

    auto stepped = [&](cplx s, TorusPoint& out) -> bool {
        out = z_i;
        out.coords[par] *= (1.0 + s);
        return newton_correct_on_curve(f, out, dep);
    };
    auto defect_at = [&](cplx s, TorusPoint& out) -> double {
        if (!stepped(s, out)) return std::nan("");
        try {
            return realness_defect(log_gauss(f, out));
        } catch (const Error&) {
            return std::nan("");
        }
    };

    // (1) critical directions: zeros of the realness defect around the circle
    // of on-curve steps of size h
    const int K = 64;
    std::vector<double> dd(K);
    TorusPoint scratch;
    for (int k = 0; k < K; ++k)
        dd[k] = defect_at(std::polar(h, 2.0 * M_PI * k / K), scratch);

    struct Crossing {
        double phi;
        std::array<double, 2> y;  // log image offset from x
    };
    std::vector<Crossing> crossings;
    for (int k = 0; k < K; ++k) {
        int k2 = (k + 1) % K;
        if (std::isnan(dd[k]) || std::isnan(dd[k2])) continue;
        if ((dd[k] > 0) == (dd[k2] > 0)) continue;
        double a = 2.0 * M_PI * k / K, b = 2.0 * M_PI * (k + 1) / K;
        double da = dd[k];
        TorusPoint q;
        bool have = false;
        for (int it = 0; it < 50; ++it) {
            double m = 0.5 * (a + b);
            double dm = defect_at(std::polar(h, m), q);
            if (std::isnan(dm)) break;
            have = true;
            if ((dm > 0) == (da > 0)) { a = m; da = dm; }
            else b = m;
        }
        if (!have) continue;
        if (!is_log_critical(f, q, params.tol_f, params.tol_gamma)) continue;
        LogPoint y = log_map(q);
        crossings.push_back({0.5 * (a + b),
                             {y.coords[0] - x.coords[0],
                              y.coords[1] - x.coords[1]}});
    }
    if (crossings.size() < 2)
        fail(ErrKind::NonConvergence,
             "branch_normal: fewer than two critical directions near the "
             "fiber point");

    // the branch leaves in two opposite directions; pick the most
    // anti-parallel pair of crossings
    std::size_t ia = 0, ib = 1;
    double best = 1e300;
    for (std::size_t a = 0; a < crossings.size(); ++a)
        for (std::size_t b = a + 1; b < crossings.size(); ++b) {
            double d = std::abs(
                normalize_angle(crossings[a].phi - crossings[b].phi));
            double score = std::abs(d - M_PI);
            if (score < best) { best = score; ia = a; ib = b; }
        }

    BranchData out;
    out.fiber_point = z_i;
    std::array<double, 2> tau{crossings[ia].y[0] - crossings[ib].y[0],
                              crossings[ia].y[1] - crossings[ib].y[1]};
    double tlen = std::hypot(tau[0], tau[1]);
    if (tlen <= 1e-12)
        fail(ErrKind::NonConvergence,
             "branch_normal: critical directions give no tangent");
    tau[0] /= tlen;
    tau[1] /= tlen;
    if (tau[0] < 0 || (tau[0] == 0 && tau[1] < 0)) {  // canonical orientation
        tau[0] = -tau[0];
        tau[1] = -tau[1];
    }
    out.tangent = tau;
    std::array<double, 2> nu{-tau[1], tau[0]};

    // (2) push the h-disk of on-curve points through the log map and measure
    // which side of the *branch* they land on.  Raw projections onto the
    // normal line average to zero (each log-modulus is harmonic in the curve
    // parameter, so the circle mean equals the center value); the branch's own
    // quadratic deviation from its tangent line is the same order as the side
    // signal and must be subtracted.  The two refined crossings sit on the
    // branch, so they calibrate that deviation: p ~ c * t^2.
    double c_quad = 0;
    {
        double num = 0, den = 0;
        for (std::size_t idx : {ia, ib}) {
            double t = crossings[idx].y[0] * tau[0] + crossings[idx].y[1] * tau[1];
            double p = crossings[idx].y[0] * nu[0] + crossings[idx].y[1] * nu[1];
            num += p * t * t;
            den += t * t * t * t;
        }
        if (den > 0) c_quad = num / den;
    }
    std::vector<double> proj;
    const int n_angles = std::max(params.disk_samples / 2, 8);
    for (double radius : {h, 0.5 * h}) {
        for (int j = 0; j < n_angles; ++j) {
            double psi = 2.0 * M_PI * (j + 0.5) / n_angles;
            TorusPoint q;
            if (!stepped(std::polar(radius, psi), q)) continue;
            LogPoint y = log_map(q);
            double t = (y.coords[0] - x.coords[0]) * tau[0] +
                       (y.coords[1] - x.coords[1]) * tau[1];
            double p = (y.coords[0] - x.coords[0]) * nu[0] +
                       (y.coords[1] - x.coords[1]) * nu[1];
            proj.push_back(p - c_quad * t * t);
        }
    }
    if ((int)proj.size() < params.disk_samples / 2)
        fail(ErrKind::NonConvergence,
             "branch_normal: too few on-curve disk samples");

    double mean = 0;
    for (double p : proj) mean += p;
    mean /= proj.size();
    double var = 0;
    for (double p : proj) var += (p - mean) * (p - mean);
    double std_dev = std::sqrt(var / proj.size());
    bool pos = false, neg = false;
    for (double p : proj) {
        if (p > 0) pos = true;
        if (p < 0) neg = true;
    }
    if (pos && neg && std::abs(mean) < 0.1 * std_dev)
        fail(ErrKind::AmbiguousNormal,
             "branch_normal: disk projections have mixed signs with mean "
             "below a tenth of their spread");

    // (3) inward normal points toward the sampled patch
    double sign = mean >= 0 ? 1.0 : -1.0;
    out.inward_normal = {sign * nu[0], sign * nu[1]};
    out.projection_mean = mean;
    out.projection_std = std_dev;
    return out;
}

// ---- classifier ------------------------------------------------------------

Classification classify_point(const LaurentPolynomial& f,
                              const std::vector<double>& x,
                              const ClassifyParams& params) {
    Classification out;
    RegularityReport rep = is_regular_value(f, x, params.regularity);
    out.scan = std::move(rep.scan);

    if (out.scan.hits.empty()) {
        out.verdict = PointClass::Outside;
        out.note = "empty fiber";
        return out;
    }
    if (rep.verdict == RegularityVerdict::FiberNotCritical) {
        out.verdict = PointClass::Interior;
        out.note = "fiber contains a non-critical point";
        return out;
    }
    if (rep.verdict == RegularityVerdict::PositiveDimensional) {
        out.verdict = PointClass::NonRegular;
        out.note = "positive-dimensional fiber";
        return out;
    }
    if (rep.verdict == RegularityVerdict::GaussCritical) {
        out.verdict = PointClass::NonRegular;
        out.note = "Gauss-map critical fiber point";
        return out;
    }

    std::vector<std::vector<double>> normals;
    for (const auto& cl : out.scan.clusters) {
        try {
            BranchData b = branch_normal(f, cl.representative, params.branch);
            normals.push_back({b.inward_normal[0], b.inward_normal[1]});
            out.branches.push_back(std::move(b));
        } catch (const Error& e) {
            if (e.kind() == ErrKind::AmbiguousNormal) {
                out.verdict = PointClass::NonRegular;
                out.note = e.what();
                return out;
            }
            throw;
        }
    }

    out.hull = origin_in_hull(normals, params.hull_tol);
    switch (out.hull) {
        case HullVerdict::Outside:
            out.verdict = PointClass::Boundary;
            out.note = "inward-normal hull misses the origin";
            break;
        case HullVerdict::StrictlyInside:
            out.verdict = PointClass::Interior;
            out.note = "origin strictly inside the inward-normal hull";
            break;
        case HullVerdict::OnBoundary:
            out.verdict = PointClass::Degenerate;
            out.note = "origin within tolerance of the inward-normal hull "
                       "boundary";
            break;
    }
    return out;
}

// ---- pinch locator ---------------------------------------------------------

double circle_oscillation(const RationalCurve& rho, double r,
                          int circle_samples) {
    if (r <= 0) fail(ErrKind::InvalidArgument, "circle_oscillation: r <= 0");
    if (circle_samples < 8)
        fail(ErrKind::InvalidArgument, "circle_oscillation: too few samples");
    const auto excluded = rho.excluded_params();
    const int n = rho.ambient_dim();
    std::vector<double> lo(n, 1e300), hi(n, -1e300);
    int valid = 0;
    for (int j = 0; j < circle_samples; ++j) {
        cplx t = std::polar(r, -M_PI + 2.0 * M_PI * (j + 1) / circle_samples);
        bool skip = false;
        for (cplx s : excluded)
            if (std::abs(t - s) <= 1e-9) skip = true;
        if (skip) continue;
        std::vector<cplx> p = eval_curve(rho, t);
        ++valid;
        for (int k = 0; k < n; ++k) {
            double m = std::abs(p[k]);
            lo[k] = std::min(lo[k], m);
            hi[k] = std::max(hi[k], m);
        }
    }
    if (valid < std::max(8, circle_samples / 4))
        fail(ErrKind::InsufficientSamples,
             "circle_oscillation: circle mostly excluded");
    double osc = 0;
    for (int k = 0; k < n; ++k) osc = std::max(osc, hi[k] - lo[k]);
    return osc;
}

PinchResult locate_pinch(const RationalCurve& rho, double r_lo, double r_hi,
                         const PinchParams& params) {
    if (!(0 < r_lo && r_lo < r_hi))
        fail(ErrKind::InvalidArgument, "locate_pinch: need 0 < r_lo < r_hi");

    auto osc = [&](double r) {
        return circle_oscillation(rho, r, params.circle_samples);
    };

    // coarse scan: establishes the bracket for refinement and detects the
    // all-constant (entire family) case
    const int S = 64;
    double best_o = 1e300, max_o = 0;
    int best_i = 0;
    std::vector<double> rs(S + 1), os(S + 1);
    for (int i = 0; i <= S; ++i) {
        rs[i] = r_lo + (r_hi - r_lo) * i / S;
        try {
            os[i] = osc(rs[i]);
        } catch (const Error&) {
            os[i] = 1e300;
            continue;
        }
        max_o = std::max(max_o, os[i]);
        if (os[i] < best_o) { best_o = os[i]; best_i = i; }
    }
    if (best_o >= 1e300)
        fail(ErrKind::InsufficientSamples,
             "locate_pinch: no usable circle in the window");
    if (max_o < params.family_tol)
        fail(ErrKind::EntireFamily,
             "locate_pinch: every circle in the window has constant moduli");

    double a = rs[std::max(best_i - 1, 0)];
    double b = rs[std::min(best_i + 1, S)];

    // golden-section refinement of the bracket
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = osc(c), fd = osc(d);
    for (int it = 0; it < 200 && (b - a) > params.r_accuracy; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = osc(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = osc(d);
        }
    }

    PinchResult out;
    out.r_star = 0.5 * (a + b);
    out.oscillation = osc(out.r_star);
    if (out.oscillation > params.no_pinch_tol)
        fail(ErrKind::NoPinch,
             "locate_pinch: minimum oscillation exceeds threshold");

    // log image: mean of log|rho_k| over the circle (constant up to osc)
    const auto excluded = rho.excluded_params();
    const int n = rho.ambient_dim();
    std::vector<double> acc(n, 0.0);
    int valid = 0;
    for (int j = 0; j < params.circle_samples; ++j) {
        cplx t = std::polar(out.r_star,
                            -M_PI + 2.0 * M_PI * (j + 1) / params.circle_samples);
        bool skip = false;
        for (cplx s : excluded)
            if (std::abs(t - s) <= 1e-9) skip = true;
        if (skip) continue;
        std::vector<cplx> p = eval_curve(rho, t);
        ++valid;
        for (int k = 0; k < n; ++k) acc[k] += std::log(std::abs(p[k]));
    }
    out.x.coords.resize(n);
    for (int k = 0; k < n; ++k) out.x.coords[k] = acc[k] / valid;
    return out;
}

} // namespace amoebascope
