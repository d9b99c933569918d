// Fiber scans over a log point: grid hits on an angle sweep, refined hits
// from radial-offset sign changes (so membership does not depend on the
// radial gate), run/distance clustering, and polished representatives.

#include "amoebascope/fibers.hpp"

#include <algorithm>
#include <cmath>

#include "internal.hpp"

namespace amoebascope {

using detail::RingRestrictor;

namespace {

struct AngleData {
    std::vector<cplx> roots;       // surviving roots at this angle
    std::vector<double> offsets;   // log|w| - x_free per root
    bool full_circle = false;      // restriction vanished identically here
};

// union-find
struct DSU {
    std::vector<int> p;
    explicit DSU(int n) : p(n) {
        for (int i = 0; i < n; ++i) p[i] = i;
    }
    int find(int a) { return p[a] == a ? a : p[a] = find(p[a]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

double torus_dist(const TorusPoint& a, const TorusPoint& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        d = std::max(d, std::abs(a.coords[i] - b.coords[i]));
    return d;
}

} // namespace

int pick_dependent_axis(const LaurentPolynomial& f, const TorusPoint& z) {
    ProjectivePoint g = log_gauss(f, z);
    return std::abs(g.coords[0]) >= std::abs(g.coords[1]) ? 0 : 1;
}

bool newton_correct_on_curve(const LaurentPolynomial& f, TorusPoint& z,
                             int dependent_axis, double tol, int max_iters) {
    LaurentPolynomial fd = partial_derivative(f, dependent_axis);
    for (int it = 0; it < max_iters; ++it) {
        cplx val = eval_poly(f, z.coords);
        double scale = term_scale(f, z.coords);
        if (std::abs(val) <= tol * scale) return true;
        cplx der = eval_poly(fd, z.coords);
        if (std::abs(der) == 0.0) return false;
        z.coords[dependent_axis] -= val / der;
        if (std::abs(z.coords[dependent_axis]) == 0.0) return false;
    }
    return std::abs(eval_poly(f, z.coords)) <=
           tol * term_scale(f, z.coords);
}

FiberScanResult fiber_scan(const LaurentPolynomial& f,
                           const std::vector<double>& x,
                           const FiberScanParams& params) {
    if (f.ambient_dim() != 2)
        fail(ErrKind::Unsupported, "fiber_scan handles plane curves only");
    if ((int)x.size() != 2)
        fail(ErrKind::DimensionMismatch, "fiber_scan: x must have 2 entries");
    const int M = params.angles;
    if (M < 8) fail(ErrKind::InvalidArgument, "fiber_scan needs >= 8 angles");

    // solve for the coordinate the polynomial actually involves
    int sweep = 0, freea = 1;
    if (axis_degree_span(f, 1) == 0) {
        if (axis_degree_span(f, 0) == 0)
            fail(ErrKind::DegenerateRestriction,
                 "polynomial involves neither coordinate");
        sweep = 1;
        freea = 0;
    }
    const double x_free = x[freea];
    const double r_free = std::exp(x_free);
    RingRestrictor ring(f, sweep, freea, std::exp(x[sweep]));
    const double drop_below = 1e-12 * r_free;

    FiberScanResult out;
    out.angles = M;
    const double dtheta = 2.0 * M_PI / M;
    auto theta_of = [&](int k) { return -M_PI + dtheta * (k + 1); };

    std::vector<AngleData> per_angle(M);
    for (int k = 0; k < M; ++k) {
        AngleData& ad = per_angle[k];
        try {
            ad.roots = ring.roots_at(theta_of(k), drop_below);
        } catch (const Error& e) {
            if (e.kind() != ErrKind::DegenerateRestriction) throw;
            ad.full_circle = true;  // whole free-coordinate circle lies on V
        }
        for (cplx w : ad.roots)
            ad.offsets.push_back(std::log(std::abs(w)) - x_free);
    }

    // hit index bookkeeping: (angle k or -1, root) plus source interval for
    // refined hits (used by the run-merge)
    struct HitSrc {
        int k_lo, k_hi;  // grid interval it belongs to (k, k for grid hits)
    };
    std::vector<HitSrc> src;

    for (int k = 0; k < M; ++k) {
        const AngleData& ad = per_angle[k];
        if (ad.full_circle) {
            // synthesize evenly spread circle hits at this angle
            const int spread = 64;
            for (int j = 0; j < spread; ++j) {
                double a = -M_PI + 2.0 * M_PI * (j + 1) / spread;
                FiberHit h;
                h.point = detail::make_plane_point(sweep, ring.ring_point(theta_of(k)),
                                                   std::polar(r_free, a));
                h.angle_index = k;
                h.radial_residual = 0.0;
                h.f_residual = std::abs(eval_poly(f, h.point.coords)) /
                               term_scale(f, h.point.coords);
                out.hits.push_back(std::move(h));
                src.push_back({k, k});
            }
            ++out.angles_with_hits;
            continue;
        }
        bool any = false;
        for (std::size_t i = 0; i < ad.roots.size(); ++i) {
            if (std::abs(ad.offsets[i]) > params.tol_radial) continue;
            FiberHit h;
            h.point = detail::make_plane_point(sweep, ring.ring_point(theta_of(k)),
                                               ad.roots[i]);
            h.angle_index = k;
            h.radial_residual = std::abs(ad.offsets[i]);
            h.f_residual = std::abs(eval_poly(f, h.point.coords)) /
                           term_scale(f, h.point.coords);
            out.hits.push_back(std::move(h));
            src.push_back({k, k});
            any = true;
        }
        if (any) ++out.angles_with_hits;
    }

    // refined hits: radial-offset sign changes along matched roots between
    // adjacent angles
    auto bisect_crossing = [&](int k, std::size_t i_lo, int k2, std::size_t i_hi) {
        double a = theta_of(k);
        double b = theta_of(k) + dtheta;  // theta_of(k2) modulo wrap
        cplx wa = per_angle[k].roots[i_lo];
        double da = per_angle[k].offsets[i_lo];
        cplx track = wa;
        for (int it = 0; it < 64; ++it) {
            double m = 0.5 * (a + b);
            std::vector<cplx> rm;
            try {
                rm = ring.roots_at(m, drop_below);
            } catch (const Error&) {
                return;  // degenerate mid-ring: give up on this crossing
            }
            int idx = detail::nearest_root(rm, track);
            if (idx < 0) return;
            track = rm[idx];
            double dm = std::log(std::abs(track)) - x_free;
            if ((dm > 0) == (da > 0)) { a = m; da = dm; }
            else b = m;
        }
        FiberHit h;
        h.point = detail::make_plane_point(sweep, ring.ring_point(0.5 * (a + b)),
                                           track);
        h.angle_index = -1;
        h.radial_residual = std::abs(std::log(std::abs(track)) - x_free);
        h.f_residual = std::abs(eval_poly(f, h.point.coords)) /
                       term_scale(f, h.point.coords);
        out.hits.push_back(std::move(h));
        src.push_back({k, (k + 1) % M});
        (void)i_hi;
        (void)k2;
    };

    for (int k = 0; k < M; ++k) {
        int k2 = (k + 1) % M;
        const AngleData& a = per_angle[k];
        const AngleData& b = per_angle[k2];
        if (a.full_circle || b.full_circle) continue;
        std::vector<char> used(b.roots.size(), 0);
        for (std::size_t i = 0; i < a.roots.size(); ++i) {
            // greedy nearest unused partner
            int best = -1;
            double bd = 0.0;
            for (std::size_t j = 0; j < b.roots.size(); ++j) {
                if (used[j]) continue;
                double d = std::abs(a.roots[i] - b.roots[j]);
                if (best < 0 || d < bd) { best = (int)j; bd = d; }
            }
            if (best < 0) continue;
            used[best] = 1;
            if ((a.offsets[i] > 0) != (b.offsets[best] > 0))
                bisect_crossing(k, i, k2, best);
        }
    }

    // dimension estimate (grid-angle coverage + argument sweep of the hits)
    if (out.hits.empty()) {
        out.dimension_estimate = FiberDim::Empty;
        return out;
    }
    out.dimension_estimate = FiberDim::Finite;
    if (out.angles_with_hits + 1e-9 >= params.angle_coverage * M) {
        // swept fraction of the circle = 1 - largest gap between sorted
        // hit arguments
        auto swept = [&](int axis) {
            std::vector<double> args;
            args.reserve(out.hits.size());
            for (const auto& h : out.hits)
                args.push_back(std::arg(h.point.coords[axis]));
            std::sort(args.begin(), args.end());
            double gap = args.front() + 2.0 * M_PI - args.back();
            for (std::size_t i = 1; i < args.size(); ++i)
                gap = std::max(gap, args[i] - args[i - 1]);
            return 1.0 - gap / (2.0 * M_PI);
        };
        if (swept(0) + 1e-9 >= params.arg_sweep &&
            swept(1) + 1e-9 >= params.arg_sweep)
            out.dimension_estimate = FiberDim::PositiveDimensional;
    }

    // ---- clustering ----
    const int H = (int)out.hits.size();
    DSU dsu(H);
    const double dist_radius = 10.0 * params.tol_radial;
    // continuity radius for adjacent-angle runs (free coordinate moves at
    // a bounded multiple of its modulus per angle step)
    const double cont_radius = std::max(dist_radius, 8.0 * r_free * dtheta);
    for (int i = 0; i < H; ++i)
        for (int j = i + 1; j < H; ++j) {
            double d = torus_dist(out.hits[i].point, out.hits[j].point);
            if (d <= dist_radius) { dsu.unite(i, j); continue; }
            // run merge: overlapping or adjacent source intervals
            int gap = std::min(std::abs(src[i].k_lo - src[j].k_hi),
                               std::abs(src[j].k_lo - src[i].k_hi));
            gap = std::min(gap, std::min(std::abs(src[i].k_lo - src[j].k_lo),
                                         std::abs(src[i].k_hi - src[j].k_hi)));
            int wrap_gap = M - gap;
            gap = std::min(gap, wrap_gap);
            if (gap <= 1 && d <= cont_radius) dsu.unite(i, j);
        }

    std::vector<int> cluster_of(H, -1);
    std::vector<std::vector<int>> members;
    for (int i = 0; i < H; ++i) {
        int r = dsu.find(i);
        if (cluster_of[r] < 0) {
            cluster_of[r] = (int)members.size();
            members.emplace_back();
        }
        cluster_of[i] = cluster_of[r];
        members[cluster_of[i]].push_back(i);
    }

    const bool posdim = out.dimension_estimate == FiberDim::PositiveDimensional;
    for (auto& mem : members) {
        FiberCluster cl;
        cl.hit_count = (int)mem.size();
        // base representative: minimal radial residual (ties: lowest index,
        // which is deterministic)
        int best = mem[0];
        for (int i : mem)
            if (out.hits[i].radial_residual < out.hits[best].radial_residual)
                best = i;
        cl.representative = out.hits[best].point;

        if (!posdim && out.hits[best].angle_index >= 0 &&
            out.hits[best].radial_residual > 1e-12) {
            // tangential contact: the offset extremum is the true fiber point;
            // bisect on the sign of a symmetric finite difference
            int k = out.hits[best].angle_index;
            cplx track = out.hits[best].point.coords[freea];
            double lo = theta_of(k) - dtheta, hi = theta_of(k) + dtheta;
            const double delta = 1e-5;
            auto offset_at = [&](double th, cplx& w_io) -> double {
                std::vector<cplx> rr;
                try {
                    rr = ring.roots_at(th, drop_below);
                } catch (const Error&) {
                    return std::nan("");
                }
                int idx = detail::nearest_root(rr, w_io);
                if (idx < 0) return std::nan("");
                w_io = rr[idx];
                return std::log(std::abs(w_io)) - x_free;
            };
            auto slope_sign = [&](double th, cplx& w_io) -> double {
                cplx wl = w_io, wr = w_io;
                double dl = offset_at(th - delta, wl);
                double dr = offset_at(th + delta, wr);
                if (std::isnan(dl) || std::isnan(dr)) return std::nan("");
                return dr - dl;
            };
            cplx wl = track, wr = track;
            double sl = slope_sign(lo, wl), sh = slope_sign(hi, wr);
            if (!std::isnan(sl) && !std::isnan(sh) && (sl > 0) != (sh > 0)) {
                double a = lo, b = hi;
                for (int it = 0; it < 64; ++it) {
                    double m = 0.5 * (a + b);
                    cplx wm = track;
                    double sm = slope_sign(m, wm);
                    if (std::isnan(sm)) break;
                    track = wm;
                    if ((sm > 0) == (sl > 0)) a = m;
                    else b = m;
                }
                double th = 0.5 * (a + b);
                cplx w_fin = track;
                double d_fin = offset_at(th, w_fin);
                if (!std::isnan(d_fin)) {
                    cl.representative = detail::make_plane_point(
                        sweep, ring.ring_point(th), w_fin);
                }
            }
        }
        cl.log_critical = is_log_critical(f, cl.representative, params.tol_f,
                                          params.tol_gamma);
        out.clusters.push_back(std::move(cl));
    }

    // canonical cluster order: lex by representative (re, im per coordinate)
    std::sort(out.clusters.begin(), out.clusters.end(),
              [](const FiberCluster& a, const FiberCluster& b) {
                  for (std::size_t i = 0; i < a.representative.coords.size(); ++i) {
                      cplx x = a.representative.coords[i];
                      cplx y = b.representative.coords[i];
                      if (x.real() != y.real()) return x.real() < y.real();
                      if (x.imag() != y.imag()) return x.imag() < y.imag();
                  }
                  return false;
              });
    return out;
}

bool amoeba_membership_2d(const LaurentPolynomial& f,
                          const std::vector<double>& x,
                          const FiberScanParams& params) {
    return !fiber_scan(f, x, params).hits.empty();
}

RegularityReport is_regular_value(const LaurentPolynomial& f,
                                  const std::vector<double>& x,
                                  const RegularityParams& params) {
    RegularityReport rep;
    rep.scan = fiber_scan(f, x, params.scan);
    if (rep.scan.dimension_estimate == FiberDim::PositiveDimensional) {
        rep.verdict = RegularityVerdict::PositiveDimensional;
        return rep;
    }
    for (const auto& cl : rep.scan.clusters)
        if (!cl.log_critical) {
            rep.verdict = RegularityVerdict::FiberNotCritical;
            return rep;
        }
    rep.verdict = RegularityVerdict::Regular;
    for (const auto& cl : rep.scan.clusters) {
        // |d gamma_affine / d log zeta| by a central difference along the
        // curve, chart chosen by the larger gamma coordinate
        TorusPoint base = cl.representative;
        int dep = pick_dependent_axis(f, base);
        int par = 1 - dep;
        ProjectivePoint g0 = log_gauss(f, base);
        int chart_den = std::abs(g0.coords[0]) >= std::abs(g0.coords[1]) ? 0 : 1;
        auto gamma_affine = [&](const TorusPoint& p) -> cplx {
            ProjectivePoint g = log_gauss(f, p);
            return g.coords[1 - chart_den] / g.coords[chart_den];
        };
        auto stepped = [&](double rel) -> TorusPoint {
            TorusPoint p = base;
            p.coords[par] *= (1.0 + rel);
            newton_correct_on_curve(f, p, dep);
            return p;
        };
        TorusPoint plus = stepped(params.h), minus = stepped(-params.h);
        double norm = std::abs(gamma_affine(plus) - gamma_affine(minus)) /
                      (2.0 * params.h);
        rep.gauss_derivative_norms.push_back(norm);
        if (norm <= params.tol_reg) rep.verdict = RegularityVerdict::GaussCritical;
    }
    return rep;
}

} // namespace amoebascope
