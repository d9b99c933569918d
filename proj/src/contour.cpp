// Contour clouds.  Implicit plane curves: sweep an (x_1, theta_1) grid,
// solve the w-restriction at each node, keep log-critical pairs, and refine
// sign changes of the realness defect along both grid directions so critical
// arcs between nodes are not missed.  Parametrized curves: log-polar
// parameter sweep with a rank test on the 2-column log Jacobian.

#include "amoebascope/contour.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "internal.hpp"

namespace amoebascope {

double Box::diameter() const {
    double d = 0.0;
    for (std::size_t k = 0; k < lo.size(); ++k) d = std::max(d, hi[k] - lo[k]);
    return d;
}

namespace {

struct NodeRoots {
    std::vector<cplx> roots;
    std::vector<double> defects;  // realness defect per root (NaN: undefined)
};

double defect_of(const LaurentPolynomial& f, const TorusPoint& p) {
    try {
        return realness_defect(log_gauss(f, p));
    } catch (const Error&) {
        return std::nan("");
    }
}

// roots of w -> f(e^{x + i theta}, w), dropping w ~ 0
std::vector<cplx> roots_at_node(const LaurentPolynomial& f, double x,
                                double theta) {
    try {
        detail::RingRestrictor ring(f, 0, 1, std::exp(x));
        return ring.roots_at(theta, 1e-300);
    } catch (const Error& e) {
        if (e.kind() == ErrKind::DegenerateRestriction) return {};
        throw;
    }
}

struct CellKey {
    std::array<long long, 4> v;
    bool operator<(const CellKey& o) const { return v < o.v; }
};

} // namespace

ContourCloud contour_cloud(const LaurentPolynomial& f, const Box& window,
                           const ContourParams& params) {
    if (f.ambient_dim() != 2)
        fail(ErrKind::Unsupported, "contour_cloud handles plane curves only");
    if (window.lo.size() != 2 || window.hi.size() != 2)
        fail(ErrKind::DimensionMismatch, "contour window must be 2-dimensional");
    for (int k = 0; k < 2; ++k)
        if (!(window.lo[k] < window.hi[k]))
            fail(ErrKind::InvalidArgument, "contour window is empty");
    if (params.grid < 8)
        fail(ErrKind::InvalidArgument, "contour grid too small");
    if (axis_degree_span(f, 1) == 0)
        fail(ErrKind::DegenerateRestriction,
             "polynomial does not involve the second coordinate");

    const int N = params.grid;
    const int M = N + (N % 2);  // even angle count puts 0 and pi on the grid
    const double dtheta = 2.0 * M_PI / M;
    auto theta_of = [&](int j) { return -M_PI + dtheta * (j + 1); };
    auto x_of = [&](int i) {
        return window.lo[0] + (window.hi[0] - window.lo[0]) * i / (N - 1);
    };

    std::vector<std::vector<NodeRoots>> grid(N, std::vector<NodeRoots>(M));
    std::vector<TorusPoint> candidates;

    for (int i = 0; i < N; ++i) {
        const double x = x_of(i);
        for (int j = 0; j < M; ++j) {
            NodeRoots& node = grid[i][j];
            node.roots = roots_at_node(f, x, theta_of(j));
            cplx z = std::polar(std::exp(x), theta_of(j));
            for (cplx w : node.roots) {
                TorusPoint p = detail::make_plane_point(0, z, w);
                node.defects.push_back(defect_of(f, p));
                if (is_log_critical(f, p, params.tol_f, params.tol_gamma))
                    candidates.push_back(std::move(p));
            }
        }
    }

    // refine a defect sign change between (xa, tha) and (xb, thb), moving
    // along whichever coordinate differs, tracking the nearest root
    auto refine = [&](double xa, double tha, double xb, double thb,
                      cplx track, double da) {
        for (int it = 0; it < 60; ++it) {
            double xm = 0.5 * (xa + xb), thm = 0.5 * (tha + thb);
            std::vector<cplx> rm = roots_at_node(f, xm, thm);
            int idx = detail::nearest_root(rm, track);
            if (idx < 0) return;
            track = rm[idx];
            TorusPoint p = detail::make_plane_point(
                0, std::polar(std::exp(xm), thm), track);
            double dm = defect_of(f, p);
            if (std::isnan(dm)) return;
            if ((dm > 0) == (da > 0)) { xa = xm; tha = thm; da = dm; }
            else { xb = xm; thb = thm; }
        }
        double xm = 0.5 * (xa + xb), thm = 0.5 * (tha + thb);
        std::vector<cplx> rm = roots_at_node(f, xm, thm);
        int idx = detail::nearest_root(rm, track);
        if (idx < 0) return;
        TorusPoint p = detail::make_plane_point(
            0, std::polar(std::exp(xm), thm), rm[idx]);
        if (is_log_critical(f, p, params.tol_f, params.tol_gamma))
            candidates.push_back(std::move(p));
    };

    auto sweep_pair = [&](const NodeRoots& a, const NodeRoots& b, double xa,
                          double tha, double xb, double thb) {
        std::vector<char> used(b.roots.size(), 0);
        for (std::size_t i = 0; i < a.roots.size(); ++i) {
            int best = -1;
            double bd = 0.0;
            for (std::size_t j = 0; j < b.roots.size(); ++j) {
                if (used[j]) continue;
                double d = std::abs(a.roots[i] - b.roots[j]);
                if (best < 0 || d < bd) { best = (int)j; bd = d; }
            }
            if (best < 0) continue;
            used[best] = 1;
            double da = a.defects[i], db = b.defects[best];
            if (std::isnan(da) || std::isnan(db)) continue;
            if ((da > 0) != (db > 0))
                refine(xa, tha, xb, thb, a.roots[i], da);
        }
    };

    for (int i = 0; i < N; ++i)
        for (int j = 0; j < M; ++j) {
            int j2 = (j + 1) % M;  // angle direction wraps
            sweep_pair(grid[i][j], grid[i][j2], x_of(i), theta_of(j), x_of(i),
                       theta_of(j) + dtheta);
            if (i + 1 < N)
                sweep_pair(grid[i][j], grid[i + 1][j], x_of(i), theta_of(j),
                           x_of(i + 1), theta_of(j));
        }

    // clip, canonical sort, and joint (log, arg) cell dedup
    ContourCloud out;
    std::vector<ContourEntry> entries;
    for (auto& p : candidates) {
        LogPoint lp = log_map(p);
        bool in = true;
        for (int k = 0; k < 2; ++k)
            if (lp.coords[k] < window.lo[k] || lp.coords[k] > window.hi[k])
                in = false;
        if (!in) continue;
        entries.push_back({std::move(p), std::move(lp)});
    }
    std::sort(entries.begin(), entries.end(),
              [](const ContourEntry& a, const ContourEntry& b) {
                  for (int k = 0; k < 2; ++k)
                      if (a.log.coords[k] != b.log.coords[k])
                          return a.log.coords[k] < b.log.coords[k];
                  for (int k = 0; k < 2; ++k) {
                      double aa = std::arg(a.point.coords[k]);
                      double bb = std::arg(b.point.coords[k]);
                      if (aa != bb) return aa < bb;
                  }
                  return false;
              });
    const double pitch = window.diameter() / (4.0 * N);
    const double apitch = 2.0 * M_PI / (4.0 * M);
    std::set<CellKey> seen;
    for (auto& e : entries) {
        CellKey key{};
        for (int k = 0; k < 2; ++k) {
            key.v[k] = (long long)std::floor(e.log.coords[k] / pitch);
            key.v[2 + k] =
                (long long)std::floor(std::arg(e.point.coords[k]) / apitch);
        }
        if (seen.insert(key).second) out.entries.push_back(std::move(e));
    }
    return out;
}

ContourCloud curve_contour(const RationalCurve& rho, const Box& param_window,
                           int grid, double rank_tol) {
    if (param_window.lo.size() != 1 || param_window.hi.size() != 1)
        fail(ErrKind::DimensionMismatch,
             "curve_contour window spans log|t| only");
    if (!(param_window.lo[0] < param_window.hi[0]))
        fail(ErrKind::InvalidArgument, "curve_contour window is empty");
    if (grid < 8) fail(ErrKind::InvalidArgument, "curve_contour grid too small");

    const int N = grid;
    const int M = N + (N % 2);
    const double dtheta = 2.0 * M_PI / M;
    ContourCloud out;
    for (int i = 0; i < N; ++i) {
        double lr = param_window.lo[0] +
                    (param_window.hi[0] - param_window.lo[0]) * i / (N - 1);
        double r = std::exp(lr);
        for (int j = 0; j < M; ++j) {
            cplx t = std::polar(r, -M_PI + dtheta * (j + 1));
            try {
                CurveLogJacobian jac = curve_log_jacobian(rho, t, rank_tol);
                if (jac.rank >= 2) continue;
                TorusPoint p{eval_curve(rho, t)};
                LogPoint lp = log_map(p);  // throws off the torus
                out.entries.push_back({std::move(p), std::move(lp)});
            } catch (const Error& e) {
                if (e.kind() == ErrKind::ExcludedParameter ||
                    e.kind() == ErrKind::InvalidArgument)
                    continue;
                throw;
            }
        }
    }
    return out;
}

} // namespace amoebascope
