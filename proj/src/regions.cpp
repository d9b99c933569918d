// Voxel-grid machinery and the region-scale experiments: membership rasters,
// pushforward clouds, cylinder amoebas of two-variable linear generators,
// the generator-intersection gap report, convexity audits, and coamoebas.

#include "amoebascope/regions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <set>

#include "json.hpp"

namespace amoebascope {

// ---- VoxelGrid -------------------------------------------------------------

VoxelGrid::VoxelGrid(Box box, std::vector<int> res)
    : box_(std::move(box)), res_(std::move(res)) {
    if (res_.empty() || box_.lo.size() != res_.size() ||
        box_.hi.size() != res_.size())
        fail(ErrKind::DimensionMismatch, "voxel grid: box/resolution mismatch");
    std::size_t n = 1;
    for (std::size_t k = 0; k < res_.size(); ++k) {
        if (res_[k] < 1) fail(ErrKind::InvalidArgument, "voxel resolution < 1");
        if (!(box_.lo[k] < box_.hi[k]))
            fail(ErrKind::InvalidArgument, "voxel box is empty");
        n *= (std::size_t)res_[k];
    }
    cells_.assign(n, 0);
}

std::size_t VoxelGrid::flat(const std::vector<int>& idx) const {
    std::size_t f = 0;
    for (std::size_t k = 0; k < res_.size(); ++k) {
        if (idx[k] < 0 || idx[k] >= res_[k])
            fail(ErrKind::InvalidArgument, "voxel index out of range");
        f = f * res_[k] + idx[k];
    }
    return f;
}

std::vector<int> VoxelGrid::unflatten(std::size_t i) const {
    std::vector<int> idx(res_.size());
    for (std::size_t k = res_.size(); k-- > 0;) {
        idx[k] = (int)(i % res_[k]);
        i /= res_[k];
    }
    return idx;
}

double VoxelGrid::pitch(int axis) const {
    return (box_.hi[axis] - box_.lo[axis]) / res_[axis];
}

std::vector<double> VoxelGrid::cell_center(const std::vector<int>& idx) const {
    std::vector<double> c(res_.size());
    for (std::size_t k = 0; k < res_.size(); ++k)
        c[k] = box_.lo[k] + (idx[k] + 0.5) * pitch((int)k);
    return c;
}

bool VoxelGrid::same_layout(const VoxelGrid& other) const {
    if (res_ != other.res_) return false;
    for (std::size_t k = 0; k < res_.size(); ++k)
        if (box_.lo[k] != other.box_.lo[k] || box_.hi[k] != other.box_.hi[k])
            return false;
    return true;
}

VoxelGrid grid_intersect(const VoxelGrid& a, const VoxelGrid& b) {
    if (!a.same_layout(b))
        fail(ErrKind::GridMismatch, "grid_intersect: layouts differ");
    VoxelGrid out = a;
    for (std::size_t i = 0; i < out.cell_count(); ++i)
        out.set_flat(i, a.get_flat(i) && b.get_flat(i));
    return out;
}

VoxelGrid grid_difference(const VoxelGrid& a, const VoxelGrid& b) {
    if (!a.same_layout(b))
        fail(ErrKind::GridMismatch, "grid_difference: layouts differ");
    VoxelGrid out = a;
    for (std::size_t i = 0; i < out.cell_count(); ++i)
        out.set_flat(i, a.get_flat(i) && !b.get_flat(i));
    return out;
}

std::size_t grid_count(const VoxelGrid& g) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < g.cell_count(); ++i)
        if (g.get_flat(i)) ++n;
    return n;
}

int complement_components(const VoxelGrid& g) {
    std::vector<std::uint8_t> seen(g.cell_count(), 0);
    int comps = 0;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < g.cell_count(); ++start) {
        if (seen[start] || g.get_flat(start)) continue;
        ++comps;
        stack.push_back(start);
        seen[start] = 1;
        while (!stack.empty()) {
            std::size_t cur = stack.back();
            stack.pop_back();
            std::vector<int> idx = g.unflatten(cur);
            for (int k = 0; k < g.dim(); ++k)
                for (int step : {-1, 1}) {
                    idx[k] += step;
                    if (idx[k] >= 0 && idx[k] < g.res()[k]) {
                        std::size_t nb = g.flat(idx);
                        if (!seen[nb] && !g.get_flat(nb)) {
                            seen[nb] = 1;
                            stack.push_back(nb);
                        }
                    }
                    idx[k] -= step;
                }
        }
    }
    return comps;
}

VoxelGrid rasterize_amoeba_2d(const LaurentPolynomial& f, const Box& window,
                              int res, const FiberScanParams& params) {
    if (f.ambient_dim() != 2)
        fail(ErrKind::Unsupported, "rasterize_amoeba_2d needs a plane curve");
    VoxelGrid out(window, {res, res});
    std::vector<int> idx(2);
    for (int i = 0; i < res; ++i) {
        idx[0] = i;
        for (int j = 0; j < res; ++j) {
            idx[1] = j;
            std::vector<double> c = out.cell_center(idx);
            if (amoeba_membership_2d(f, c, params)) out.set(idx, true);
        }
    }
    return out;
}

// ---- sample clouds ---------------------------------------------------------

namespace {

// Log-polar parameter lattice with x4-refined cells around excluded
// parameters; samples within 1e-6 of an excluded parameter are dropped.
std::vector<cplx> curve_param_samples(const RationalCurve& rho, double lo,
                                      double hi, int n_radii, int n_angles) {
    if (!(lo < hi))
        fail(ErrKind::InvalidArgument, "parameter window is empty");
    if (n_radii < 2 || n_angles < 4)
        fail(ErrKind::InvalidArgument, "parameter grid too small");
    const double dl = (hi - lo) / (n_radii - 1);
    const double dth = 2.0 * M_PI / n_angles;
    auto theta_of = [&](int j) { return -M_PI + dth * (j + 1); };

    const auto excluded = rho.excluded_params();
    auto near_excluded = [&](cplx t) {
        for (cplx s : excluded)
            if (std::abs(t - s) <= 1e-6) return true;
        return false;
    };

    std::vector<cplx> out;
    out.reserve((std::size_t)n_radii * n_angles);
    for (int i = 0; i < n_radii; ++i) {
        double r = std::exp(lo + dl * i);
        for (int j = 0; j < n_angles; ++j) {
            cplx t = std::polar(r, theta_of(j));
            if (!near_excluded(t)) out.push_back(t);
        }
    }
    // refine the lattice cell around each excluded parameter in range
    for (cplx s : excluded) {
        double m = std::abs(s);
        if (m <= 0) continue;
        double ls = std::log(m);
        if (ls < lo - dl || ls > hi + dl) continue;
        int i0 = std::clamp((int)std::floor((ls - lo) / dl), 0, n_radii - 2);
        double a = std::arg(s);
        int j0 = (int)std::floor((a + M_PI) / dth) - 1;  // theta_of(j0) <= a
        for (int ai = 0; ai < 4; ++ai)
            for (int bi = 0; bi < 4; ++bi) {
                double l = lo + dl * i0 + dl * (ai + 0.5) / 4.0;
                double th = theta_of(j0) + dth * (bi + 0.5) / 4.0;
                cplx t = std::polar(std::exp(l), th);
                if (!near_excluded(t)) out.push_back(t);
            }
    }
    return out;
}

} // namespace

SampleCloud pushforward_curve(const RationalCurve& rho, double logt_lo,
                              double logt_hi, int n_radii, int n_angles) {
    SampleCloud out;
    for (cplx t :
         curve_param_samples(rho, logt_lo, logt_hi, n_radii, n_angles)) {
        std::vector<cplx> p;
        try {
            p = eval_curve(rho, t);
        } catch (const Error&) {
            continue;
        }
        CloudPoint cp;
        cp.t = t;
        cp.y.reserve(p.size());
        bool ok = true;
        for (cplx z : p) {
            double m = std::abs(z);
            if (!(m > 0) || !std::isfinite(m)) { ok = false; break; }
            cp.y.push_back(std::log(m));
        }
        if (ok) out.points.push_back(std::move(cp));
    }
    return out;
}

VoxelGrid voxelize_cloud(const SampleCloud& cloud, const Box& box,
                         const std::vector<int>& res, int dilation) {
    if (dilation < 0) fail(ErrKind::InvalidArgument, "negative dilation");
    VoxelGrid out(box, res);
    const int n = out.dim();
    std::vector<std::size_t> marked;
    std::vector<int> idx(n);
    for (const auto& p : cloud.points) {
        if ((int)p.y.size() != n)
            fail(ErrKind::DimensionMismatch, "cloud/grid dimension mismatch");
        bool in = true;
        for (int k = 0; k < n && in; ++k) {
            double rel = (p.y[k] - box.lo[k]) / (box.hi[k] - box.lo[k]);
            if (rel < 0 || rel > 1) { in = false; break; }
            idx[k] = std::min(res[k] - 1, (int)std::floor(rel * res[k]));
        }
        if (!in) continue;
        std::size_t f = out.flat(idx);
        if (!out.get_flat(f)) {
            out.set_flat(f, true);
            marked.push_back(f);
        }
    }
    if (dilation == 0) return out;
    VoxelGrid dil = out;
    std::vector<int> nb(n);
    for (std::size_t f : marked) {
        std::vector<int> c = out.unflatten(f);
        // Chebyshev cube of radius `dilation`
        std::vector<int> off(n, -dilation);
        while (true) {
            bool ok = true;
            for (int k = 0; k < n; ++k) {
                nb[k] = c[k] + off[k];
                if (nb[k] < 0 || nb[k] >= res[k]) { ok = false; break; }
            }
            if (ok) dil.set(nb, true);
            int k = 0;
            while (k < n && off[k] == dilation) off[k++] = -dilation;
            if (k == n) break;
            ++off[k];
        }
    }
    return dil;
}

// ---- linear cylinders ------------------------------------------------------

namespace {

struct LinearShape {
    int i = -1, j = -1;   // the two active axes
    double A = 0, B = 0, C = 0;  // |a|, |b|, |c|
};

LinearShape linear_shape(const LaurentPolynomial& g) {
    if (g.ambient_dim() != 3)
        fail(ErrKind::DegenerateLinear,
             "cylinder generator must live in three variables");
    if (g.terms().size() != 3)
        fail(ErrKind::DegenerateLinear,
             "cylinder generator must have exactly three terms");
    LinearShape s;
    bool have_const = false;
    for (const auto& t : g.terms()) {
        int active = -1, deg = 0;
        for (int k = 0; k < 3; ++k)
            if (t.exponents[k] != 0) {
                active = k;
                deg += std::abs(t.exponents[k]);
            }
        if (std::abs(t.coeff) == 0.0)
            fail(ErrKind::DegenerateLinear, "cylinder generator: zero coefficient");
        if (active < 0) {
            have_const = true;
            s.C = std::abs(t.coeff);
        } else if (deg == 1) {
            if (s.i < 0) { s.i = active; s.A = std::abs(t.coeff); }
            else if (s.j < 0 && active != s.i) { s.j = active; s.B = std::abs(t.coeff); }
            else
                fail(ErrKind::DegenerateLinear,
                     "cylinder generator: repeated variable");
        } else {
            fail(ErrKind::DegenerateLinear, "cylinder generator: nonlinear term");
        }
    }
    if (!have_const || s.i < 0 || s.j < 0)
        fail(ErrKind::DegenerateLinear,
             "cylinder generator must be a*z_i + b*z_j + c with a, b, c nonzero");
    return s;
}

bool triangle_closed(double a, double b, double c, double rel_slack) {
    double slack = rel_slack * std::max({a, b, c});
    return a <= b + c + slack && b <= a + c + slack && c <= a + b + slack;
}

} // namespace

bool linear_cylinder_member(const LaurentPolynomial& g,
                            const std::vector<double>& y, double rel_slack) {
    LinearShape s = linear_shape(g);
    if (y.size() != 3)
        fail(ErrKind::DimensionMismatch, "cylinder membership needs 3 coords");
    return triangle_closed(s.A * std::exp(y[s.i]), s.B * std::exp(y[s.j]), s.C,
                           rel_slack);
}

VoxelGrid linear_cylinder_amoeba_3d(const LaurentPolynomial& g,
                                    const Box& window,
                                    const std::vector<int>& res) {
    LinearShape s = linear_shape(g);
    if (window.lo.size() != 3 || res.size() != 3)
        fail(ErrKind::DimensionMismatch, "cylinder raster needs a 3-dim window");
    VoxelGrid out(window, res);
    const int k3 = 3 - s.i - s.j;  // the free axis
    std::vector<int> idx(3);
    for (int a = 0; a < res[s.i]; ++a) {
        idx[s.i] = a;
        double xa = window.lo[s.i] + (a + 0.5) * out.pitch(s.i);
        for (int b = 0; b < res[s.j]; ++b) {
            idx[s.j] = b;
            double xb = window.lo[s.j] + (b + 0.5) * out.pitch(s.j);
            if (!triangle_closed(s.A * std::exp(xa), s.B * std::exp(xb), s.C,
                                 1e-12))
                continue;
            for (int c = 0; c < res[k3]; ++c) {
                idx[k3] = c;
                out.set(idx, true);
            }
        }
    }
    return out;
}

// ---- basis gap -------------------------------------------------------------

namespace {

double uniform01(std::mt19937_64& rng) {
    // fixed mapping (not distribution-class based) so streams are portable
    return (rng() >> 11) * 0x1.0p-53;
}

} // namespace

BasisGapReport basis_gap_report(const RationalCurve& rho,
                                const std::vector<LaurentPolynomial>& gens,
                                const Box& window,
                                const BasisGapParams& params) {
    const int n = (int)window.lo.size();
    if (n != 2 && n != 3)
        fail(ErrKind::Unsupported, "basis gap windows are 2- or 3-dimensional");
    if (rho.ambient_dim() != n)
        fail(ErrKind::DimensionMismatch, "curve/window dimension mismatch");
    if (gens.empty())
        fail(ErrKind::InvalidArgument, "basis gap needs at least one generator");
    if (params.res < 8) fail(ErrKind::InvalidArgument, "basis gap res too small");

    const double lo_t = window.lo[0] - params.logt_margin;
    const double hi_t = window.hi[0] + params.logt_margin;

    // spot-check that every generator vanishes along the curve
    {
        std::mt19937_64 rng(params.seed);
        const auto excluded = rho.excluded_params();
        for (int probe = 0; probe < 100; ++probe) {
            cplx t;
            for (int tries = 0;; ++tries) {
                double l = lo_t + uniform01(rng) * (hi_t - lo_t);
                double a = -M_PI + uniform01(rng) * 2.0 * M_PI;
                t = std::polar(std::exp(l), a);
                bool near = false;
                for (cplx s : excluded)
                    if (std::abs(t - s) <= 1e-6) near = true;
                if (!near) break;
                if (tries > 1000)
                    fail(ErrKind::InsufficientSamples,
                         "basis gap: cannot sample away from excluded params");
            }
            std::vector<cplx> p = eval_curve(rho, t);
            for (std::size_t gi = 0; gi < gens.size(); ++gi)
                if (std::abs(eval_poly(gens[gi], p)) > 1e-9)
                    fail(ErrKind::GeneratorNotInIdeal,
                         "generator " + std::to_string(gi) +
                             " does not vanish on the curve");
        }
    }

    BasisGapReport rep;
    std::vector<int> res_vec(n, params.res);
    VoxelGrid inter;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        VoxelGrid g3 =
            n == 3 ? linear_cylinder_amoeba_3d(gens[gi], window, res_vec)
                   : rasterize_amoeba_2d(gens[gi], window, params.res,
                                         FiberScanParams{
                                             .angles = params.raster_angles});
        rep.generator_counts.push_back(grid_count(g3));
        inter = gi == 0 ? std::move(g3) : grid_intersect(inter, g3);
    }
    rep.intersection_count = grid_count(inter);

    SampleCloud cloud = pushforward_curve(rho, lo_t, hi_t, params.cloud_radii,
                                          params.cloud_angles);
    VoxelGrid avox = voxelize_cloud(cloud, window, res_vec, params.dilation);
    rep.amoeba_count = grid_count(avox);

    VoxelGrid diff = grid_difference(inter, avox);
    rep.difference_count = grid_count(diff);
    rep.gap_ratio = rep.intersection_count == 0
                        ? 0.0
                        : (double)rep.difference_count /
                              (double)rep.intersection_count;

    // witnesses: difference cells farthest (in grid BFS steps) from the
    // voxelized curve
    std::vector<int> dist(inter.cell_count(),
                          std::numeric_limits<int>::max() / 2);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < avox.cell_count(); ++i)
        if (avox.get_flat(i)) {
            dist[i] = 0;
            queue.push_back(i);
        }
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        std::vector<int> idx = inter.unflatten(cur);
        for (int k = 0; k < n; ++k)
            for (int step : {-1, 1}) {
                idx[k] += step;
                if (idx[k] >= 0 && idx[k] < inter.res()[k]) {
                    std::size_t nb = inter.flat(idx);
                    if (dist[nb] > dist[cur] + 1) {
                        dist[nb] = dist[cur] + 1;
                        queue.push_back(nb);
                    }
                }
                idx[k] -= step;
            }
    }
    std::vector<std::pair<int, std::size_t>> ranked;  // (-distance, index)
    for (std::size_t i = 0; i < diff.cell_count(); ++i)
        if (diff.get_flat(i)) ranked.push_back({-dist[i], i});
    std::sort(ranked.begin(), ranked.end());
    for (std::size_t i = 0;
         i < ranked.size() && (int)i < params.witness_count; ++i)
        rep.witnesses.push_back(diff.cell_center(diff.unflatten(ranked[i].second)));
    return rep;
}

std::string basis_gap_to_json(const BasisGapReport& rep) {
    nlohmann::ordered_json j;
    j["generator_counts"] = rep.generator_counts;
    j["intersection_count"] = rep.intersection_count;
    j["amoeba_count"] = rep.amoeba_count;
    j["difference_count"] = rep.difference_count;
    j["gap_ratio"] = rep.gap_ratio;
    j["witnesses"] = rep.witnesses;
    return j.dump(2) + "\n";
}

// ---- convexity audit -------------------------------------------------------

namespace {

// cyclic Jacobi for a symmetric 3x3; columns of v become eigenvectors
void jacobi3(std::array<std::array<double, 3>, 3>& a,
             std::array<double, 3>& w,
             std::array<std::array<double, 3>, 3>& v) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v[i][j] = i == j ? 1.0 : 0.0;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
        if (off < 1e-15) break;
        for (int p = 0; p < 2; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < 3; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
    }
    for (int i = 0; i < 3; ++i) w[i] = a[i][i];
}

// solve the 6x6 normal equations in place; returns false when singular
bool solve6(std::array<std::array<double, 7>, 6>& m) {
    for (int col = 0; col < 6; ++col) {
        int piv = col;
        for (int r = col + 1; r < 6; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-14) return false;
        std::swap(m[col], m[piv]);
        for (int r = 0; r < 6; ++r) {
            if (r == col) continue;
            double f = m[r][col] / m[col][col];
            for (int c = col; c < 7; ++c) m[r][c] -= f * m[col][c];
        }
    }
    for (int r = 0; r < 6; ++r) m[r][6] /= m[r][r];
    return true;
}

} // namespace

ConvexityAudit convexity_audit(const SampleCloud& cloud,
                               const std::array<double, 3>& base,
                               double radius) {
    std::vector<std::array<double, 3>> nb;
    for (const auto& p : cloud.points) {
        if (p.y.size() != 3)
            fail(ErrKind::DimensionMismatch, "convexity audit needs 3D points");
        double d2 = 0;
        for (int k = 0; k < 3; ++k)
            d2 += (p.y[k] - base[k]) * (p.y[k] - base[k]);
        if (d2 <= radius * radius)
            nb.push_back({p.y[0], p.y[1], p.y[2]});
    }
    ConvexityAudit out;
    out.base = base;
    out.sample_count = (int)nb.size();
    if (nb.size() < 30)
        fail(ErrKind::InsufficientSamples,
             "convexity audit: fewer than 30 points in the ball");

    std::array<double, 3> mean{};
    for (const auto& p : nb)
        for (int k = 0; k < 3; ++k) mean[k] += p[k];
    for (int k = 0; k < 3; ++k) mean[k] /= nb.size();
    std::array<std::array<double, 3>, 3> cov{};
    for (const auto& p : nb)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                cov[i][j] += (p[i] - mean[i]) * (p[j] - mean[j]);
    std::array<double, 3> w;
    std::array<std::array<double, 3>, 3> v;
    jacobi3(cov, w, v);

    // order by eigenvalue (descending); last column is the patch normal
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return w[a] > w[b]; });
    auto axis = [&](int rank) {
        std::array<double, 3> u{v[0][order[rank]], v[1][order[rank]],
                                v[2][order[rank]]};
        int big = 0;
        for (int k = 1; k < 3; ++k)
            if (std::abs(u[k]) > std::abs(u[big])) big = k;
        if (u[big] < 0)
            for (int k = 0; k < 3; ++k) u[k] = -u[k];
        return u;
    };
    std::array<double, 3> t1 = axis(0), t2 = axis(1), nrm = axis(2);
    out.tangent_frame = {t1, t2};

    // least-squares quadratic height field over the tangent frame
    std::array<std::array<double, 7>, 6> m{};
    for (const auto& p : nb) {
        std::array<double, 3> d{p[0] - base[0], p[1] - base[1], p[2] - base[2]};
        double u = d[0] * t1[0] + d[1] * t1[1] + d[2] * t1[2];
        double vv = d[0] * t2[0] + d[1] * t2[1] + d[2] * t2[2];
        double h = d[0] * nrm[0] + d[1] * nrm[1] + d[2] * nrm[2];
        std::array<double, 6> row{1.0, u, vv, u * u, u * vv, vv * vv};
        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 6; ++j) m[i][j] += row[i] * row[j];
            m[i][6] += row[i] * h;
        }
    }
    if (!solve6(m))
        fail(ErrKind::NonConvergence, "convexity audit: degenerate fit");
    std::array<double, 6> coef;
    for (int i = 0; i < 6; ++i) coef[i] = m[i][6];
    out.quadratic = {coef[3], coef[4], coef[5]};

    double ss = 0;
    for (const auto& p : nb) {
        std::array<double, 3> d{p[0] - base[0], p[1] - base[1], p[2] - base[2]};
        double u = d[0] * t1[0] + d[1] * t1[1] + d[2] * t1[2];
        double vv = d[0] * t2[0] + d[1] * t2[1] + d[2] * t2[2];
        double h = d[0] * nrm[0] + d[1] * nrm[1] + d[2] * nrm[2];
        double fit = coef[0] + coef[1] * u + coef[2] * vv + coef[3] * u * u +
                     coef[4] * u * vv + coef[5] * vv * vv;
        ss += (h - fit) * (h - fit);
    }
    out.fit_residual = std::sqrt(ss / nb.size()) / (radius * radius);

    double a = coef[3], b = coef[4], c = coef[5];
    double tr = a + c, disc = std::sqrt((a - c) * (a - c) + b * b);
    out.eigenvalues = {(tr + disc) / 2.0, (tr - disc) / 2.0};
    double l1 = out.eigenvalues[0], l2 = out.eigenvalues[1];
    if (l1 * l2 < 0 && std::abs(l1) > 3 * out.fit_residual &&
        std::abs(l2) > 3 * out.fit_residual)
        out.shape = PatchShape::Saddle;
    else if (l1 * l2 > 0)
        out.shape = PatchShape::Convex;
    else
        out.shape = PatchShape::Indeterminate;
    return out;
}

// ---- coamoebas -------------------------------------------------------------

ArgCloud coamoeba_cloud(const RationalCurve& rho, double logt_lo,
                        double logt_hi, int n_radii, int n_angles) {
    ArgCloud out;
    for (cplx t :
         curve_param_samples(rho, logt_lo, logt_hi, n_radii, n_angles)) {
        std::vector<cplx> p;
        try {
            p = eval_curve(rho, t);
        } catch (const Error&) {
            continue;
        }
        bool ok = true;
        for (cplx z : p)
            if (!(std::abs(z) > 0)) ok = false;
        if (!ok) continue;
        TorusPoint tp{std::move(p)};
        out.points.push_back(arg_map(tp));
    }
    return out;
}

ArgCloud arg_critical_values(const LaurentPolynomial& f, const Box& window,
                             const ContourParams& params) {
    ContourCloud contour = contour_cloud(f, window, params);
    const double apitch = 2.0 * M_PI / (4.0 * params.grid);
    std::set<std::array<long long, 2>> seen;
    ArgCloud out;
    for (const auto& e : contour.entries) {
        AngleVec a = arg_map(e.point);
        std::array<long long, 2> key{
            (long long)std::floor((a.angles[0] + M_PI) / apitch),
            (long long)std::floor((a.angles[1] + M_PI) / apitch)};
        if (seen.insert(key).second) out.points.push_back(std::move(a));
    }
    return out;
}

std::vector<int> torus_single_linkage(const ArgCloud& cloud, double linkage) {
    const int n = (int)cloud.points.size();
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int a) {
        return parent[a] == a ? a : parent[a] = find(parent[a]);
    };
    auto dist = [&](int i, int j) {
        double s = 0;
        const auto& a = cloud.points[i].angles;
        const auto& b = cloud.points[j].angles;
        for (std::size_t k = 0; k < a.size(); ++k) {
            double d = std::abs(a[k] - b[k]);
            d = std::min(d, 2.0 * M_PI - d);
            s += d * d;
        }
        return std::sqrt(s);
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (dist(i, j) <= linkage) parent[find(i)] = find(j);
    std::vector<int> label(n, -1);
    int next = 0;
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (label[r] < 0) label[r] = next++;
        out[i] = label[r];
    }
    return out;
}

} // namespace amoebascope
