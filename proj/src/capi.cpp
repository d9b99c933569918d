// C wrapper: opaque handles over the C++ core, exceptions mapped to status
// codes, last error message kept per thread.

#include "amoebascope.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "amoebascope/algebra.hpp"
#include "amoebascope/boundary.hpp"
#include "amoebascope/contour.hpp"
#include "amoebascope/csvio.hpp"
#include "amoebascope/fibers.hpp"
#include "amoebascope/parse.hpp"
#include "amoebascope/regions.hpp"
#include "amoebascope/scenario.hpp"

using namespace amoebascope;

namespace {

thread_local std::string g_last_error;

int code_of(ErrKind k) {
    switch (k) {
        case ErrKind::InvalidArgument: return ASC_ERR_INVALID;
        case ErrKind::Parse: return ASC_ERR_PARSE;
        case ErrKind::DimensionMismatch: return ASC_ERR_DIMENSION;
        case ErrKind::ExcludedParameter: return ASC_ERR_EXCLUDED_PARAM;
        case ErrKind::NonConvergence: return ASC_ERR_NONCONVERGENCE;
        case ErrKind::DegenerateRestriction:
        case ErrKind::DegeneratePolytope:
        case ErrKind::DegenerateLinear: return ASC_ERR_DEGENERATE;
        case ErrKind::SingularPoint: return ASC_ERR_SINGULAR;
        case ErrKind::GridMismatch: return ASC_ERR_GRID_MISMATCH;
        case ErrKind::GeneratorNotInIdeal: return ASC_ERR_NOT_IN_IDEAL;
        case ErrKind::AmbiguousNormal: return ASC_ERR_AMBIGUOUS_NORMAL;
        case ErrKind::EntireFamily: return ASC_ERR_ENTIRE_FAMILY;
        case ErrKind::NoPinch: return ASC_ERR_NO_PINCH;
        case ErrKind::InsufficientSamples: return ASC_ERR_INSUFFICIENT_SAMPLES;
        case ErrKind::UnknownScenario: return ASC_ERR_UNKNOWN_SCENARIO;
        case ErrKind::Io: return ASC_ERR_IO;
        case ErrKind::Unsupported: return ASC_ERR_UNSUPPORTED;
    }
    return ASC_ERR_INTERNAL;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return ASC_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return code_of(e.kind());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return ASC_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ASC_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return ASC_ERR_INTERNAL;
    }
}

int require(bool ok, const char* msg) {
    if (ok) return ASC_OK;
    g_last_error = msg;
    return ASC_ERR_INVALID;
}

void copy_out(const std::string& text, char* buf, size_t cap) {
    if (!buf || cap == 0) return;
    size_t n = text.size() < cap - 1 ? text.size() : cap - 1;
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
}

} // namespace

struct asc_poly {
    LaurentPolynomial p;
};
struct asc_curve {
    RationalCurve c;
};

extern "C" {

const char* asc_version(void) { return "1.0.0"; }

const char* asc_last_error(void) { return g_last_error.c_str(); }

int asc_poly_parse(const char* text, asc_poly** out) {
    if (int rc = require(text && out, "text/out must be non-NULL")) return rc;
    *out = nullptr;
    return guarded([&] { *out = new asc_poly{parse_polynomial(text)}; });
}

void asc_poly_free(asc_poly* p) { delete p; }

int asc_poly_dim(const asc_poly* p, int* out_dim) {
    if (int rc = require(p && out_dim, "p/out_dim must be non-NULL")) return rc;
    *out_dim = p->p.ambient_dim();
    g_last_error.clear();
    return ASC_OK;
}

int asc_poly_eval(const asc_poly* p, const double* z_reim, double* out_re,
                  double* out_im) {
    if (int rc = require(p && z_reim && out_re && out_im,
                         "arguments must be non-NULL"))
        return rc;
    return guarded([&] {
        std::vector<cplx> z;
        for (int k = 0; k < p->p.ambient_dim(); ++k)
            z.emplace_back(z_reim[2 * k], z_reim[2 * k + 1]);
        cplx v = eval_poly(p->p, z);
        *out_re = v.real();
        *out_im = v.imag();
    });
}

int asc_gauss_degree(const asc_poly* p, long long* out_degree) {
    if (int rc = require(p && out_degree, "p/out_degree must be non-NULL"))
        return rc;
    return guarded([&] { *out_degree = gauss_degree(p->p); });
}

int asc_curve_parse(const char* text, asc_curve** out) {
    if (int rc = require(text && out, "text/out must be non-NULL")) return rc;
    *out = nullptr;
    return guarded([&] { *out = new asc_curve{parse_curve(text)}; });
}

void asc_curve_free(asc_curve* c) { delete c; }

int asc_curve_dim(const asc_curve* c, int* out_dim) {
    if (int rc = require(c && out_dim, "c/out_dim must be non-NULL")) return rc;
    *out_dim = c->c.ambient_dim();
    g_last_error.clear();
    return ASC_OK;
}

int asc_curve_eval(const asc_curve* c, double t_re, double t_im,
                   double* out_reim) {
    if (int rc = require(c && out_reim, "c/out_reim must be non-NULL"))
        return rc;
    return guarded([&] {
        std::vector<cplx> v = eval_curve(c->c, cplx(t_re, t_im));
        for (std::size_t k = 0; k < v.size(); ++k) {
            out_reim[2 * k] = v[k].real();
            out_reim[2 * k + 1] = v[k].imag();
        }
    });
}

int asc_fiber_scan(const asc_poly* p, double x1, double x2, int angles,
                   double tol_radial, int* out_dimension, int* out_n_clusters,
                   double* clusters_reim, int cap) {
    if (int rc = require(p && out_dimension && out_n_clusters,
                         "p/out pointers must be non-NULL"))
        return rc;
    return guarded([&] {
        FiberScanParams params;
        if (angles > 0) params.angles = angles;
        if (tol_radial > 0) params.tol_radial = tol_radial;
        FiberScanResult r = fiber_scan(p->p, {x1, x2}, params);
        switch (r.dimension_estimate) {
            case FiberDim::Empty: *out_dimension = ASC_FIBER_EMPTY; break;
            case FiberDim::Finite: *out_dimension = ASC_FIBER_FINITE; break;
            case FiberDim::PositiveDimensional:
                *out_dimension = ASC_FIBER_POSDIM;
                break;
        }
        *out_n_clusters = (int)r.clusters.size();
        if (clusters_reim) {
            int n = (int)r.clusters.size() < cap ? (int)r.clusters.size() : cap;
            for (int i = 0; i < n; ++i) {
                const TorusPoint& z = r.clusters[i].representative;
                clusters_reim[4 * i + 0] = z.coords[0].real();
                clusters_reim[4 * i + 1] = z.coords[0].imag();
                clusters_reim[4 * i + 2] = z.coords[1].real();
                clusters_reim[4 * i + 3] = z.coords[1].imag();
            }
        }
    });
}

int asc_membership(const asc_poly* p, double x1, double x2, int angles,
                   int* out_member) {
    if (int rc = require(p && out_member, "p/out_member must be non-NULL"))
        return rc;
    return guarded([&] {
        FiberScanParams params;
        if (angles > 0) params.angles = angles;
        FiberScanResult r = fiber_scan(p->p, {x1, x2}, params);
        *out_member = r.dimension_estimate != FiberDim::Empty ? 1 : 0;
    });
}

int asc_classify(const asc_poly* p, double x1, double x2, int* out_class,
                 double* out_normal) {
    if (int rc = require(p && out_class, "p/out_class must be non-NULL"))
        return rc;
    return guarded([&] {
        Classification c = classify_point(p->p, {x1, x2});
        switch (c.verdict) {
            case PointClass::Outside: *out_class = ASC_CLASS_OUTSIDE; break;
            case PointClass::Interior: *out_class = ASC_CLASS_INTERIOR; break;
            case PointClass::Boundary: *out_class = ASC_CLASS_BOUNDARY; break;
            case PointClass::NonRegular:
                *out_class = ASC_CLASS_NONREGULAR;
                break;
            case PointClass::Degenerate:
                *out_class = ASC_CLASS_DEGENERATE;
                break;
        }
        if (out_normal) {
            out_normal[0] = out_normal[1] = 0.0;
            if (c.verdict == PointClass::Boundary && !c.branches.empty()) {
                double v0 = 0, v1 = 0;
                for (const auto& b : c.branches) {
                    v0 += b.inward_normal[0];
                    v1 += b.inward_normal[1];
                }
                double norm = std::hypot(v0, v1);
                if (norm > 0) {
                    out_normal[0] = v0 / norm;
                    out_normal[1] = v1 / norm;
                }
            }
        }
    });
}

int asc_classify_csv(const asc_poly* p, const char* in_csv,
                     const char* out_csv) {
    if (int rc = require(p && in_csv && out_csv, "arguments must be non-NULL"))
        return rc;
    return guarded([&] { classify_csv(p->p, in_csv, out_csv); });
}

int asc_raster(const asc_poly* p, const double window[4], int res, int angles,
               const char* out_prefix) {
    if (int rc = require(p && window && out_prefix,
                         "arguments must be non-NULL"))
        return rc;
    return guarded([&] {
        Box box;
        box.lo = {window[0], window[2]};
        box.hi = {window[1], window[3]};
        FiberScanParams params;
        if (angles > 0) params.angles = angles;
        VoxelGrid g = rasterize_amoeba_2d(p->p, box, res, params);
        std::string prefix(out_prefix);
        write_grid_rle(g, prefix + ".rle", prefix + ".json");
    });
}

int asc_contour_csv(const asc_poly* p, const double window[4], int grid,
                    const char* out_csv) {
    if (int rc = require(p && window && out_csv, "arguments must be non-NULL"))
        return rc;
    return guarded([&] {
        Box box;
        box.lo = {window[0], window[2]};
        box.hi = {window[1], window[3]};
        ContourParams params;
        if (grid > 0) params.grid = grid;
        ContourCloud cloud = contour_cloud(p->p, box, params);
        write_contour_csv(cloud, 2, out_csv);
    });
}

int asc_curve_contour_csv(const asc_curve* c, const double param_window[4],
                          int grid, const char* out_csv) {
    if (int rc = require(c && param_window && out_csv,
                         "arguments must be non-NULL"))
        return rc;
    return guarded([&] {
        Box box;
        box.lo = {param_window[0], param_window[2]};
        box.hi = {param_window[1], param_window[3]};
        ContourCloud cloud =
            curve_contour(c->c, box, grid > 0 ? grid : 200);
        write_contour_csv(cloud, c->c.ambient_dim(), out_csv);
    });
}

int asc_pinch_locate(const asc_curve* c, double r_lo, double r_hi,
                     double out5[5]) {
    if (int rc = require(c && out5, "c/out5 must be non-NULL")) return rc;
    return guarded([&] {
        PinchResult r = locate_pinch(c->c, r_lo, r_hi);
        out5[0] = r.r_star;
        out5[1] = r.oscillation;
        out5[2] = r.x.coords.size() > 0 ? r.x.coords[0] : 0.0;
        out5[3] = r.x.coords.size() > 1 ? r.x.coords[1] : 0.0;
        out5[4] = 0.0;
    });
}

int asc_basis_gap(const asc_curve* c, const char* const* generators,
                  int n_generators, const double* window, int res,
                  int dilation, const char* out_json) {
    if (int rc = require(c && generators && window && out_json,
                         "arguments must be non-NULL"))
        return rc;
    if (int rc = require(n_generators > 0, "n_generators must be > 0"))
        return rc;
    return guarded([&] {
        int dim = c->c.ambient_dim();
        std::vector<LaurentPolynomial> gens;
        for (int i = 0; i < n_generators; ++i)
            gens.push_back(parse_polynomial(generators[i], dim));
        Box box;
        for (int k = 0; k < dim; ++k) {
            box.lo.push_back(window[2 * k]);
            box.hi.push_back(window[2 * k + 1]);
        }
        BasisGapParams params;
        if (res > 0) params.res = res;
        if (dilation >= 0) params.dilation = dilation;
        BasisGapReport rep = basis_gap_report(c->c, gens, box, params);
        std::ofstream out(out_json, std::ios::binary);
        if (!out) fail(ErrKind::Io, "cannot write " + std::string(out_json));
        out << basis_gap_to_json(rep);
    });
}

int asc_scenario_run(const char* name, const char* config_json,
                     const char* out_dir, uint64_t seed, char* metrics_buf,
                     size_t cap) {
    if (int rc = require(name != nullptr, "name must be non-NULL")) return rc;
    return guarded([&] {
        ScenarioConfig cfg;
        if (config_json && config_json[0])
            cfg = config_from_json(config_json);
        cfg.name = name;
        if (out_dir && out_dir[0]) cfg.out_dir = out_dir;
        if (seed != 0) cfg.seed = seed;
        std::string metrics = run_scenario(cfg);
        copy_out(metrics, metrics_buf, cap);
    });
}

int asc_scenario_list(char* buf, size_t cap) {
    if (int rc = require(buf && cap > 0, "buf must be non-NULL")) return rc;
    return guarded([&] {
        std::string joined;
        for (const std::string& n : scenario_names()) {
            joined += n;
            joined += '\n';
        }
        copy_out(joined, buf, cap);
    });
}

} /* extern "C" */
