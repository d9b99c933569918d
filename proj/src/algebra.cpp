#include "amoebascope/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace amoebascope {

namespace {

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

cplx ipow(cplx z, int e) {
    if (e == 0) return {1.0, 0.0};
    bool inv = e < 0;
    unsigned long long n = inv ? -(long long)e : (long long)e;
    cplx base = z, acc = {1.0, 0.0};
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return inv ? cplx{1.0, 0.0} / acc : acc;
}

double rpow(double r, int e) {
    return std::pow(r, e);
}

} // namespace

LaurentPolynomial::LaurentPolynomial(int ambient_dim, std::vector<Monomial> terms)
    : dim_(ambient_dim) {
    if (ambient_dim < 1)
        fail(ErrKind::InvalidArgument, "polynomial ambient dimension must be >= 1");
    std::map<std::vector<int>, cplx> merged;
    for (auto& m : terms) {
        if ((int)m.exponents.size() != ambient_dim)
            fail(ErrKind::DimensionMismatch,
                 "monomial exponent count does not match ambient dimension");
        merged[m.exponents] += m.coeff;
    }
    for (auto& [e, c] : merged)
        if (c != cplx{0.0, 0.0}) terms_.push_back({c, e});
    // std::map iterates lex order already
}

cplx eval_unipoly(const UniPoly& p, cplx t) {
    cplx acc = {0.0, 0.0};
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
        acc = acc * t + *it;
    return acc;
}

UniPoly derivative_unipoly(const UniPoly& p) {
    UniPoly d;
    for (std::size_t k = 1; k < p.coeffs.size(); ++k)
        d.coeffs.push_back(p.coeffs[k] * double(k));
    return d;
}

int degree(const UniPoly& p, double tol) {
    for (int k = (int)p.coeffs.size() - 1; k >= 0; --k)
        if (std::abs(p.coeffs[k]) > tol) return k;
    return -1;
}

RationalCurve::RationalCurve(int ambient_dim, std::vector<UniPoly> numerators,
                             std::vector<UniPoly> denominators)
    : dim_(ambient_dim), num_(std::move(numerators)), den_(std::move(denominators)) {
    if (ambient_dim < 1)
        fail(ErrKind::InvalidArgument, "curve ambient dimension must be >= 1");
    if ((int)num_.size() != ambient_dim || (int)den_.size() != ambient_dim)
        fail(ErrKind::DimensionMismatch,
             "curve needs one numerator/denominator pair per coordinate");
    for (int k = 0; k < ambient_dim; ++k) {
        if (degree(num_[k]) < 0)
            fail(ErrKind::InvalidArgument,
                 "curve coordinate " + std::to_string(k + 1) +
                     " has an identically zero numerator");
        if (degree(den_[k]) < 0)
            fail(ErrKind::InvalidArgument,
                 "curve coordinate " + std::to_string(k + 1) +
                     " has an identically zero denominator");
    }
    // excluded parameters: zeros of every numerator and denominator
    auto add_roots = [&](const UniPoly& p) {
        if (degree(p) < 1) return;
        for (cplx r : univariate_roots(p)) {
            bool dup = false;
            for (cplx e : excluded_)
                if (std::abs(e - r) <= 1e-9) { dup = true; break; }
            if (!dup) excluded_.push_back(r);
        }
    };
    for (int k = 0; k < ambient_dim; ++k) {
        add_roots(num_[k]);
        add_roots(den_[k]);
    }
    std::sort(excluded_.begin(), excluded_.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
}

cplx eval_poly(const LaurentPolynomial& f, const std::vector<cplx>& z) {
    if ((int)z.size() != f.ambient_dim())
        fail(ErrKind::DimensionMismatch, "eval_poly: point dimension mismatch");
    cplx acc = {0.0, 0.0};
    for (const auto& m : f.terms()) {
        cplx t = m.coeff;
        for (int j = 0; j < f.ambient_dim(); ++j)
            if (m.exponents[j] != 0) t *= ipow(z[j], m.exponents[j]);
        acc += t;
    }
    return acc;
}

double term_scale(const LaurentPolynomial& f, const std::vector<cplx>& z) {
    if ((int)z.size() != f.ambient_dim())
        fail(ErrKind::DimensionMismatch, "term_scale: point dimension mismatch");
    double scale = 0.0;
    for (const auto& m : f.terms()) {
        double t = std::abs(m.coeff);
        for (int j = 0; j < f.ambient_dim(); ++j)
            if (m.exponents[j] != 0) t *= rpow(std::abs(z[j]), m.exponents[j]);
        scale = std::max(scale, t);
    }
    return scale > 0.0 ? scale : 1.0;
}

LaurentPolynomial partial_derivative(const LaurentPolynomial& f, int axis) {
    if (axis < 0 || axis >= f.ambient_dim())
        fail(ErrKind::InvalidArgument, "partial_derivative: axis out of range");
    std::vector<Monomial> out;
    for (const auto& m : f.terms()) {
        if (m.exponents[axis] == 0) continue;
        Monomial d = m;
        d.coeff *= double(m.exponents[axis]);
        d.exponents[axis] -= 1;
        out.push_back(std::move(d));
    }
    // an empty term list is the zero polynomial in the same ambient space
    return LaurentPolynomial(f.ambient_dim(), std::move(out));
}

std::vector<cplx> eval_curve(const RationalCurve& rho, cplx t, double tol) {
    for (cplx e : rho.excluded_params())
        if (std::abs(t - e) <= tol)
            fail(ErrKind::ExcludedParameter,
                 "curve evaluation at excluded parameter near (" +
                     std::to_string(e.real()) + ", " + std::to_string(e.imag()) + ")");
    std::vector<cplx> out(rho.ambient_dim());
    for (int k = 0; k < rho.ambient_dim(); ++k)
        out[k] = eval_unipoly(rho.numerators()[k], t) /
                 eval_unipoly(rho.denominators()[k], t);
    return out;
}

FiberRestriction restrict_to_fiber(const LaurentPolynomial& f,
                                   const std::vector<double>& x,
                                   const std::vector<double>& theta,
                                   int free_axis, double tol) {
    const int n = f.ambient_dim();
    if (free_axis < 0 || free_axis >= n)
        fail(ErrKind::InvalidArgument, "restrict_to_fiber: free axis out of range");
    if ((int)x.size() != n)
        fail(ErrKind::DimensionMismatch, "restrict_to_fiber: x dimension mismatch");
    if ((int)theta.size() != n - 1)
        fail(ErrKind::DimensionMismatch,
             "restrict_to_fiber: need one angle per fixed axis");

    std::vector<cplx> fixed(n);
    {
        int k = 0;
        for (int j = 0; j < n; ++j) {
            if (j == free_axis) continue;
            fixed[j] = std::polar(std::exp(x[j]), theta[k++]);
        }
    }

    int min_e = 0, max_e = 0;
    bool first = true;
    for (const auto& m : f.terms()) {
        int e = m.exponents[free_axis];
        if (first) { min_e = max_e = e; first = false; }
        min_e = std::min(min_e, e);
        max_e = std::max(max_e, e);
    }
    if (first) fail(ErrKind::DegenerateRestriction, "restriction of empty polynomial");

    FiberRestriction out;
    out.cleared_multiplicity = min_e < 0 ? -min_e : 0;
    out.poly.coeffs.assign(max_e - min_e + 1, cplx{0.0, 0.0});

    double scale = 0.0;
    for (const auto& m : f.terms()) {
        cplx val = m.coeff;
        for (int j = 0; j < n; ++j)
            if (j != free_axis && m.exponents[j] != 0)
                val *= ipow(fixed[j], m.exponents[j]);
        scale = std::max(scale, std::abs(val));
        out.poly.coeffs[m.exponents[free_axis] - min_e] += val;
    }
    if (scale == 0.0) scale = 1.0;

    bool all_zero = true;
    for (cplx c : out.poly.coeffs)
        if (std::abs(c) > tol * scale) { all_zero = false; break; }
    if (all_zero)
        fail(ErrKind::DegenerateRestriction,
             "fiber restriction is identically ~0 at this base point");
    return out;
}

int axis_degree_span(const LaurentPolynomial& f, int axis) {
    if (axis < 0 || axis >= f.ambient_dim())
        fail(ErrKind::InvalidArgument, "axis_degree_span: axis out of range");
    int min_e = 0, max_e = 0;
    bool first = true;
    for (const auto& m : f.terms()) {
        int e = m.exponents[axis];
        if (first) { min_e = max_e = e; first = false; }
        min_e = std::min(min_e, e);
        max_e = std::max(max_e, e);
    }
    return first ? 0 : max_e - min_e;
}

// ---- Newton polytope -------------------------------------------------------

namespace {

long long cross2(const std::vector<int>& o, const std::vector<int>& a,
                 const std::vector<int>& b) {
    return (long long)(a[0] - o[0]) * (b[1] - o[1]) -
           (long long)(a[1] - o[1]) * (b[0] - o[0]);
}

// convex hull of 2D integer points, monotone chain, CCW, no collinear interior
std::vector<std::vector<int>> hull2(std::vector<std::vector<int>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const int n = (int)pts.size();
    if (n <= 2) return pts;
    std::vector<std::vector<int>> h(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    int lower = k + 1;
    for (int i = n - 2; i >= 0; --i) {
        while (k >= lower && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

// affine dimension of an integer point set (rank of differences)
int affine_rank(const std::vector<std::vector<int>>& pts) {
    if (pts.size() <= 1) return 0;
    const int d = (int)pts[0].size();
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        std::vector<double> r(d);
        for (int j = 0; j < d; ++j) r[j] = pts[i][j] - pts[0][j];
        rows.push_back(std::move(r));
    }
    int rank = 0;
    for (int col = 0; col < d && rank < (int)rows.size(); ++col) {
        int piv = -1;
        double best = 1e-9;
        for (int r = rank; r < (int)rows.size(); ++r)
            if (std::abs(rows[r][col]) > best) { best = std::abs(rows[r][col]); piv = r; }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        for (int r = 0; r < (int)rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0.0) continue;
            double m = rows[r][col] / rows[rank][col];
            for (int j = col; j < d; ++j) rows[r][j] -= m * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

// p in conv(T)?  Solve sum lambda_i t_i = p, sum lambda = 1 by elimination;
// integer inputs keep this exact to ~1e-12.
bool in_convex_combination(const std::vector<int>& p,
                           const std::vector<const std::vector<int>*>& T) {
    const int d = (int)p.size();
    const int k = (int)T.size();
    // rows: d coordinate equations + 1 affine equation; columns: k lambdas + rhs
    std::vector<std::vector<double>> M(d + 1, std::vector<double>(k + 1, 0.0));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < k; ++j) M[i][j] = (*T[j])[i];
        M[i][k] = p[i];
    }
    for (int j = 0; j < k; ++j) M[d][j] = 1.0;
    M[d][k] = 1.0;

    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < k && rank < d + 1; ++col) {
        int piv = -1;
        double best = 1e-9;
        for (int r = rank; r < d + 1; ++r)
            if (std::abs(M[r][col]) > best) { best = std::abs(M[r][col]); piv = r; }
        if (piv < 0) continue;
        std::swap(M[rank], M[piv]);
        for (int r = 0; r < d + 1; ++r) {
            if (r == rank) continue;
            double m = M[r][col] / M[rank][col];
            if (m == 0.0) continue;
            for (int j = col; j <= k; ++j) M[r][j] -= m * M[rank][j];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    // consistency of the remaining equations
    for (int r = rank; r < d + 1; ++r)
        if (std::abs(M[r][k]) > 1e-9) return false;
    // back out lambdas (free columns -> 0)
    std::vector<double> lambda(k, 0.0);
    for (int r = 0; r < rank; ++r)
        lambda[pivot_col[r]] = M[r][k] / M[r][pivot_col[r]];
    for (double l : lambda)
        if (l < -1e-9) return false;
    // residual check (free columns may make the particular solution infeasible
    // even when some other combination works -- catch with subsets instead)
    for (int i = 0; i <= d; ++i) {
        double s = (i < d) ? -double(p[i]) : -1.0;
        for (int j = 0; j < k; ++j) s += lambda[j] * ((i < d) ? (*T[j])[i] : 1.0);
        if (std::abs(s) > 1e-9) return false;
    }
    return true;
}

// extreme-point test by Caratheodory: p is redundant iff it lies in the hull
// of some subset of the others of size <= d+1
bool is_extreme(const std::vector<std::vector<int>>& pts, std::size_t idx) {
    const int d = (int)pts[idx].size();
    std::vector<const std::vector<int>*> others;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (i != idx) others.push_back(&pts[i]);
    const int m = (int)others.size();
    const int maxk = std::min(m, d + 1);
    std::vector<int> comb;
    // iterate subsets of size 1..maxk
    for (int k = 1; k <= maxk; ++k) {
        comb.assign(k, 0);
        for (int i = 0; i < k; ++i) comb[i] = i;
        while (true) {
            std::vector<const std::vector<int>*> T;
            for (int i : comb) T.push_back(others[i]);
            if (in_convex_combination(pts[idx], T)) return false;
            int i = k - 1;
            while (i >= 0 && comb[i] == m - k + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    return true;
}

} // namespace

NewtonPolytope newton_polytope(const LaurentPolynomial& f) {
    if (f.terms().empty())
        fail(ErrKind::InvalidArgument, "Newton polytope of the zero polynomial");
    NewtonPolytope np;
    np.ambient_dim = f.ambient_dim();
    std::vector<std::vector<int>> pts;
    for (const auto& m : f.terms()) pts.push_back(m.exponents);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    np.affine_dim = affine_rank(pts);

    if (np.ambient_dim == 1) {
        np.vertices.push_back(pts.front());
        if (pts.back() != pts.front()) np.vertices.push_back(pts.back());
    } else if (np.ambient_dim == 2 && np.affine_dim == 2) {
        np.vertices = hull2(pts);
        std::sort(np.vertices.begin(), np.vertices.end(), lex_less);
    } else {
        // degenerate 2D or any 3D case: exact extreme-point filter
        if (np.ambient_dim > 3)
            fail(ErrKind::Unsupported,
                 "Newton polytopes supported up to ambient dimension 3");
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (is_extreme(pts, i)) np.vertices.push_back(pts[i]);
        std::sort(np.vertices.begin(), np.vertices.end(), lex_less);
    }
    return np;
}

long long normalized_volume(const NewtonPolytope& np) {
    if (np.affine_dim != np.ambient_dim)
        fail(ErrKind::DegeneratePolytope,
             "normalized volume needs a full-dimensional polytope");
    if (np.ambient_dim == 1) {
        long long lo = np.vertices.front()[0], hi = np.vertices.back()[0];
        return hi - lo;
    }
    if (np.ambient_dim == 2) {
        // 2*area over the CCW hull = lattice-normalized volume
        auto pts = np.vertices;  // lex order; rebuild CCW via monotone chain
        std::vector<std::vector<int>> h = hull2(pts);
        long long twice_area = 0;
        for (std::size_t i = 0; i < h.size(); ++i) {
            const auto& a = h[i];
            const auto& b = h[(i + 1) % h.size()];
            twice_area += (long long)a[0] * b[1] - (long long)a[1] * b[0];
        }
        return std::llabs(twice_area);
    }
    fail(ErrKind::Unsupported,
         "normalized volume implemented for ambient dimension <= 2");
}

} // namespace amoebascope
