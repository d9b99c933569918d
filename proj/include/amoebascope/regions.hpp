#pragma once

// Region-scale machinery: boolean voxel grids over a window, amoeba
// membership rasters, pushforward sample clouds of parametrized curves,
// linear-generator cylinder amoebas, the generator-intersection gap report,
// local convexity audits of 3D sample clouds, and coamoeba clouds.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "amoebascope/boundary.hpp"
#include "amoebascope/contour.hpp"
#include "amoebascope/fibers.hpp"

namespace amoebascope {

// Boolean occupancy grid over a box; res[k] cells along axis k, cell centers
// at lo + (i + 0.5) * pitch.  Closed-region convention: cells whose center
// lies on a region boundary count as occupied.
class VoxelGrid {
public:
    VoxelGrid() = default;
    VoxelGrid(Box box, std::vector<int> res);

    int dim() const { return static_cast<int>(res_.size()); }
    const Box& box() const { return box_; }
    const std::vector<int>& res() const { return res_; }
    std::size_t cell_count() const { return cells_.size(); }

    bool get(const std::vector<int>& idx) const { return cells_[flat(idx)] != 0; }
    void set(const std::vector<int>& idx, bool v) { cells_[flat(idx)] = v ? 1 : 0; }
    bool get_flat(std::size_t i) const { return cells_[i] != 0; }
    void set_flat(std::size_t i, bool v) { cells_[i] = v ? 1 : 0; }

    std::vector<double> cell_center(const std::vector<int>& idx) const;
    std::vector<int> unflatten(std::size_t i) const;
    std::size_t flat(const std::vector<int>& idx) const;
    double pitch(int axis) const;
    bool same_layout(const VoxelGrid& other) const;

private:
    Box box_;
    std::vector<int> res_;
    std::vector<std::uint8_t> cells_;
};

// cellwise AND / AND NOT; layouts must match (GridMismatch otherwise).
VoxelGrid grid_intersect(const VoxelGrid& a, const VoxelGrid& b);
VoxelGrid grid_difference(const VoxelGrid& a, const VoxelGrid& b);
std::size_t grid_count(const VoxelGrid& g);

// Connected components of the *unoccupied* cells under face adjacency.
int complement_components(const VoxelGrid& g);

// Membership raster of a plane-curve amoeba: occupancy = closed membership
// at each cell center.
VoxelGrid rasterize_amoeba_2d(const LaurentPolynomial& f, const Box& window,
                              int res, const FiberScanParams& params = {});

// ---- sample clouds ---------------------------------------------------------

struct CloudPoint {
    std::vector<double> y;       // log image
    cplx t;                      // source parameter
};

struct SampleCloud {
    std::vector<CloudPoint> points;
};

// Log images of rho over a log-polar parameter grid log|t| in [lo, hi] x
// full angle circle.  Grid cells containing an excluded parameter are
// subdivided x4; samples within 1e-6 of an excluded parameter are skipped.
SampleCloud pushforward_curve(const RationalCurve& rho, double logt_lo,
                              double logt_hi, int n_radii, int n_angles);

// Occupancy of the cloud on a grid, dilated by `dilation` cells
// (Chebyshev/cube dilation).
VoxelGrid voxelize_cloud(const SampleCloud& cloud, const Box& box,
                         const std::vector<int>& res, int dilation = 1);

// ---- linear cylinder amoebas ----------------------------------------------

// Amoeba of a two-variable linear generator a*z_i + b*z_j + c inside an
// n-dim window: occupied iff (|a| e^{x_i}, |b| e^{x_j}, |c|) satisfies the
// closed triangle inequalities (with relative slack 1e-12); constant along
// every other axis.  Throws DegenerateLinear unless the polynomial has
// exactly the shape above with a, b, c nonzero.
VoxelGrid linear_cylinder_amoeba_3d(const LaurentPolynomial& g,
                                    const Box& window,
                                    const std::vector<int>& res);

// Exact (non-voxel) membership test of a log point in the cylinder amoeba.
bool linear_cylinder_member(const LaurentPolynomial& g,
                            const std::vector<double>& y,
                            double rel_slack = 1e-12);

// ---- generator-intersection gap --------------------------------------------

struct BasisGapReport {
    std::vector<std::size_t> generator_counts;  // occupied cells per cylinder
    std::size_t intersection_count = 0;
    std::size_t amoeba_count = 0;               // voxelized curve amoeba
    std::size_t difference_count = 0;           // intersection minus amoeba
    double gap_ratio = 0;                       // difference / intersection
    std::vector<std::vector<double>> witnesses; // centers of far difference cells
};

struct BasisGapParams {
    int res = 64;
    int dilation = 1;
    int cloud_radii = 1024, cloud_angles = 1024;
    double logt_margin = 1.0;   // param window beyond the box's first axis
    int raster_angles = 360;    // membership raster M (2D generators)
    int witness_count = 10;
    std::uint64_t seed = 1;     // for the ideal-membership spot check
};

// Intersect the generator amoebas (cylinders for 3D two-variable linear
// generators, membership rasters for 2D generators) over the window, voxelize
// the curve's pushforward cloud, and report the cell-count gap.  Before
// anything else, checks |g(rho(t))| <= 1e-9 at 100 seeded random parameters
// for every generator (GeneratorNotInIdeal otherwise).  Invariant: curve
// cells form a subset of the intersection.
BasisGapReport basis_gap_report(const RationalCurve& rho,
                                const std::vector<LaurentPolynomial>& gens,
                                const Box& window,
                                const BasisGapParams& params = {});

std::string basis_gap_to_json(const BasisGapReport& rep);

// ---- convexity audit --------------------------------------------------------

enum class PatchShape { Convex, Saddle, Indeterminate };

struct ConvexityAudit {
    std::array<double, 3> base{};
    std::array<std::array<double, 3>, 2> tangent_frame{};  // PCA axes
    std::array<double, 3> quadratic{};  // a, b, c of a t1^2 + b t1 t2 + c t2^2
    std::array<double, 2> eigenvalues{};
    double fit_residual = 0;            // RMS residual / radius^2
    int sample_count = 0;
    PatchShape shape = PatchShape::Indeterminate;
};

// Fit a quadratic height field over the PCA tangent frame of the cloud
// points within `radius` of `base` (>= 30 points required, else
// InsufficientSamples).  Saddle: eigenvalues of opposite sign, both
// |lambda| > 3 * fit_residual; Convex: same strict sign; else Indeterminate.
ConvexityAudit convexity_audit(const SampleCloud& cloud,
                               const std::array<double, 3>& base,
                               double radius);

// ---- coamoebas --------------------------------------------------------------

struct ArgCloud {
    std::vector<AngleVec> points;
};

// Argument images of curve samples (same sampling scheme as
// pushforward_curve).
ArgCloud coamoeba_cloud(const RationalCurve& rho, double logt_lo,
                        double logt_hi, int n_radii, int n_angles);

// Argument images of the contour entries of f over the window: the critical
// values of the argument map.  Deduplicated on an angular grid of pitch
// 2*pi/(4*grid).
ArgCloud arg_critical_values(const LaurentPolynomial& f, const Box& window,
                             const ContourParams& params = {});

// Single-linkage clustering on the flat torus (Euclidean with wraparound);
// returns cluster index per point.
std::vector<int> torus_single_linkage(const ArgCloud& cloud, double linkage);

} // namespace amoebascope
