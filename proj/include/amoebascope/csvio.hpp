#pragma once

// CSV and grid serialization.  Column orders are fixed and documented in
// docs/formats.md; floating-point fields use the shortest of %.15g/%.16g/
// %.17g that parses back to the same double, so readback is exact.

#include <string>
#include <vector>

#include "amoebascope/contour.hpp"
#include "amoebascope/fibers.hpp"
#include "amoebascope/regions.hpp"

namespace amoebascope {

// contour CSV: header "c1_re,c1_im,...,cn_re,cn_im,x1,...,xn"
void write_contour_csv(const ContourCloud& cloud, int ambient_dim,
                       const std::string& path);

// cloud CSV: header "t_re,t_im,x1,...,xn"
void write_cloud_csv(const SampleCloud& cloud, int ambient_dim,
                     const std::string& path);

// arg cloud CSV: header "a1,...,an"
void write_arg_csv(const ArgCloud& cloud, int ambient_dim,
                   const std::string& path);

// fiber hits CSV: header "angle_index,c1_re,c1_im,...,radial_residual,f_residual"
void write_fiber_csv(const FiberScanResult& scan, int ambient_dim,
                     const std::string& path);

// Voxel grid: run-length text ("<run_length>x<0|1>" tokens, newline-separated
// blocks of 16) plus a JSON sidecar carrying box, resolution and counts.
void write_grid_rle(const VoxelGrid& g, const std::string& rle_path,
                    const std::string& json_path);
VoxelGrid read_grid_rle(const std::string& rle_path,
                        const std::string& json_path);

// classification batch: input rows "x1,x2" (header optional); output header
// "x1,x2,verdict,cluster_count,hull,v1,v2,note"
void classify_csv(const LaurentPolynomial& f, const std::string& in_path,
                  const std::string& out_path,
                  const ClassifyParams& params = {});

std::string format_double(double v);   // shortest round-trip decimal

} // namespace amoebascope
