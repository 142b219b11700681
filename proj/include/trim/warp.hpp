#pragma once

#include "trim/beltrami.hpp"
#include "trim/image.hpp"

namespace trim {

struct WarpStats {
  std::int64_t outside_pixels = 0;   // target pixels outside the mapped hull
  std::int64_t overlapped_pixels = 0;  // pixels claimed by more than one face
};

/// Pulls the source image through the piecewise-linear map: each target pixel
/// center locates its containing mapped face (ascending face index on folds),
/// interpolates the inverse displacement barycentrically and samples the
/// source bilinearly. Uncovered pixels take the fill value.
RasterImage warpImage(const RasterImage& source, const TriMesh& mesh, const PLMap& map,
                      int out_width, int out_height, WarpStats* stats = nullptr,
                      double fill = 0.0);

}  // namespace trim
