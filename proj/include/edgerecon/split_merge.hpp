#pragma once

#include <span>

#include "edgerecon/camera.hpp"
#include "edgerecon/point_cloud.hpp"
#include "edgerecon/raster.hpp"

namespace edgerecon {

struct SplitResult {
  PointCloud foreground;
  PointCloud background;
};

/// A point is foreground when it lands on a foreground pixel in at least
/// `min_views` cameras; projections behind a camera or outside its image
/// do not count. masks[i] belongs to cameras[i] and must match its image
/// size and id. Input order is preserved within each output.
SplitResult split_points(const PointCloud& cloud, std::span<const ForegroundMask> masks,
                         std::span<const CameraModel> cameras, int min_views = 2);

/// Foreground points followed by background points, labelled full.
PointCloud merge_clouds(const PointCloud& foreground, const PointCloud& background);

}  // namespace edgerecon
