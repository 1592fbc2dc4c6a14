#pragma once

#include <cstddef>
#include <vector>

#include "edgerecon/camera.hpp"
#include "edgerecon/point_cloud.hpp"
#include "edgerecon/raster.hpp"

namespace oracle {

// Indices of points landing on a set mask pixel in >= min_views cameras.
inline std::vector<std::size_t> foreground_indices(const edgerecon::PointCloud& cloud,
                                                   const std::vector<edgerecon::ForegroundMask>& masks,
                                                   const std::vector<edgerecon::CameraModel>& cameras,
                                                   int min_views) {
  std::vector<std::size_t> fg;
  for (std::size_t k = 0; k < cloud.points.size(); ++k) {
    int votes = 0;
    for (std::size_t c = 0; c < cameras.size(); ++c) {
      const auto px = edgerecon::pixel_hit(cloud.points[k].position(), cameras[c]);
      if (px && masks[c].pixels[static_cast<std::size_t>(px->y()) * masks[c].width +
                                static_cast<std::size_t>(px->x())] != 0) {
        ++votes;
      }
    }
    if (votes >= min_views) fg.push_back(k);
  }
  return fg;
}

}  // namespace oracle
