#include "edgerecon/split_merge.hpp"

#include <stdexcept>
#include <string>

namespace edgerecon {

SplitResult split_points(const PointCloud& cloud, std::span<const ForegroundMask> masks,
                         std::span<const CameraModel> cameras, int min_views) {
  if (min_views < 1) throw std::invalid_argument("min_views must be >= 1");
  if (masks.size() != cameras.size()) {
    throw std::invalid_argument("expected one mask per camera (" + std::to_string(cameras.size()) +
                                " cameras, " + std::to_string(masks.size()) + " masks)");
  }
  for (std::size_t i = 0; i < cameras.size(); ++i) {
    cameras[i].validate();
    const ForegroundMask& mask = masks[i];
    if (mask.camera_id != cameras[i].id) {
      throw std::invalid_argument("mask " + std::to_string(i) + " belongs to camera " +
                                  std::to_string(mask.camera_id) + ", expected " +
                                  std::to_string(cameras[i].id));
    }
    if (mask.width != cameras[i].width || mask.height != cameras[i].height ||
        mask.pixels.size() != static_cast<std::size_t>(mask.width) * mask.height) {
      throw std::invalid_argument("mask size does not match camera " +
                                  std::to_string(cameras[i].id) + " image size");
    }
  }

  SplitResult result;
  result.foreground.label = CloudLabel::foreground;
  result.background.label = CloudLabel::background;
  for (const Point3& p : cloud.points) {
    const Eigen::Vector3d x = p.position();
    int votes = 0;
    for (std::size_t i = 0; i < cameras.size() && votes < min_views; ++i) {
      const auto hit = pixel_hit(x, cameras[i]);
      if (hit && masks[i].test(hit->x(), hit->y())) ++votes;
    }
    (votes >= min_views ? result.foreground : result.background).points.push_back(p);
  }
  return result;
}

PointCloud merge_clouds(const PointCloud& foreground, const PointCloud& background) {
  PointCloud merged;
  merged.label = CloudLabel::full;
  merged.points.reserve(foreground.size() + background.size());
  merged.points.insert(merged.points.end(), foreground.points.begin(), foreground.points.end());
  merged.points.insert(merged.points.end(), background.points.begin(), background.points.end());
  return merged;
}

}  // namespace edgerecon
