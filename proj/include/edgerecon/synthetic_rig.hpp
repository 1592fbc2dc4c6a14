#pragma once

#include <cstdint>
#include <vector>

#include "edgerecon/camera.hpp"
#include "edgerecon/point_cloud.hpp"

namespace edgerecon {

/// Cameras evenly spaced on a horizontal ring, all looking at the ring axis,
/// observing points scattered over a disc-shaped stage. With a narrow field
/// of view the outer points are seen by few cameras, so coverage drops as
/// cameras are removed (a stand-in for a studio capture rig).
struct RingRigOptions {
  int cameras = 7;
  double ring_radius = 8.0;
  double camera_height = 1.5;
  double focal = 900.0;
  int image_width = 640;
  int image_height = 480;
  std::size_t points = 400;
  double stage_radius = 6.0;
  double stage_height = 2.0;
  std::uint64_t seed = 42;
};

struct SyntheticScene {
  std::vector<CameraModel> cameras;
  PointCloud cloud;
};

SyntheticScene make_ring_scene(const RingRigOptions& options = {});

}  // namespace edgerecon
