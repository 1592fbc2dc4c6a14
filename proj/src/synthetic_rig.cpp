#include "edgerecon/synthetic_rig.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Geometry>

#include "edgerecon/rng.hpp"

namespace edgerecon {

SyntheticScene make_ring_scene(const RingRigOptions& options) {
  if (options.cameras < 1) throw std::invalid_argument("rig needs at least one camera");
  SyntheticScene scene;
  const Eigen::Vector3d up(0.0, 0.0, 1.0);
  for (int n = 0; n < options.cameras; ++n) {
    const double theta = 2.0 * std::numbers::pi * n / options.cameras;
    const Eigen::Vector3d center(options.ring_radius * std::cos(theta),
                                 options.ring_radius * std::sin(theta), options.camera_height);
    const Eigen::Vector3d forward = Eigen::Vector3d(-center.x(), -center.y(), 0.0).normalized();
    const Eigen::Vector3d right = forward.cross(up).normalized();
    const Eigen::Vector3d down = forward.cross(right);

    CameraModel cam;
    cam.id = n + 1;
    cam.focal = options.focal;
    cam.width = options.image_width;
    cam.height = options.image_height;
    cam.principal = {options.image_width / 2.0, options.image_height / 2.0};
    cam.rotation.row(0) = right.transpose();
    cam.rotation.row(1) = down.transpose();
    cam.rotation.row(2) = forward.transpose();
    cam.translation = -cam.rotation * center;
    scene.cameras.push_back(cam);
  }

  Rng rng(options.seed);
  scene.cloud.label = CloudLabel::full;
  scene.cloud.points.reserve(options.points);
  for (std::size_t i = 0; i < options.points; ++i) {
    const double angle = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const double radius = std::sqrt(unit_uniform(rng)) * options.stage_radius;
    Point3 p;
    p.x = radius * std::cos(angle);
    p.y = radius * std::sin(angle);
    p.z = uniform(rng, 0.0, options.stage_height);
    p.color = {static_cast<std::uint8_t>(rng() & 0xFF), static_cast<std::uint8_t>(rng() & 0xFF),
               static_cast<std::uint8_t>(rng() & 0xFF)};
    scene.cloud.points.push_back(p);
  }
  return scene;
}

}  // namespace edgerecon
