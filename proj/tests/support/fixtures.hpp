#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <tuple>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "edgerecon/camera.hpp"
#include "edgerecon/point_cloud.hpp"

namespace testsupport {

inline edgerecon::PointCloud random_cloud(std::mt19937_64& rng, std::size_t n, double extent = 1.0) {
  std::uniform_real_distribution<double> coord(-extent, extent);
  std::uniform_int_distribution<int> channel(0, 255);
  edgerecon::PointCloud cloud;
  for (std::size_t i = 0; i < n; ++i) {
    edgerecon::Point3 p;
    p.x = coord(rng);
    p.y = coord(rng);
    p.z = coord(rng);
    p.color = {static_cast<std::uint8_t>(channel(rng)), static_cast<std::uint8_t>(channel(rng)),
               static_cast<std::uint8_t>(channel(rng))};
    cloud.points.push_back(p);
  }
  return cloud;
}

inline std::vector<Eigen::Vector3d> positions(const edgerecon::PointCloud& cloud) {
  std::vector<Eigen::Vector3d> out;
  for (const auto& p : cloud.points) out.push_back(p.position());
  return out;
}

// Multiset comparison written independently of same_points().
inline bool multiset_equal(const edgerecon::PointCloud& a, const edgerecon::PointCloud& b) {
  auto key = [](const edgerecon::Point3& p) {
    return std::make_tuple(p.x, p.y, p.z, p.color.r, p.color.g, p.color.b);
  };
  std::vector<decltype(key(edgerecon::Point3{}))> ka, kb;
  for (const auto& p : a.points) ka.push_back(key(p));
  for (const auto& p : b.points) kb.push_back(key(p));
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  return ka == kb;
}

// Camera at `center` looking at `target`, y axis pointing down.
inline edgerecon::CameraModel look_at(int id, const Eigen::Vector3d& center,
                                      const Eigen::Vector3d& target, double focal = 500.0,
                                      int width = 640, int height = 480) {
  const Eigen::Vector3d forward = (target - center).normalized();
  Eigen::Vector3d up(0, 0, 1);
  if (std::abs(forward.dot(up)) > 0.99) up = Eigen::Vector3d(0, 1, 0);
  const Eigen::Vector3d right = forward.cross(up).normalized();
  const Eigen::Vector3d down = forward.cross(right);
  edgerecon::CameraModel cam;
  cam.id = id;
  cam.focal = focal;
  cam.principal = {width / 2.0, height / 2.0};
  cam.rotation.row(0) = right.transpose();
  cam.rotation.row(1) = down.transpose();
  cam.rotation.row(2) = forward.transpose();
  cam.translation = -cam.rotation * center;
  cam.width = width;
  cam.height = height;
  return cam;
}

}  // namespace testsupport
