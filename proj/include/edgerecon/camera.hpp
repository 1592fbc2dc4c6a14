#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "edgerecon/point_cloud.hpp"

namespace edgerecon {

/// Pinhole camera. `rotation` and `translation` map world to camera
/// coordinates: X_cam = R * X_world + t, with +z looking forward.
struct CameraModel {
  int id = 1;
  double focal = 1.0;  // pixels
  Eigen::Vector2d principal = Eigen::Vector2d::Zero();
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  int width = 1;
  int height = 1;

  /// Throws std::invalid_argument when R is not orthonormal (1e-6),
  /// the focal length is not positive or the image is empty.
  void validate() const;

  Eigen::Vector3d center() const { return -rotation.transpose() * translation; }
};

/// Pixel position of a projected point; nullopt means the point lies at or
/// behind the image plane (camera-frame depth <= 0).
std::optional<Eigen::Vector2d> project(const Eigen::Vector3d& point, const CameraModel& camera);
inline std::optional<Eigen::Vector2d> project(const Point3& point, const CameraModel& camera) {
  return project(point.position(), camera);
}

/// Integer pixel (column, row) hit by `point`, if it projects inside the image.
/// Pixel (c, r) covers [c, c+1) x [r, r+1).
std::optional<Eigen::Vector2i> pixel_hit(const Eigen::Vector3d& point, const CameraModel& camera);

/// Camera rig JSON: {"cameras": [{"id", "focal", "principal": [cx, cy],
/// "rotation": [[...],[...],[...]], "translation": [tx, ty, tz],
/// "width", "height"}, ...]}.
std::vector<CameraModel> cameras_from_json(const std::string& text);
std::string cameras_to_json(const std::vector<CameraModel>& cameras);
std::vector<CameraModel> read_cameras_file(const std::filesystem::path& path);
void write_cameras_file(const std::filesystem::path& path, const std::vector<CameraModel>& cameras);

}  // namespace edgerecon
