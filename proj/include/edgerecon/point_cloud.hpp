#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace edgerecon {

struct Color {
  std::uint8_t r = 255;
  std::uint8_t g = 255;
  std::uint8_t b = 255;

  friend bool operator==(const Color&, const Color&) = default;
  friend auto operator<=>(const Color&, const Color&) = default;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  Color color;

  Eigen::Vector3d position() const { return {x, y, z}; }
  bool is_finite() const;

  friend bool operator==(const Point3&, const Point3&) = default;
  friend auto operator<=>(const Point3&, const Point3&) = default;
};

enum class CloudLabel { foreground, background, full };

std::string_view to_string(CloudLabel label);
/// Throws std::invalid_argument for unknown names.
CloudLabel label_from_string(std::string_view name);

struct PointCloud {
  std::vector<Point3> points;
  CloudLabel label = CloudLabel::full;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  /// Throws std::invalid_argument if any coordinate is NaN or infinite.
  void validate() const;
};

/// Multiset equality on (coordinates, color), ignoring order and label.
bool same_points(const PointCloud& a, const PointCloud& b);

}  // namespace edgerecon
