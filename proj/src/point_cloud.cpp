#include "edgerecon/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace edgerecon {

bool Point3::is_finite() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
}

std::string_view to_string(CloudLabel label) {
  switch (label) {
    case CloudLabel::foreground:
      return "foreground";
    case CloudLabel::background:
      return "background";
    case CloudLabel::full:
      return "full";
  }
  return "full";
}

CloudLabel label_from_string(std::string_view name) {
  if (name == "foreground") return CloudLabel::foreground;
  if (name == "background") return CloudLabel::background;
  if (name == "full") return CloudLabel::full;
  throw std::invalid_argument("unknown cloud label '" + std::string(name) + "'");
}

void PointCloud::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].is_finite()) {
      throw std::invalid_argument("point " + std::to_string(i) + " has a non-finite coordinate");
    }
  }
}

bool same_points(const PointCloud& a, const PointCloud& b) {
  if (a.size() != b.size()) return false;
  std::vector<Point3> lhs = a.points;
  std::vector<Point3> rhs = b.points;
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  return lhs == rhs;
}

}  // namespace edgerecon
