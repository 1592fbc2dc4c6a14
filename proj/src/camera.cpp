#include "edgerecon/camera.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace edgerecon {

void CameraModel::validate() const {
  if (!(focal > 0.0) || !std::isfinite(focal)) {
    throw std::invalid_argument("camera " + std::to_string(id) + ": focal length must be > 0");
  }
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("camera " + std::to_string(id) + ": image size must be > 0");
  }
  const Eigen::Matrix3d gram = rotation.transpose() * rotation;
  if (!rotation.allFinite() || (gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-6) {
    throw std::invalid_argument("camera " + std::to_string(id) + ": rotation is not orthonormal");
  }
  if (!translation.allFinite() || !principal.allFinite()) {
    throw std::invalid_argument("camera " + std::to_string(id) + ": non-finite pose");
  }
}

std::optional<Eigen::Vector2d> project(const Eigen::Vector3d& point, const CameraModel& camera) {
  const Eigen::Vector3d local = camera.rotation * point + camera.translation;
  if (!(local.z() > 0.0)) return std::nullopt;
  return Eigen::Vector2d(camera.focal * local.x() / local.z() + camera.principal.x(),
                         camera.focal * local.y() / local.z() + camera.principal.y());
}

std::optional<Eigen::Vector2i> pixel_hit(const Eigen::Vector3d& point, const CameraModel& camera) {
  const auto uv = project(point, camera);
  if (!uv) return std::nullopt;
  const double u = std::floor(uv->x());
  const double v = std::floor(uv->y());
  if (u < 0.0 || v < 0.0 || u >= camera.width || v >= camera.height) return std::nullopt;
  return Eigen::Vector2i(static_cast<int>(u), static_cast<int>(v));
}

std::vector<CameraModel> cameras_from_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  std::vector<CameraModel> cameras;
  for (const auto& item : doc.at("cameras")) {
    CameraModel cam;
    cam.id = item.at("id").get<int>();
    cam.focal = item.at("focal").get<double>();
    const auto& pp = item.at("principal");
    cam.principal = {pp.at(0).get<double>(), pp.at(1).get<double>()};
    const auto& rot = item.at("rotation");
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) cam.rotation(r, c) = rot.at(r).at(c).get<double>();
    }
    const auto& t = item.at("translation");
    cam.translation = {t.at(0).get<double>(), t.at(1).get<double>(), t.at(2).get<double>()};
    cam.width = item.at("width").get<int>();
    cam.height = item.at("height").get<int>();
    cam.validate();
    cameras.push_back(cam);
  }
  return cameras;
}

std::string cameras_to_json(const std::vector<CameraModel>& cameras) {
  nlohmann::json list = nlohmann::json::array();
  for (const CameraModel& cam : cameras) {
    nlohmann::json rot = nlohmann::json::array();
    for (int r = 0; r < 3; ++r) {
      rot.push_back({cam.rotation(r, 0), cam.rotation(r, 1), cam.rotation(r, 2)});
    }
    list.push_back({{"id", cam.id},
                    {"focal", cam.focal},
                    {"principal", {cam.principal.x(), cam.principal.y()}},
                    {"rotation", rot},
                    {"translation", {cam.translation.x(), cam.translation.y(), cam.translation.z()}},
                    {"width", cam.width},
                    {"height", cam.height}});
  }
  return nlohmann::json{{"cameras", list}}.dump(2) + "\n";
}

std::vector<CameraModel> read_cameras_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return cameras_from_json(buffer.str());
}

void write_cameras_file(const std::filesystem::path& path,
                        const std::vector<CameraModel>& cameras) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << cameras_to_json(cameras);
}

}  // namespace edgerecon
