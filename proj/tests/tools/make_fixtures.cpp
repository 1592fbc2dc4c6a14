// Regenerates data/fixtures: a 7-camera ring rig with 200 points, per-camera
// masks around the centre of the stage, and the expected outputs computed
// with the test oracles. Usage: make_fixtures <output dir>
#include <cmath>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "edgerecon/camera.hpp"
#include "edgerecon/ply.hpp"
#include "edgerecon/raster.hpp"
#include "edgerecon/synthetic_rig.hpp"
#include "oracles/brute_selection.hpp"
#include "oracles/split_votes.hpp"

using namespace edgerecon;

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir / "masks");

  RingRigOptions opts;
  opts.points = 200;
  opts.seed = 7;
  const SyntheticScene scene = make_ring_scene(opts);
  write_ply_file(dir / "cloud.ply", scene.cloud, PlyFormat::ascii);
  write_cameras_file(dir / "cameras.json", scene.cameras);

  // masks: discs of radius 6 px around points within 2 units of the stage axis
  std::vector<ForegroundMask> masks;
  for (const CameraModel& cam : scene.cameras) {
    ForegroundMask mask(cam.id, cam.width, cam.height);
    for (const Point3& p : scene.cloud.points) {
      if (std::hypot(p.x, p.y) > 2.0) continue;
      const auto px = pixel_hit(p.position(), cam);
      if (!px) continue;
      for (int dy = -6; dy <= 6; ++dy) {
        for (int dx = -6; dx <= 6; ++dx) {
          const int x = px->x() + dx, y = px->y() + dy;
          if (dx * dx + dy * dy <= 36 && x >= 0 && y >= 0 && x < cam.width && y < cam.height) {
            mask.set(x, y);
          }
        }
      }
    }
    write_pgm_file(dir / "masks" / ("cam_" + std::to_string(cam.id) + ".pgm"), mask_to_frame(mask));
    masks.push_back(mask);
  }

  const auto fg_index = oracle::foreground_indices(scene.cloud, masks, scene.cameras, 2);
  PointCloud fg, bg;
  fg.label = CloudLabel::foreground;
  bg.label = CloudLabel::background;
  std::size_t next = 0;
  for (std::size_t k = 0; k < scene.cloud.size(); ++k) {
    if (next < fg_index.size() && fg_index[next] == k) {
      fg.points.push_back(scene.cloud.points[k]);
      ++next;
    } else {
      bg.points.push_back(scene.cloud.points[k]);
    }
  }
  write_text(dir / "expected_fg.ply", write_ply(fg, PlyFormat::ascii));
  write_text(dir / "expected_bg.ply", write_ply(bg, PlyFormat::ascii));

  std::vector<std::vector<int>> rows;
  for (const Point3& p : scene.cloud.points) {
    std::vector<int> row;
    for (const CameraModel& cam : scene.cameras) row.push_back(pixel_hit(p.position(), cam) ? 1 : 0);
    rows.push_back(row);
  }
  nlohmann::json entries = nlohmann::json::array();
  for (int n = 3; n <= 7; ++n) {
    const auto best = oracle::enumerate_best(rows, 7, n);
    std::vector<int> ids;
    for (int c : best.columns) ids.push_back(scene.cameras[static_cast<std::size_t>(c)].id);
    entries.push_back({{"n_prime", n}, {"cameras", ids}, {"objective", best.objective}});
  }
  write_text(dir / "expected_selection.json",
             nlohmann::json{{"fraction", 1.0}, {"entries", entries}}.dump(2) + "\n");
  std::cout << "foreground " << fg.size() << " background " << bg.size() << '\n';
  return 0;
}
