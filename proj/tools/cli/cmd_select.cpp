#include <memory>
#include <ostream>

#include <CLI11.hpp>

#include "cli/cli.hpp"
#include "edgerecon/camera.hpp"
#include "edgerecon/camera_selection.hpp"
#include "edgerecon/ply.hpp"

namespace edgerecon::cli {

void register_select(CLI::App& app, Context& ctx) {
  struct Options {
    std::string cloud;
    std::string cameras;
    double fraction = kDefaultKeypointFraction;
    int n_prime = 0;
    bool map = false;
    std::uint64_t seed = kDefaultSeed;
  };
  auto opts = std::make_shared<Options>();
  auto* sub = app.add_subcommand("select-cameras", "Best camera subset covering key points twice");
  sub->add_option("cloud", opts->cloud, "Sparse cloud (.ply)")->required();
  sub->add_option("cameras", opts->cameras, "Camera rig (.json)")->required();
  sub->add_option("--fraction", opts->fraction, "Key-point fraction; 1 keeps every point")
      ->check(CLI::Range(0.0, 1.0));
  auto* nprime = sub->add_option("--nprime", opts->n_prime, "Number of cameras to choose");
  auto* map = sub->add_flag("--map", opts->map, "Solve every camera count from 3 to N");
  nprime->excludes(map);
  sub->add_option("--seed", opts->seed, "Key-point clustering seed");
  sub->callback([opts, nprime, map, &ctx] {
    if (nprime->count() == 0 && map->count() == 0) {
      throw CLI::RequiredError("one of --nprime or --map");
    }
    const PointCloud cloud = read_ply_file(opts->cloud);
    const auto cameras = read_cameras_file(opts->cameras);
    VisibilityMatrix matrix = build_visibility(cloud, cameras);
    if (opts->fraction < 1.0) matrix = select_keypoints(matrix, opts->fraction, opts->seed);
    if (opts->map) {
      ctx.out << camera_map_to_json(build_camera_map(matrix)) << '\n';
    } else {
      if (opts->n_prime < 3 || opts->n_prime > matrix.num_cameras()) {
        throw std::invalid_argument("--nprime must lie in [3, " +
                                    std::to_string(matrix.num_cameras()) + "]");
      }
      ctx.out << selection_to_json(solve_camera_selection(matrix, opts->n_prime), opts->n_prime)
              << '\n';
    }
  });
}

}  // namespace edgerecon::cli
