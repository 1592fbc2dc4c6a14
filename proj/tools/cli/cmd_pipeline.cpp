#include <memory>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/cli.hpp"
#include "edgerecon/camera.hpp"
#include "edgerecon/ply.hpp"
#include "edgerecon/raster.hpp"
#include "edgerecon/split_merge.hpp"

namespace edgerecon::cli {

void register_pipeline(CLI::App& app, Context& ctx) {
  struct Options {
    std::string cloud;
    std::string masks;
    std::string cameras;
    int min_views = 2;
    std::string out;
  };
  auto opts = std::make_shared<Options>();
  auto* sub = app.add_subcommand(
      "pipeline", "Split a cloud into foreground / background by masks and merge back");
  sub->add_option("cloud", opts->cloud, "Sparse cloud (.ply)")->required();
  sub->add_option("masks", opts->masks, "Directory holding cam_<id>.pgm per camera")
      ->required()
      ->check(CLI::ExistingDirectory);
  sub->add_option("cameras", opts->cameras, "Camera rig (.json)")->required();
  sub->add_option("--min-views", opts->min_views, "Foreground votes needed per point")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", opts->out, "Output directory for fg.ply, bg.ply, merged.ply");
  sub->callback([opts, &ctx] {
    const PointCloud cloud = read_ply_file(opts->cloud);
    const auto cameras = read_cameras_file(opts->cameras);
    std::vector<ForegroundMask> masks;
    for (const auto& cam : cameras) {
      const auto path = std::filesystem::path(opts->masks) / ("cam_" + std::to_string(cam.id) + ".pgm");
      masks.push_back(mask_from_frame(read_pgm_file(path), cam.id));
    }
    const SplitResult split = split_points(cloud, masks, cameras, opts->min_views);
    const PointCloud merged = merge_clouds(split.foreground, split.background);
    const auto dir = opts->out.empty() ? ctx.out_dir : std::filesystem::path(opts->out);
    write_output(dir, "fg.ply", write_ply(split.foreground, PlyFormat::ascii));
    write_output(dir, "bg.ply", write_ply(split.background, PlyFormat::ascii));
    write_output(dir, "merged.ply", write_ply(merged, PlyFormat::ascii));
    const nlohmann::json report = {{"input", cloud.size()},
                                   {"foreground", split.foreground.size()},
                                   {"background", split.background.size()},
                                   {"merged", merged.size()}};
    ctx.out << report.dump(2) << '\n';
  });
}

}  // namespace edgerecon::cli
