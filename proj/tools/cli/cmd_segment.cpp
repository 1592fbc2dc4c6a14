#include <algorithm>
#include <memory>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/cli.hpp"
#include "edgerecon/raster.hpp"
#include "edgerecon/segmentation.hpp"

namespace edgerecon::cli {

void register_segment(CLI::App& app, Context& ctx) {
  struct Options {
    std::string frames;
    double k_sigma = kDefaultKSigma;
    int k_max = kDefaultMaxClusters;
    double learning_rate = kDefaultLearningRate;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
  };
  auto opts = std::make_shared<Options>();
  auto* sub = app.add_subcommand("segment", "Foreground masks of a PGM frame sequence");
  sub->add_option("frames", opts->frames, "Directory of .pgm frames, in name order")
      ->required()
      ->check(CLI::ExistingDirectory);
  sub->add_option("--ksigma", opts->k_sigma, "Foreground threshold in standard deviations")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--kmax", opts->k_max, "Largest number of clusters tried")
      ->check(CLI::PositiveNumber);
  sub->add_option("--rate", opts->learning_rate, "Background learning rate")
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--seed", opts->seed, "Clustering seed");
  sub->add_option("--out", opts->out, "Output directory for masks");
  sub->callback([opts, &ctx] {
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(opts->frames)) {
      if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
        paths.push_back(entry.path());
      }
    }
    std::sort(paths.begin(), paths.end());
    if (paths.size() < 2) throw std::invalid_argument("segment needs at least two frames");
    std::vector<GrayFrame> frames;
    for (const auto& p : paths) {
      frames.push_back(read_pgm_file(p));
      if (frames.back().width != frames.front().width ||
          frames.back().height != frames.front().height) {
        throw std::invalid_argument("frame " + p.filename().string() +
                                    " differs in size from the first frame");
      }
    }
    const auto dir = opts->out.empty() ? ctx.out_dir : std::filesystem::path(opts->out);

    nlohmann::json report = nlohmann::json::array();
    BackgroundModel model = update_background({}, frames.front(), opts->learning_rate);
    ClusterOptions cluster_opts;
    cluster_opts.k_max = opts->k_max;
    cluster_opts.seed = opts->seed;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const std::string stem = paths[i].stem().string();
      const ForegroundMask mask = extract_mask(model, frames[i], opts->k_sigma);
      write_output(dir, "mask_" + stem + ".pgm", write_pgm(mask_to_frame(mask)));
      std::size_t clusters = 0;
      if (mask.count() > 0) {
        const auto parts = cluster_mask(mask, cluster_opts);
        for (std::size_t k = 0; k < parts.size(); ++k) {
          write_output(dir, "mask_" + stem + "_c" + std::to_string(k) + ".pgm",
                       write_pgm(mask_to_frame(parts[k])));
        }
        clusters = parts.size();
      }
      report.push_back({{"frame", paths[i].filename().string()},
                        {"foreground_pixels", mask.count()},
                        {"clusters", clusters}});
      if (i > 0) model = update_background(std::move(model), frames[i], opts->learning_rate);
    }
    ctx.out << report.dump(2) << '\n';
  });
}

}  // namespace edgerecon::cli
