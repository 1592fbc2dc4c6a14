#include <memory>
#include <ostream>

#include <CLI11.hpp>

#include "cli/cli.hpp"
#include "edgerecon/ply.hpp"
#include "edgerecon/quality.hpp"

namespace edgerecon::cli {

void register_eval(CLI::App& app, Context& ctx) {
  struct Options {
    std::string recon;
    std::string truth;
    double d = kThresholdFine;
  };
  auto opts = std::make_shared<Options>();
  auto* sub = app.add_subcommand("eval", "Precision / recall / F-score of two point clouds");
  sub->add_option("recon", opts->recon, "Reconstructed cloud (.ply)")->required();
  sub->add_option("truth", opts->truth, "Reference cloud (.ply)")->required();
  sub->add_option("--d", opts->d, "Distance threshold in scene units")
      ->check(CLI::PositiveNumber);
  sub->callback([opts, &ctx] {
    const PointCloud recon = read_ply_file(opts->recon);
    const PointCloud truth = read_ply_file(opts->truth);
    ctx.out << report_to_json(fscore(recon, truth, opts->d)) << '\n';
  });
}

}  // namespace edgerecon::cli
