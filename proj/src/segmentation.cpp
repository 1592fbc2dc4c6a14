#include "edgerecon/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "edgerecon/kmeans.hpp"

namespace edgerecon {

BackgroundModel update_background(BackgroundModel model, const GrayFrame& frame,
                                  double learning_rate) {
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw std::invalid_argument("learning rate must lie in (0, 1]");
  }
  if (frame.pixels.size() != static_cast<std::size_t>(frame.width) * frame.height) {
    throw std::invalid_argument("frame raster does not match its size");
  }
  if (model.empty()) {
    model.width = frame.width;
    model.height = frame.height;
    model.mean.assign(frame.pixels.begin(), frame.pixels.end());
    model.variance.assign(frame.pixels.size(), 0.0f);
    model.frames = 1;
    return model;
  }
  if (model.width != frame.width || model.height != frame.height) {
    throw std::invalid_argument("frame size differs from the background model");
  }
  const double a = learning_rate;
  for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
    const double mean = model.mean[i];
    const double d = static_cast<double>(frame.pixels[i]) - mean;
    model.mean[i] = static_cast<float>(mean + a * d);
    model.variance[i] = static_cast<float>((1.0 - a) * (model.variance[i] + a * d * d));
  }
  ++model.frames;
  return model;
}

ForegroundMask extract_mask(const BackgroundModel& model, const GrayFrame& frame, double k_sigma,
                            double sigma_floor, int camera_id) {
  if (model.empty()) throw std::invalid_argument("background model has no frames");
  if (model.width != frame.width || model.height != frame.height) {
    throw std::invalid_argument("frame size differs from the background model");
  }
  if (k_sigma < 0.0 || sigma_floor < 0.0) {
    throw std::invalid_argument("k_sigma and sigma_floor must be non-negative");
  }
  ForegroundMask mask(camera_id, frame.width, frame.height);
  for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
    const double deviation = std::abs(static_cast<double>(frame.pixels[i]) - model.mean[i]);
    const double sigma = std::max(std::sqrt(static_cast<double>(model.variance[i])), sigma_floor);
    mask.pixels[i] = deviation > k_sigma * sigma ? 1 : 0;
  }
  return mask;
}

std::vector<ForegroundMask> cluster_mask(const ForegroundMask& mask,
                                         const ClusterOptions& options) {
  if (options.k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  std::vector<Eigen::Vector3d> coords;
  std::vector<std::size_t> pixel_index;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (mask.test(x, y)) {
        coords.emplace_back(x, y, 0.0);
        pixel_index.push_back(mask.index(x, y));
      }
    }
  }
  if (coords.empty()) throw std::invalid_argument("no foreground");

  const std::size_t n = coords.size();
  const std::size_t stride =
      std::max<std::size_t>(1, (n + options.silhouette_sample - 1) / options.silhouette_sample);
  std::vector<Eigen::Vector3d> sample;
  for (std::size_t i = 0; i < n; i += stride) sample.push_back(coords[i]);

  const int k_limit = static_cast<int>(std::min<std::size_t>(options.k_max, n));
  std::vector<int> best_assignment(n, 0);
  int best_k = 1;
  double best_score = options.min_silhouette;
  for (int k = 2; k <= k_limit; ++k) {
    const KMeansResult fit = kmeans(coords, k, options.seed);
    std::vector<int> sampled_labels;
    for (std::size_t i = 0; i < n; i += stride) sampled_labels.push_back(fit.assignment[i]);
    const double score = silhouette_score(sample, sampled_labels, k);
    if (score > best_score) {
      best_score = score;
      best_k = k;
      best_assignment = fit.assignment;
    }
  }

  // Order clusters by first pixel; pixel_index is already row-major sorted.
  std::vector<int> order;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(order.begin(), order.end(), best_assignment[i]) == order.end()) {
      order.push_back(best_assignment[i]);
    }
  }
  std::vector<ForegroundMask> clusters;
  clusters.reserve(static_cast<std::size_t>(best_k));
  for (int label : order) {
    ForegroundMask out(mask.camera_id, mask.width, mask.height);
    for (std::size_t i = 0; i < n; ++i) {
      if (best_assignment[i] == label) out.pixels[pixel_index[i]] = 1;
    }
    clusters.push_back(std::move(out));
  }
  return clusters;
}

}  // namespace edgerecon
