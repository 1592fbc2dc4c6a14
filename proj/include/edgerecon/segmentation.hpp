#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "edgerecon/raster.hpp"

namespace edgerecon {

/// Per-pixel running Gaussian of the static scene.
struct BackgroundModel {
  int width = 0;
  int height = 0;
  std::vector<float> mean;
  std::vector<float> variance;
  std::size_t frames = 0;

  bool empty() const { return frames == 0; }
};

inline constexpr double kDefaultLearningRate = 0.05;
inline constexpr double kDefaultSigmaFloor = 2.0;
inline constexpr double kDefaultKSigma = 2.5;
inline constexpr int kDefaultMaxClusters = 5;

/// Exponentially weighted update with rate `learning_rate` in (0, 1]:
///   d = pixel - mean;  mean += a*d;  var = (1 - a) * (var + a*d^2).
/// An empty model is initialised from the frame with zero variance.
BackgroundModel update_background(BackgroundModel model, const GrayFrame& frame,
                                  double learning_rate = kDefaultLearningRate);

/// Foreground iff |pixel - mean| > k_sigma * max(sqrt(var), sigma_floor).
ForegroundMask extract_mask(const BackgroundModel& model, const GrayFrame& frame, double k_sigma,
                            double sigma_floor = kDefaultSigmaFloor, int camera_id = 0);

struct ClusterOptions {
  int k_max = kDefaultMaxClusters;
  std::uint64_t seed = 42;
  // Silhouettes are O(n^2); larger masks are scored on a strided subsample.
  std::size_t silhouette_sample = 2000;
  // Solid blobs cut in pieces score roughly 0.35-0.6.
  double min_silhouette = 0.7;
};

/// Splits the foreground pixels into per-object masks using k-means over
/// pixel coordinates, choosing k in [1, k_max] by best silhouette (k = 1
/// unless some k >= 2 scores above min_silhouette). The returned masks
/// partition the input and are ordered by their first pixel in row-major order.
/// Throws std::invalid_argument("no foreground") for an empty mask.
std::vector<ForegroundMask> cluster_mask(const ForegroundMask& mask,
                                         const ClusterOptions& options = {});

}  // namespace edgerecon
