#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace edgerecon {

struct KMeansResult {
  std::vector<Eigen::Vector3d> centroids;
  std::vector<int> assignment;  // cluster index per input point
  double inertia = 0.0;         // sum of squared distances to the own centroid
  int iterations = 0;
  std::vector<double> inertia_history;  // one entry per Lloyd iteration
};

/// Lloyd's algorithm with k-means++ seeding. Stops at an assignment fixpoint
/// or after `max_iterations`. Every returned cluster is non-empty: a cluster
/// that empties is re-seeded with the point farthest from its centroid.
/// 2D data uses z = 0. Deterministic for a given seed.
KMeansResult kmeans(std::span<const Eigen::Vector3d> points, int k, std::uint64_t seed,
                    int max_iterations = 100);

/// Mean silhouette coefficient of a labelling (singleton clusters score 0).
double silhouette_score(std::span<const Eigen::Vector3d> points, std::span<const int> assignment,
                        int k);

}  // namespace edgerecon
