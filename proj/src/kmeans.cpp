#include "edgerecon/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "edgerecon/rng.hpp"

namespace edgerecon {
namespace {

std::vector<Eigen::Vector3d> seed_plus_plus(std::span<const Eigen::Vector3d> points, int k,
                                            Rng& rng) {
  const std::size_t n = points.size();
  std::vector<Eigen::Vector3d> centroids;
  std::vector<bool> taken(n, false);
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());

  std::size_t first = std::min(n - 1, static_cast<std::size_t>(unit_uniform(rng) * n));
  taken[first] = true;
  centroids.push_back(points[first]);

  while (static_cast<int>(centroids.size()) < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (points[i] - centroids.back()).squaredNorm());
      total += d2[i];
    }
    std::size_t pick = n;
    if (total > 0.0) {
      const double target = unit_uniform(rng) * total;
      double cumulative = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (d2[i] <= 0.0) continue;
        cumulative += d2[i];
        pick = i;
        if (cumulative > target) break;
      }
    } else {
      // Only duplicates of existing centroids remain.
      for (std::size_t i = 0; i < n && pick == n; ++i) {
        if (!taken[i]) pick = i;
      }
    }
    taken[pick] = true;
    centroids.push_back(points[pick]);
  }
  return centroids;
}

int nearest(const Eigen::Vector3d& p, const std::vector<Eigen::Vector3d>& centroids) {
  int best = 0;
  double best_d2 = (p - centroids[0]).squaredNorm();
  for (int c = 1; c < static_cast<int>(centroids.size()); ++c) {
    const double d2 = (p - centroids[c]).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = c;
    }
  }
  return best;
}

}  // namespace

KMeansResult kmeans(std::span<const Eigen::Vector3d> points, int k, std::uint64_t seed,
                    int max_iterations) {
  const std::size_t n = points.size();
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (static_cast<std::size_t>(k) > n) {
    throw std::invalid_argument("k (" + std::to_string(k) + ") exceeds point count (" +
                                std::to_string(n) + ")");
  }

  Rng rng(seed);
  KMeansResult result;
  result.centroids = seed_plus_plus(points, k, rng);
  std::vector<int> previous;
  std::vector<int> members(static_cast<std::size_t>(k));

  for (int iter = 0; iter < max_iterations; ++iter) {
    result.assignment.assign(n, 0);
    std::fill(members.begin(), members.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      result.assignment[i] = nearest(points[i], result.centroids);
      ++members[result.assignment[i]];
    }

    for (int c = 0; c < k; ++c) {
      if (members[c] > 0) continue;
      std::size_t far = n;
      double far_d2 = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const int owner = result.assignment[i];
        if (members[owner] < 2) continue;
        const double d2 = (points[i] - result.centroids[owner]).squaredNorm();
        if (d2 > far_d2) {
          far_d2 = d2;
          far = i;
        }
      }
      --members[result.assignment[far]];
      result.assignment[far] = c;
      members[c] = 1;
      result.centroids[c] = points[far];
    }

    std::vector<Eigen::Vector3d> sums(static_cast<std::size_t>(k), Eigen::Vector3d::Zero());
    for (std::size_t i = 0; i < n; ++i) sums[result.assignment[i]] += points[i];
    for (int c = 0; c < k; ++c) result.centroids[c] = sums[c] / members[c];

    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      inertia += (points[i] - result.centroids[result.assignment[i]]).squaredNorm();
    }
    result.inertia = inertia;
    result.inertia_history.push_back(inertia);
    result.iterations = iter + 1;

    if (result.assignment == previous) break;
    previous = result.assignment;
  }
  return result;
}

double silhouette_score(std::span<const Eigen::Vector3d> points, std::span<const int> assignment,
                        int k) {
  const std::size_t n = points.size();
  if (assignment.size() != n) throw std::invalid_argument("assignment size mismatch");
  if (n == 0 || k < 2) return 0.0;

  std::vector<int> sizes(static_cast<std::size_t>(k), 0);
  for (int a : assignment) ++sizes[a];

  double total = 0.0;
  std::vector<double> dist_sum(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < n; ++i) {
    const int own = assignment[i];
    if (sizes[own] < 2) continue;  // singleton: s(i) = 0
    std::fill(dist_sum.begin(), dist_sum.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) dist_sum[assignment[j]] += (points[i] - points[j]).norm();
    }
    const double a = dist_sum[own] / (sizes[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      if (c != own && sizes[c] > 0) b = std::min(b, dist_sum[c] / sizes[c]);
    }
    if (!std::isfinite(b)) continue;
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

}  // namespace edgerecon
