#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "edgerecon/camera.hpp"
#include "edgerecon/point_cloud.hpp"

namespace edgerecon {

/// Binary point x camera coverage matrix. Row k is a bitset over columns;
/// column n corresponds to camera_ids[n]. At most 64 cameras.
struct VisibilityMatrix {
  std::vector<int> camera_ids;
  std::vector<std::uint64_t> rows;
  std::vector<Eigen::Vector3d> points;  // row-aligned; empty when loaded from CSV

  std::size_t num_points() const { return rows.size(); }
  int num_cameras() const { return static_cast<int>(camera_ids.size()); }
  bool covered(std::size_t point, int column) const { return (rows[point] >> column) & 1U; }

  /// Throws std::invalid_argument unless 3 <= N <= 64 and there is >= 1 row.
  void validate() const;
};

inline constexpr int kMaxCameras = 64;
/// Largest camera count solved exactly; above it the greedy fallback runs.
inline constexpr int kExactCameraLimit = 24;
inline constexpr double kDefaultKeypointFraction = 0.05;

/// A[k][n] = 1 iff point k projects inside camera n's image with positive depth.
VisibilityMatrix build_visibility(const PointCloud& cloud, std::span<const CameraModel> cameras);

/// Clusters point positions with k-means (k = ceil(fraction * rows)) and keeps
/// the member nearest each centroid, lowest index on ties. Rows keep their
/// original relative order.
VisibilityMatrix select_keypoints(const VisibilityMatrix& matrix, double fraction,
                                  std::uint64_t seed);

struct SelectionSolution {
  std::vector<int> columns;     // ascending column indices
  std::vector<int> camera_ids;  // ids of `columns`
  std::size_t objective = 0;    // points covered by >= 2 chosen cameras
  std::vector<std::uint8_t> covered_twice;  // per-row p_k
  bool exact = true;
};

/// Chooses exactly n_prime cameras maximising the number of points seen by at
/// least two of them. Exact branch-and-bound for N <= kExactCameraLimit,
/// returning the lexicographically smallest optimal column set; greedy
/// (flagged exact = false) above that.
SelectionSolution solve_camera_selection(const VisibilityMatrix& matrix, int n_prime);

/// Recomputes the objective of an arbitrary column subset.
std::size_t coverage_objective(const VisibilityMatrix& matrix, std::span<const int> columns);

/// Best subset for every camera count in [3, N].
struct CameraMap {
  int num_cameras = 0;
  std::map<int, SelectionSolution> entries;

  const SelectionSolution& at(int n_prime) const;
  bool exact() const;
};

CameraMap build_camera_map(const VisibilityMatrix& matrix);

std::string visibility_to_csv(const VisibilityMatrix& matrix);
VisibilityMatrix visibility_from_csv(const std::string& text);

std::string selection_to_json(const SelectionSolution& solution, int n_prime, int indent = 2);
std::string camera_map_to_json(const CameraMap& map, int indent = 2);

}  // namespace edgerecon
