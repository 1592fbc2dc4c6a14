#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "edgerecon/point_cloud.hpp"

namespace edgerecon {

/// Fixed-radius neighbour index on a uniform hash grid. Answers "is any
/// reference point within distance d (inclusive)?" with the same
/// floating-point comparison as a brute-force scan, so results agree exactly.
class RadiusIndex {
 public:
  RadiusIndex(std::span<const Eigen::Vector3d> reference, double radius);

  bool any_within(const Eigen::Vector3d& query) const;

 private:
  struct CellKey {
    long long x, y, z;
    friend bool operator==(const CellKey&, const CellKey&) = default;
  };
  struct CellHash {
    std::size_t operator()(const CellKey& key) const noexcept;
  };

  bool cell_of(const Eigen::Vector3d& p, CellKey& key) const;

  std::vector<Eigen::Vector3d> points_;
  double radius2_;
  double cell_size_;
  bool use_grid_ = true;
  std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> cells_;
};

/// Number of `queries` with some `reference` point at distance <= d.
std::size_t count_within(std::span<const Eigen::Vector3d> queries,
                         std::span<const Eigen::Vector3d> reference, double d);

struct QualityReport {
  double precision = 0.0;
  double recall = 0.0;
  double fscore = 0.0;
  double threshold = 0.0;
  std::size_t recon_matched = 0;
  std::size_t recon_total = 0;
  std::size_t truth_matched = 0;
  std::size_t truth_total = 0;
  bool empty_truth = false;
  std::vector<std::string> warnings;
};

inline constexpr double kThresholdFine = 0.01;
inline constexpr double kThresholdCoarse = 0.02;

/// 2PR / (P + R), with 0 when P + R == 0.
double f_measure(double precision, double recall);

/// Fraction of recon points within d of the truth cloud (1 for an empty
/// recon). Throws std::invalid_argument unless d > 0 and finite.
double precision(const PointCloud& recon, const PointCloud& truth, double d);
/// Fraction of truth points within d of the recon cloud (1 for an empty truth).
double recall(const PointCloud& recon, const PointCloud& truth, double d);

QualityReport fscore(const PointCloud& recon, const PointCloud& truth, double d);

/// Same metric on the foreground sparse clouds (optimised vs golden
/// configuration). Non-foreground labels produce a warning in the report.
QualityReport online_quality(const PointCloud& fg_sparse_opt, const PointCloud& fg_sparse_golden,
                             double d);

std::string report_to_json(const QualityReport& report, int indent = 2);

}  // namespace edgerecon
