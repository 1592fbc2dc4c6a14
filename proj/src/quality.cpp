#include "edgerecon/quality.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace edgerecon {
namespace {

void check_threshold(double d) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw std::invalid_argument("distance threshold must be a positive finite number");
  }
}

std::vector<Eigen::Vector3d> positions(const PointCloud& cloud) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(cloud.size());
  for (const Point3& p : cloud.points) out.push_back(p.position());
  return out;
}

// Beyond this many cells from the origin the integer keys could overflow.
constexpr double kMaxCellCoordinate = 1e15;

}  // namespace

std::size_t RadiusIndex::CellHash::operator()(const CellKey& key) const noexcept {
  std::size_t h = static_cast<std::size_t>(key.x) * 73856093U;
  h ^= static_cast<std::size_t>(key.y) * 19349663U;
  h ^= static_cast<std::size_t>(key.z) * 83492791U;
  return h;
}

RadiusIndex::RadiusIndex(std::span<const Eigen::Vector3d> reference, double radius)
    : points_(reference.begin(), reference.end()),
      radius2_(radius * radius),
      // Cells twice the radius wide keep any pair within `radius` in adjacent
      // cells even when the divisions below round.
      cell_size_(2.0 * radius) {
  check_threshold(radius);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    CellKey key{};
    if (!cell_of(points_[i], key)) {
      use_grid_ = false;
      cells_.clear();
      return;
    }
    cells_[key].push_back(i);
  }
}

bool RadiusIndex::cell_of(const Eigen::Vector3d& p, CellKey& key) const {
  const Eigen::Vector3d q = p / cell_size_;
  if (!(q.cwiseAbs().maxCoeff() < kMaxCellCoordinate)) return false;
  key = {static_cast<long long>(std::floor(q.x())), static_cast<long long>(std::floor(q.y())),
         static_cast<long long>(std::floor(q.z()))};
  return true;
}

bool RadiusIndex::any_within(const Eigen::Vector3d& query) const {
  auto close = [&](const Eigen::Vector3d& p) { return (p - query).squaredNorm() <= radius2_; };
  CellKey center{};
  if (!use_grid_ || !cell_of(query, center)) {
    for (const auto& p : points_) {
      if (close(p)) return true;
    }
    return false;
  }
  for (long long dx = -1; dx <= 1; ++dx) {
    for (long long dy = -1; dy <= 1; ++dy) {
      for (long long dz = -1; dz <= 1; ++dz) {
        const auto it = cells_.find({center.x + dx, center.y + dy, center.z + dz});
        if (it == cells_.end()) continue;
        for (std::size_t i : it->second) {
          if (close(points_[i])) return true;
        }
      }
    }
  }
  return false;
}

std::size_t count_within(std::span<const Eigen::Vector3d> queries,
                         std::span<const Eigen::Vector3d> reference, double d) {
  check_threshold(d);
  if (queries.empty() || reference.empty()) return 0;
  const RadiusIndex index(reference, d);
  std::size_t hits = 0;
  for (const auto& q : queries) hits += index.any_within(q) ? 1 : 0;
  return hits;
}

double f_measure(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

double precision(const PointCloud& recon, const PointCloud& truth, double d) {
  check_threshold(d);
  if (recon.empty()) return 1.0;
  const auto r = positions(recon);
  const auto t = positions(truth);
  return static_cast<double>(count_within(r, t, d)) / static_cast<double>(r.size());
}

double recall(const PointCloud& recon, const PointCloud& truth, double d) {
  return precision(truth, recon, d);
}

QualityReport fscore(const PointCloud& recon, const PointCloud& truth, double d) {
  check_threshold(d);
  QualityReport report;
  report.threshold = d;
  const auto r = positions(recon);
  const auto t = positions(truth);
  report.recon_total = r.size();
  report.truth_total = t.size();
  report.recon_matched = count_within(r, t, d);
  report.truth_matched = count_within(t, r, d);
  report.precision =
      r.empty() ? 1.0 : static_cast<double>(report.recon_matched) / static_cast<double>(r.size());
  report.recall =
      t.empty() ? 1.0 : static_cast<double>(report.truth_matched) / static_cast<double>(t.size());
  report.fscore = f_measure(report.precision, report.recall);
  report.empty_truth = t.empty();
  if (report.empty_truth) report.warnings.push_back("truth cloud is empty");
  return report;
}

QualityReport online_quality(const PointCloud& fg_sparse_opt, const PointCloud& fg_sparse_golden,
                             double d) {
  QualityReport report = fscore(fg_sparse_opt, fg_sparse_golden, d);
  if (fg_sparse_opt.label != CloudLabel::foreground) {
    report.warnings.push_back("optimised cloud is labelled " +
                              std::string(to_string(fg_sparse_opt.label)) + ", not foreground");
  }
  if (fg_sparse_golden.label != CloudLabel::foreground) {
    report.warnings.push_back("golden cloud is labelled " +
                              std::string(to_string(fg_sparse_golden.label)) +
                              ", not foreground");
  }
  return report;
}

std::string report_to_json(const QualityReport& report, int indent) {
  const nlohmann::json doc = {
      {"precision", report.precision},
      {"recall", report.recall},
      {"fscore", report.fscore},
      {"threshold", report.threshold},
      {"recon", {{"matched", report.recon_matched}, {"total", report.recon_total}}},
      {"truth", {{"matched", report.truth_matched}, {"total", report.truth_total}}},
      {"empty_truth", report.empty_truth},
      {"warnings", report.warnings}};
  return doc.dump(indent);
}

}  // namespace edgerecon
