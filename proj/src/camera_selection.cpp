#include "edgerecon/camera_selection.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "edgerecon/errors.hpp"
#include "edgerecon/kmeans.hpp"

namespace edgerecon {

void VisibilityMatrix::validate() const {
  if (camera_ids.size() < 3) throw std::invalid_argument("camera selection needs >= 3 cameras");
  if (camera_ids.size() > static_cast<std::size_t>(kMaxCameras)) {
    throw std::invalid_argument("at most 64 cameras are supported");
  }
  if (rows.empty()) throw std::invalid_argument("visibility matrix has no points");
  if (!points.empty() && points.size() != rows.size()) {
    throw std::invalid_argument("point coordinates do not match matrix rows");
  }
  const std::uint64_t valid = camera_ids.size() == 64
                                  ? ~std::uint64_t{0}
                                  : (std::uint64_t{1} << camera_ids.size()) - 1;
  for (std::uint64_t row : rows) {
    if (row & ~valid) throw std::invalid_argument("visibility row references a missing camera");
  }
}

VisibilityMatrix build_visibility(const PointCloud& cloud, std::span<const CameraModel> cameras) {
  if (cameras.size() < 3) throw std::invalid_argument("camera selection needs >= 3 cameras");
  if (cameras.size() > static_cast<std::size_t>(kMaxCameras)) {
    throw std::invalid_argument("at most 64 cameras are supported");
  }
  VisibilityMatrix matrix;
  for (const CameraModel& cam : cameras) {
    cam.validate();
    matrix.camera_ids.push_back(cam.id);
  }
  matrix.rows.reserve(cloud.size());
  matrix.points.reserve(cloud.size());
  for (const Point3& p : cloud.points) {
    const Eigen::Vector3d x = p.position();
    std::uint64_t row = 0;
    for (std::size_t n = 0; n < cameras.size(); ++n) {
      if (pixel_hit(x, cameras[n])) row |= std::uint64_t{1} << n;
    }
    matrix.rows.push_back(row);
    matrix.points.push_back(x);
  }
  return matrix;
}

VisibilityMatrix select_keypoints(const VisibilityMatrix& matrix, double fraction,
                                  std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("key-point fraction must lie in (0, 1]");
  }
  if (matrix.points.size() != matrix.rows.size() || matrix.rows.empty()) {
    throw std::invalid_argument("key-point selection needs point coordinates");
  }
  const std::size_t total = matrix.rows.size();
  // The epsilon keeps e.g. 0.1 * 100 from rounding up to 11.
  const auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(total) - 1e-9));
  if (k < 1) throw std::invalid_argument("key-point fraction selects no points");

  const KMeansResult fit = kmeans(matrix.points, static_cast<int>(k), seed);
  std::vector<std::size_t> representative(k, total);
  std::vector<double> best_d2(k, 0.0);
  for (std::size_t i = 0; i < total; ++i) {
    const int c = fit.assignment[i];
    const double d2 = (matrix.points[i] - fit.centroids[c]).squaredNorm();
    if (representative[c] == total || d2 < best_d2[c]) {
      representative[c] = i;
      best_d2[c] = d2;
    }
  }
  std::sort(representative.begin(), representative.end());

  VisibilityMatrix out;
  out.camera_ids = matrix.camera_ids;
  for (std::size_t i : representative) {
    out.rows.push_back(matrix.rows[i]);
    out.points.push_back(matrix.points[i]);
  }
  return out;
}

namespace {

struct WeightedRow {
  std::uint64_t mask;
  std::size_t weight;
};

// Rows seen by fewer than two cameras can never count; identical rows merge.
std::vector<WeightedRow> compress_rows(const std::vector<std::uint64_t>& rows) {
  std::vector<std::uint64_t> useful;
  for (std::uint64_t r : rows) {
    if (std::popcount(r) >= 2) useful.push_back(r);
  }
  std::sort(useful.begin(), useful.end());
  std::vector<WeightedRow> out;
  for (std::uint64_t r : useful) {
    if (!out.empty() && out.back().mask == r) {
      ++out.back().weight;
    } else {
      out.push_back({r, 1});
    }
  }
  return out;
}

class BranchAndBound {
 public:
  BranchAndBound(std::vector<WeightedRow> rows, int num_cameras, int n_prime)
      : rows_(std::move(rows)), num_cameras_(num_cameras), n_prime_(n_prime) {}

  std::uint64_t solve() {
    descend(0, 0, 0);
    return best_mask_;
  }

 private:
  std::size_t evaluate(std::uint64_t chosen) const {
    std::size_t total = 0;
    for (const WeightedRow& r : rows_) {
      if (std::popcount(r.mask & chosen) >= 2) total += r.weight;
    }
    return total;
  }

  // Optimistic count: every point that could still reach two chosen cameras
  // using the undecided ones is assumed to do so.
  std::size_t upper_bound(std::uint64_t chosen, std::uint64_t undecided, int slots) const {
    std::size_t total = 0;
    for (const WeightedRow& r : rows_) {
      const int have = std::popcount(r.mask & chosen);
      const int could = std::min(std::popcount(r.mask & undecided), slots);
      if (have + could >= 2) total += r.weight;
    }
    return total;
  }

  void descend(int column, std::uint64_t chosen, int count) {
    if (count == n_prime_) {
      const std::size_t value = evaluate(chosen);
      if (!found_ || value > best_value_) {
        found_ = true;
        best_value_ = value;
        best_mask_ = chosen;
      }
      return;
    }
    const int slots = n_prime_ - count;
    if (num_cameras_ - column < slots) return;
    if (found_) {
      const std::uint64_t undecided =
          ((num_cameras_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << num_cameras_) - 1) >>
           column)
          << column;
      // Ties are not improvements: the earlier (lexicographically smaller) set wins.
      if (upper_bound(chosen, undecided, slots) <= best_value_) return;
    }
    descend(column + 1, chosen | (std::uint64_t{1} << column), count + 1);
    descend(column + 1, chosen, count);
  }

  std::vector<WeightedRow> rows_;
  int num_cameras_;
  int n_prime_;
  bool found_ = false;
  std::size_t best_value_ = 0;
  std::uint64_t best_mask_ = 0;
};

std::uint64_t greedy_selection(const std::vector<WeightedRow>& rows, int num_cameras,
                               int n_prime) {
  std::uint64_t chosen = 0;
  for (int step = 0; step < n_prime; ++step) {
    int best = -1;
    std::size_t best_twice = 0;
    std::size_t best_once = 0;
    for (int c = 0; c < num_cameras; ++c) {
      const std::uint64_t bit = std::uint64_t{1} << c;
      if (chosen & bit) continue;
      std::size_t twice = 0;
      std::size_t once = 0;
      for (const WeightedRow& r : rows) {
        const int have = std::popcount(r.mask & (chosen | bit));
        if (have >= 2) twice += r.weight;
        if (have >= 1) once += r.weight;
      }
      if (best < 0 || twice > best_twice || (twice == best_twice && once > best_once)) {
        best = c;
        best_twice = twice;
        best_once = once;
      }
    }
    chosen |= std::uint64_t{1} << best;
  }
  return chosen;
}

SelectionSolution make_solution(const VisibilityMatrix& matrix, std::uint64_t chosen, bool exact) {
  SelectionSolution solution;
  solution.exact = exact;
  for (int c = 0; c < matrix.num_cameras(); ++c) {
    if ((chosen >> c) & 1U) {
      solution.columns.push_back(c);
      solution.camera_ids.push_back(matrix.camera_ids[c]);
    }
  }
  solution.covered_twice.reserve(matrix.rows.size());
  for (std::uint64_t row : matrix.rows) {
    const bool twice = std::popcount(row & chosen) >= 2;
    solution.covered_twice.push_back(twice ? 1 : 0);
    solution.objective += twice ? 1 : 0;
  }
  return solution;
}

}  // namespace

SelectionSolution solve_camera_selection(const VisibilityMatrix& matrix, int n_prime) {
  matrix.validate();
  const int n = matrix.num_cameras();
  if (n_prime < 3 || n_prime > n) {
    throw std::invalid_argument("n_prime must lie in [3, " + std::to_string(n) + "], got " +
                                std::to_string(n_prime));
  }
  const std::vector<WeightedRow> rows = compress_rows(matrix.rows);
  if (n <= kExactCameraLimit) {
    BranchAndBound search(rows, n, n_prime);
    return make_solution(matrix, search.solve(), true);
  }
  return make_solution(matrix, greedy_selection(rows, n, n_prime), false);
}

std::size_t coverage_objective(const VisibilityMatrix& matrix, std::span<const int> columns) {
  std::uint64_t chosen = 0;
  for (int c : columns) chosen |= std::uint64_t{1} << c;
  std::size_t total = 0;
  for (std::uint64_t row : matrix.rows) total += std::popcount(row & chosen) >= 2 ? 1 : 0;
  return total;
}

const SelectionSolution& CameraMap::at(int n_prime) const {
  const auto it = entries.find(n_prime);
  if (it == entries.end()) {
    throw std::out_of_range("camera map has no entry for " + std::to_string(n_prime) +
                            " cameras");
  }
  return it->second;
}

bool CameraMap::exact() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const auto& entry) { return entry.second.exact; });
}

CameraMap build_camera_map(const VisibilityMatrix& matrix) {
  matrix.validate();
  CameraMap map;
  map.num_cameras = matrix.num_cameras();
  for (int n_prime = 3; n_prime <= map.num_cameras; ++n_prime) {
    map.entries.emplace(n_prime, solve_camera_selection(matrix, n_prime));
  }
  return map;
}

std::string visibility_to_csv(const VisibilityMatrix& matrix) {
  std::string out;
  for (int c = 0; c < matrix.num_cameras(); ++c) {
    if (c) out += ',';
    out += std::to_string(matrix.camera_ids[c]);
  }
  out += '\n';
  for (std::uint64_t row : matrix.rows) {
    for (int c = 0; c < matrix.num_cameras(); ++c) {
      if (c) out += ',';
      out += ((row >> c) & 1U) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

VisibilityMatrix visibility_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      if (!cell.empty() && cell.back() == '\r') cell.pop_back();
      cells.push_back(cell);
    }
    return cells;
  };

  VisibilityMatrix matrix;
  if (!std::getline(in, line)) {
    throw ParseError("empty visibility CSV", ParseError::Location::line, 1);
  }
  ++line_no;
  for (const std::string& cell : split(line)) {
    try {
      std::size_t used = 0;
      matrix.camera_ids.push_back(std::stoi(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw ParseError("invalid camera id '" + cell + "'", ParseError::Location::line, line_no);
    }
  }
  if (matrix.camera_ids.size() > static_cast<std::size_t>(kMaxCameras)) {
    throw ParseError("more than 64 camera columns", ParseError::Location::line, line_no);
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    if (cells.size() != matrix.camera_ids.size()) {
      throw ParseError("expected " + std::to_string(matrix.camera_ids.size()) + " columns",
                       ParseError::Location::line, line_no);
    }
    std::uint64_t row = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c] == "1") {
        row |= std::uint64_t{1} << c;
      } else if (cells[c] != "0") {
        throw ParseError("entries must be 0 or 1", ParseError::Location::line, line_no);
      }
    }
    matrix.rows.push_back(row);
  }
  return matrix;
}

namespace {

nlohmann::json selection_json(const SelectionSolution& solution, int n_prime) {
  return {{"n_prime", n_prime},
          {"cameras", solution.camera_ids},
          {"objective", solution.objective},
          {"points", solution.covered_twice.size()},
          {"exact", solution.exact}};
}

}  // namespace

std::string selection_to_json(const SelectionSolution& solution, int n_prime, int indent) {
  return selection_json(solution, n_prime).dump(indent);
}

std::string camera_map_to_json(const CameraMap& map, int indent) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [n_prime, solution] : map.entries) {
    entries.push_back(selection_json(solution, n_prime));
  }
  return nlohmann::json{{"num_cameras", map.num_cameras}, {"exact", map.exact()},
                        {"entries", entries}}
      .dump(indent);
}

}  // namespace edgerecon
