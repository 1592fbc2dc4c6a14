#include <random>

#include <gtest/gtest.h>

#include "edgerecon/camera_selection.hpp"
#include "edgerecon/synthetic_rig.hpp"
#include "oracles/brute_selection.hpp"
#include "support/fixtures.hpp"

using namespace edgerecon;

namespace {

VisibilityMatrix matrix_from(const std::vector<std::vector<int>>& rows) {
  VisibilityMatrix m;
  for (std::size_t c = 0; c < rows.front().size(); ++c) m.camera_ids.push_back(static_cast<int>(c) + 1);
  for (const auto& row : rows) {
    std::uint64_t bits = 0;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c]) bits |= std::uint64_t{1} << c;
    }
    m.rows.push_back(bits);
  }
  return m;
}

std::vector<std::vector<int>> random_rows(std::mt19937_64& rng, std::size_t p, int n, double density) {
  std::bernoulli_distribution bit(density);
  std::vector<std::vector<int>> rows(p, std::vector<int>(static_cast<std::size_t>(n)));
  for (auto& row : rows) {
    for (auto& v : row) v = bit(rng);
  }
  return rows;
}

}  // namespace

TEST(Visibility, BehindAndCentre) {
  std::vector<CameraModel> cams;
  for (int i = 0; i < 3; ++i) {
    cams.push_back(testsupport::look_at(i + 1, Eigen::Vector3d(5.0 * std::cos(i * 2.1), 5.0 * std::sin(i * 2.1), 0),
                                        Eigen::Vector3d::Zero()));
  }
  PointCloud cloud;
  cloud.points.push_back({0, 0, 0, {}});
  cloud.points.push_back({0, 0, 100, {}});  // far above every camera's view cone
  const VisibilityMatrix m = build_visibility(cloud, cams);
  EXPECT_EQ(m.rows[0], 0b111u);
  EXPECT_EQ(m.rows[1], 0u);
}

TEST(Visibility, RingAroundCubeMatchesProjection) {
  std::vector<CameraModel> cams;
  for (int i = 0; i < 4; ++i) {
    const double a = i * 1.5707963267948966;
    cams.push_back(testsupport::look_at(i + 1, Eigen::Vector3d(4 * std::cos(a), 4 * std::sin(a), 0.5),
                                        Eigen::Vector3d::Zero(), 300.0));
  }
  PointCloud cube;
  for (int i = 0; i < 8; ++i) {
    cube.points.push_back({(i & 1) ? 1.0 : -1.0, (i & 2) ? 1.0 : -1.0, (i & 4) ? 1.0 : -1.0, {}});
  }
  const VisibilityMatrix m = build_visibility(cube, cams);
  for (std::size_t k = 0; k < 8; ++k) {
    for (int c = 0; c < 4; ++c) {
      const Eigen::Vector3d local = cams[static_cast<std::size_t>(c)].rotation * cube.points[k].position() +
                         cams[static_cast<std::size_t>(c)].translation;
      const double u = 300.0 * local.x() / local.z() + 320.0;
      const double v = 300.0 * local.y() / local.z() + 240.0;
      const bool inside = local.z() > 0 && u >= 0 && u < 640 && v >= 0 && v < 480;
      EXPECT_EQ(m.covered(k, c), inside) << k << "," << c;
    }
  }
}

TEST(Keypoints, FractionOneIsIdentity) {
  std::mt19937_64 rng(1);
  VisibilityMatrix m = matrix_from(random_rows(rng, 60, 5, 0.5));
  for (int i = 0; i < 60; ++i) m.points.emplace_back(i, 0, 0);
  const VisibilityMatrix k = select_keypoints(m, 1.0, 3);
  EXPECT_EQ(k.rows, m.rows);
}

TEST(Keypoints, CoincidentPoints) {
  VisibilityMatrix m = matrix_from(std::vector<std::vector<int>>(100, {1, 0, 1, 1}));
  m.points.assign(100, Eigen::Vector3d(1, 2, 3));
  const VisibilityMatrix k = select_keypoints(m, 0.1, 5);
  ASSERT_EQ(k.num_points(), 10u);
  for (auto row : k.rows) EXPECT_EQ(row, m.rows[0]);
}

TEST(Keypoints, OneRepresentativePerBlob) {
  std::vector<std::vector<int>> rows;
  VisibilityMatrix m;
  for (int i = 0; i < 40; ++i) rows.push_back(i < 20 ? std::vector<int>{1, 1, 0} : std::vector<int>{0, 1, 1});
  m = matrix_from(rows);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0, 0.1);
  for (int i = 0; i < 40; ++i) m.points.emplace_back(g(rng) + (i < 20 ? 0.0 : 50.0), g(rng), g(rng));
  const VisibilityMatrix k = select_keypoints(m, 0.05, 9);
  ASSERT_EQ(k.num_points(), 2u);
  EXPECT_EQ(k.rows[0], 0b011u);
  EXPECT_EQ(k.rows[1], 0b110u);
}

TEST(Selection, FullSetAndForcedSubset) {
  const VisibilityMatrix m = matrix_from({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  EXPECT_EQ(solve_camera_selection(m, 3).objective, 3u);
  std::mt19937_64 rng(4);
  const auto rows = random_rows(rng, 100, 6, 0.4);
  std::size_t expect = 0;
  for (const auto& r : rows) expect += std::count(r.begin(), r.end(), 1) >= 2;
  EXPECT_EQ(solve_camera_selection(matrix_from(rows), 6).objective, expect);
}

TEST(Selection, MatchesEnumeration) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rows = random_rows(rng, 200, 8, 0.15 + 0.01 * trial);
    const VisibilityMatrix m = matrix_from(rows);
    for (int n_prime = 3; n_prime <= 7; ++n_prime) {
      const SelectionSolution s = solve_camera_selection(m, n_prime);
      const auto brute = oracle::enumerate_best(rows, 8, n_prime);
      ASSERT_EQ(s.objective, brute.objective);
      EXPECT_EQ(s.columns, brute.columns);
      EXPECT_TRUE(s.exact);
      std::size_t flags = 0;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        int seen = 0;
        for (int c : s.columns) seen += rows[k][static_cast<std::size_t>(c)];
        EXPECT_EQ(s.covered_twice[k], seen >= 2 ? 1 : 0);
        flags += s.covered_twice[k];
      }
      EXPECT_EQ(flags, s.objective);
    }
  }
}

TEST(Selection, GreedyAboveExactLimit) {
  std::mt19937_64 rng(6);
  const VisibilityMatrix m = matrix_from(random_rows(rng, 300, 30, 0.2));
  const SelectionSolution s = solve_camera_selection(m, 5);
  EXPECT_FALSE(s.exact);
  EXPECT_EQ(s.columns.size(), 5u);
  EXPECT_EQ(coverage_objective(m, s.columns), s.objective);
}

TEST(Selection, RejectsBadSizes) {
  const VisibilityMatrix m = matrix_from({{1, 1, 0, 1}});
  EXPECT_THROW(solve_camera_selection(m, 2), std::invalid_argument);
  EXPECT_THROW(solve_camera_selection(m, 5), std::invalid_argument);
  EXPECT_THROW(solve_camera_selection(matrix_from({{1, 1}}), 2), std::invalid_argument);
}

TEST(CameraMap, ThreeCamerasSingleEntry) {
  const CameraMap map = build_camera_map(matrix_from({{1, 1, 0}, {0, 1, 1}}));
  ASSERT_EQ(map.entries.size(), 1u);
  EXPECT_EQ(map.at(3).columns, (std::vector<int>{0, 1, 2}));
}

TEST(CameraMap, RingRigMatchesEnumerationAndIsMonotone) {
  const SyntheticScene scene = make_ring_scene();
  const VisibilityMatrix m = build_visibility(scene.cloud, scene.cameras);
  std::vector<std::vector<int>> rows;
  for (std::size_t k = 0; k < m.num_points(); ++k) {
    std::vector<int> row;
    for (int c = 0; c < m.num_cameras(); ++c) row.push_back(m.covered(k, c));
    rows.push_back(row);
  }
  const CameraMap map = build_camera_map(m);
  std::size_t previous = 0;
  for (int n = 3; n <= 7; ++n) {
    EXPECT_EQ(map.at(n).objective, oracle::enumerate_best(rows, 7, n).objective);
    EXPECT_GE(map.at(n).objective, previous);
    previous = map.at(n).objective;
  }
  // fewer cameras must lose coverage on this rig, otherwise the quality
  // surface would not depend on the camera count
  EXPECT_LT(map.at(6).objective, map.at(7).objective);
  EXPECT_LT(map.at(3).objective, map.at(6).objective);
}

TEST(Visibility, CsvRoundTrip) {
  std::mt19937_64 rng(7);
  const VisibilityMatrix m = matrix_from(random_rows(rng, 30, 9, 0.5));
  const VisibilityMatrix back = visibility_from_csv(visibility_to_csv(m));
  EXPECT_EQ(back.rows, m.rows);
  EXPECT_EQ(back.camera_ids, m.camera_ids);
}
