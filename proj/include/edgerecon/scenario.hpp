#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "edgerecon/camera_selection.hpp"
#include "edgerecon/controller.hpp"
#include "edgerecon/rng.hpp"
#include "edgerecon/synthetic_rig.hpp"

namespace edgerecon {

/// T(r, N') = t0 * r^alpha * (N'/N)^beta, seconds.
struct LatencyLaw {
  double t0 = 1.0;
  double alpha = 2.0;
  double beta = 1.5;
};

/// Q(r, N') = q_max * r^gamma * h(N'), h taken from the camera map.
struct QualityLaw {
  double q_max = 1.0;
  double gamma = 0.3;
};

/// Shares of the front-end critical path (SfM, split, foreground MVS, merge).
struct StageFractions {
  double sfm = 0.25;
  double split = 0.01;
  double mvs_fg = 0.73;
  double merge = 0.01;

  double total() const { return sfm + split + mvs_fg + merge; }
};

/// Fixed per-task work on the back-end node, seconds.
struct BackendTimes {
  double bg_subtraction = 0.4;
  double golden_sfm = 2.94;
  double evaluation = 0.1;

  double total() const { return bg_subtraction + golden_sfm + evaluation; }
};

struct ScenarioModel {
  int num_cameras = 7;
  LatencyLaw latency;
  QualityLaw quality;
  double noise = 0.03;  // eta: T is scaled by (1 + U(-eta, eta))
  std::map<int, double> camera_factor;  // h(N') for N' in [3, N], h(N) = 1
  StageFractions stages;
  BackendTimes backend;
  double background_seconds = 22.5;  // one background dense reconstruction
  double transfer_seconds = 0.05;    // per pushed message

  /// Throws std::invalid_argument on out-of-range parameters.
  void validate() const;

  double latency_at(double r, int n_prime) const;  // noise-free
  double quality_at(double r, int n_prime) const;  // clamped to [0, 1]
};

/// h(N') = covered-twice(pi(N')) / covered-twice(pi(N)).
std::map<int, double> camera_factor_from_map(const CameraMap& map);

struct LatencySample {
  double r = 1.0;
  int n_prime = 0;
  double seconds = 0.0;
};

struct LatencyFit {
  LatencyLaw law;
  bool beta_fitted = false;
  double max_relative_residual = 0.0;
};

/// Least squares on log T = log t0 + alpha log r + beta log(N'/N). When every
/// sample uses the same camera count, beta is not identifiable and
/// `fallback_beta` is kept. Throws std::invalid_argument for fewer than three
/// samples or fewer than two distinct resolutions.
LatencyFit calibrate_latency(std::span<const LatencySample> samples, int num_cameras,
                             double fallback_beta = 1.5);

struct QualitySample {
  double r = 1.0;
  double fscore = 0.0;
};

struct QualityFit {
  QualityLaw law;
  double max_abs_residual = 0.0;
};

/// Least squares on log F = log q_max + gamma log r at full camera count.
QualityFit calibrate_quality(std::span<const QualitySample> samples);

/// Runs one task of the black-box pipeline.
Observation run_task(const ScenarioModel& model, const PipelineConfig& config, Rng& rng,
                     std::size_t task_index = 0);

/// Reference measurements of the Dance1 capture (seven cameras).
struct Dance1Reference {
  // Original pipeline latency: full scale, 0.8, 0.6 with all cameras, then
  // full scale with one camera dropped (two different cameras).
  static std::vector<LatencySample> latency_samples();
  // Foreground sparse-cloud F-score against the golden run, all cameras.
  static std::vector<QualitySample> quality_samples();
  // Optimised critical path at full configuration: SfM, foreground MVS,
  // split + merge.
  static constexpr double sfm_seconds = 2.94;
  static constexpr double mvs_fg_seconds = 8.78;
  static constexpr double split_merge_seconds = 0.26;
  static constexpr double original_total_seconds = 26.17;
  static constexpr double background_seconds = 22.5;
};

/// Calibrated model for the Dance1-like rig. The latency law's shape comes
/// from the original-pipeline samples and is rescaled to the optimised
/// critical path, which is what the controller observes per task.
ScenarioModel dance1_model(const CameraMap& map);

/// Scenario file: model parameters, rig and stream defaults.
struct Scenario {
  std::string name = "scenario";
  ScenarioModel model;
  RingRigOptions rig;
  double keypoint_fraction = 1.0;
  std::size_t tasks = 60;
  double deadline = 10.0;
  std::uint64_t seed = 42;
};

/// Builds the camera map for the scenario's rig.
CameraMap scenario_camera_map(const Scenario& scenario);

/// JSON schema:
/// {"name", "rig": {...RingRigOptions}, "keypoint_fraction",
///  "model": {"preset": "dance1"} | {"num_cameras", "latency": {t0, alpha, beta},
///            "quality": {q_max, gamma}, "noise", "stages": {...},
///            "backend": {...}, "background_seconds", "transfer_seconds"},
///  "stream": {"tasks", "deadline", "seed"}}
/// Explicit model fields override the preset. h(N') is always derived from
/// the rig's camera map.
Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& scenario);
Scenario read_scenario_file(const std::filesystem::path& path);

}  // namespace edgerecon
