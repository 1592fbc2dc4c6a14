#include "edgerecon/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <json.hpp>

namespace edgerecon {

void ScenarioModel::validate() const {
  if (num_cameras < 3) throw std::invalid_argument("scenario needs at least 3 cameras");
  if (!(latency.t0 > 0.0)) throw std::invalid_argument("t0 must be positive");
  if (!(latency.alpha > 0.0 && latency.beta > 0.0 && quality.gamma > 0.0)) {
    throw std::invalid_argument("alpha, beta and gamma must be positive");
  }
  if (!(quality.q_max > 0.0)) throw std::invalid_argument("q_max must be positive");
  if (!(noise >= 0.0 && noise <= 0.2)) throw std::invalid_argument("noise must lie in [0, 0.2]");
  if (!(stages.sfm > 0.0 && stages.split > 0.0 && stages.mvs_fg > 0.0 && stages.merge > 0.0)) {
    throw std::invalid_argument("stage fractions must be positive");
  }
  if (std::abs(stages.total() - 1.0) > 1e-9) {
    throw std::invalid_argument("stage fractions must sum to 1");
  }
  if (backend.bg_subtraction < 0.0 || backend.golden_sfm < 0.0 || backend.evaluation < 0.0 ||
      !(background_seconds > 0.0) || transfer_seconds < 0.0) {
    throw std::invalid_argument("back-end timings must be non-negative");
  }
  for (int k = 3; k <= num_cameras; ++k) {
    const auto it = camera_factor.find(k);
    if (it == camera_factor.end() || !(it->second > 0.0)) {
      throw std::invalid_argument("camera factor missing for " + std::to_string(k) + " cameras");
    }
  }
}

double ScenarioModel::latency_at(double r, int n_prime) const {
  return latency.t0 * std::pow(r, latency.alpha) *
         std::pow(static_cast<double>(n_prime) / num_cameras, latency.beta);
}

double ScenarioModel::quality_at(double r, int n_prime) const {
  const double h = camera_factor.at(n_prime);
  return std::clamp(quality.q_max * std::pow(r, quality.gamma) * h, 0.0, 1.0);
}

std::map<int, double> camera_factor_from_map(const CameraMap& map) {
  const double full = static_cast<double>(map.at(map.num_cameras).objective);
  if (!(full > 0.0)) {
    throw std::invalid_argument("no point is covered twice by the full camera set");
  }
  std::map<int, double> factor;
  for (const auto& [n_prime, sol] : map.entries) {
    factor[n_prime] = static_cast<double>(sol.objective) / full;
  }
  return factor;
}

LatencyFit calibrate_latency(std::span<const LatencySample> samples, int num_cameras,
                             double fallback_beta) {
  if (samples.size() < 3) {
    throw std::invalid_argument("latency calibration needs at least 3 samples");
  }
  std::set<double> resolutions;
  std::set<int> camera_counts;
  for (const auto& s : samples) {
    if (!(s.r > 0.0 && s.seconds > 0.0 && s.n_prime > 0 && s.n_prime <= num_cameras)) {
      throw std::invalid_argument("latency samples need r > 0, T > 0 and 0 < N' <= N");
    }
    resolutions.insert(s.r);
    camera_counts.insert(s.n_prime);
  }
  if (resolutions.size() < 2) {
    throw std::invalid_argument("degenerate design: need at least 2 distinct resolutions");
  }
  const bool fit_beta = camera_counts.size() >= 2;
  const auto cols = fit_beta ? 3 : 2;
  Eigen::MatrixXd design(static_cast<Eigen::Index>(samples.size()), cols);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const double log_n = std::log(static_cast<double>(samples[i].n_prime) / num_cameras);
    design(row, 0) = 1.0;
    design(row, 1) = std::log(samples[i].r);
    if (fit_beta) design(row, 2) = log_n;
    rhs(row) = std::log(samples[i].seconds) - (fit_beta ? 0.0 : fallback_beta * log_n);
  }
  const auto qr = design.colPivHouseholderQr();
  if (qr.rank() < cols) throw std::invalid_argument("degenerate design matrix");
  const Eigen::VectorXd coef = qr.solve(rhs);

  LatencyFit fit;
  fit.beta_fitted = fit_beta;
  fit.law = {std::exp(coef(0)), coef(1), fit_beta ? coef(2) : fallback_beta};
  for (const auto& s : samples) {
    const double predicted = fit.law.t0 * std::pow(s.r, fit.law.alpha) *
                             std::pow(static_cast<double>(s.n_prime) / num_cameras, fit.law.beta);
    fit.max_relative_residual =
        std::max(fit.max_relative_residual, std::abs(predicted - s.seconds) / s.seconds);
  }
  return fit;
}

QualityFit calibrate_quality(std::span<const QualitySample> samples) {
  std::set<double> resolutions;
  for (const auto& s : samples) {
    if (!(s.r > 0.0 && s.fscore > 0.0)) {
      throw std::invalid_argument("quality samples need r > 0 and F > 0");
    }
    resolutions.insert(s.r);
  }
  if (resolutions.size() < 2) {
    throw std::invalid_argument("quality calibration needs at least 2 distinct resolutions");
  }
  Eigen::MatrixXd design(static_cast<Eigen::Index>(samples.size()), 2);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    design(row, 0) = 1.0;
    design(row, 1) = std::log(samples[i].r);
    rhs(row) = std::log(samples[i].fscore);
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
  QualityFit fit;
  fit.law = {std::exp(coef(0)), coef(1)};
  for (const auto& s : samples) {
    const double predicted = fit.law.q_max * std::pow(s.r, fit.law.gamma);
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(predicted - s.fscore));
  }
  return fit;
}

Observation run_task(const ScenarioModel& model, const PipelineConfig& config, Rng& rng,
                     std::size_t task_index) {
  Observation obs;
  obs.task_index = task_index;
  const double epsilon = model.noise > 0.0 ? uniform(rng, -model.noise, model.noise) : 0.0;
  obs.processing_time = model.latency_at(config.r, config.n_prime) * (1.0 + epsilon);
  obs.quality = model.quality_at(config.r, config.n_prime);
  return obs;
}

std::vector<LatencySample> Dance1Reference::latency_samples() {
  return {{1.0, 7, 26.17}, {0.8, 7, 16.07}, {0.6, 7, 9.1}, {1.0, 6, 20.98}, {1.0, 6, 19.83}};
}

std::vector<QualitySample> Dance1Reference::quality_samples() {
  return {{0.95, 0.911}, {0.90, 0.888}, {0.85, 0.873}, {0.80, 0.864}, {0.75, 0.855}, {0.70, 0.819}};
}

ScenarioModel dance1_model(const CameraMap& map) {
  ScenarioModel model;
  model.num_cameras = map.num_cameras;
  const auto latency_samples = Dance1Reference::latency_samples();
  const LatencyFit latency = calibrate_latency(latency_samples, 7);
  const double critical_path = Dance1Reference::sfm_seconds + Dance1Reference::mvs_fg_seconds +
                               Dance1Reference::split_merge_seconds;
  model.latency = latency.law;
  model.latency.t0 *= critical_path / Dance1Reference::original_total_seconds;

  const auto quality_samples = Dance1Reference::quality_samples();
  model.quality = calibrate_quality(quality_samples).law;
  model.noise = 0.03;
  model.camera_factor = camera_factor_from_map(map);

  const double half_other = Dance1Reference::split_merge_seconds / 2.0;
  model.stages = {Dance1Reference::sfm_seconds / critical_path, half_other / critical_path,
                  Dance1Reference::mvs_fg_seconds / critical_path, half_other / critical_path};
  model.backend = BackendTimes{};
  model.background_seconds = Dance1Reference::background_seconds;
  model.transfer_seconds = 0.05;
  return model;
}

CameraMap scenario_camera_map(const Scenario& scenario) {
  const SyntheticScene scene = make_ring_scene(scenario.rig);
  VisibilityMatrix matrix = build_visibility(scene.cloud, scene.cameras);
  if (scenario.keypoint_fraction < 1.0) {
    matrix = select_keypoints(matrix, scenario.keypoint_fraction, scenario.rig.seed);
  }
  return build_camera_map(matrix);
}

namespace {

template <typename T>
void read_optional(const nlohmann::json& obj, const char* key, T& value) {
  if (obj.contains(key)) value = obj.at(key).get<T>();
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  Scenario scenario;
  read_optional(doc, "name", scenario.name);
  if (doc.contains("rig")) {
    const auto& rig = doc.at("rig");
    read_optional(rig, "cameras", scenario.rig.cameras);
    read_optional(rig, "ring_radius", scenario.rig.ring_radius);
    read_optional(rig, "camera_height", scenario.rig.camera_height);
    read_optional(rig, "focal", scenario.rig.focal);
    read_optional(rig, "image_width", scenario.rig.image_width);
    read_optional(rig, "image_height", scenario.rig.image_height);
    read_optional(rig, "points", scenario.rig.points);
    read_optional(rig, "stage_radius", scenario.rig.stage_radius);
    read_optional(rig, "stage_height", scenario.rig.stage_height);
    read_optional(rig, "seed", scenario.rig.seed);
  }
  read_optional(doc, "keypoint_fraction", scenario.keypoint_fraction);
  if (doc.contains("stream")) {
    const auto& stream = doc.at("stream");
    read_optional(stream, "tasks", scenario.tasks);
    read_optional(stream, "deadline", scenario.deadline);
    read_optional(stream, "seed", scenario.seed);
  }

  const CameraMap map = scenario_camera_map(scenario);
  const nlohmann::json model_doc = doc.value("model", nlohmann::json::object());
  ScenarioModel& model = scenario.model;
  if (model_doc.value("preset", std::string()) == "dance1") {
    model = dance1_model(map);
  } else if (model_doc.contains("preset")) {
    throw std::invalid_argument("unknown model preset '" +
                                model_doc.at("preset").get<std::string>() + "'");
  }
  model.num_cameras = map.num_cameras;
  model.camera_factor = camera_factor_from_map(map);
  if (model_doc.contains("latency")) {
    const auto& l = model_doc.at("latency");
    read_optional(l, "t0", model.latency.t0);
    read_optional(l, "alpha", model.latency.alpha);
    read_optional(l, "beta", model.latency.beta);
  }
  if (model_doc.contains("quality")) {
    const auto& q = model_doc.at("quality");
    read_optional(q, "q_max", model.quality.q_max);
    read_optional(q, "gamma", model.quality.gamma);
  }
  read_optional(model_doc, "noise", model.noise);
  if (model_doc.contains("stages")) {
    const auto& s = model_doc.at("stages");
    read_optional(s, "sfm", model.stages.sfm);
    read_optional(s, "split", model.stages.split);
    read_optional(s, "mvs_fg", model.stages.mvs_fg);
    read_optional(s, "merge", model.stages.merge);
  }
  if (model_doc.contains("backend")) {
    const auto& b = model_doc.at("backend");
    read_optional(b, "bg_subtraction", model.backend.bg_subtraction);
    read_optional(b, "golden_sfm", model.backend.golden_sfm);
    read_optional(b, "evaluation", model.backend.evaluation);
  }
  read_optional(model_doc, "background_seconds", model.background_seconds);
  read_optional(model_doc, "transfer_seconds", model.transfer_seconds);
  model.validate();
  if (scenario.tasks < 1) throw std::invalid_argument("stream needs at least one task");
  if (!(scenario.deadline > 0.0)) throw std::invalid_argument("deadline must be positive");
  return scenario;
}

std::string scenario_to_json(const Scenario& scenario) {
  const ScenarioModel& m = scenario.model;
  const RingRigOptions& rig = scenario.rig;
  const nlohmann::json doc = {
      {"name", scenario.name},
      {"rig",
       {{"cameras", rig.cameras},
        {"ring_radius", rig.ring_radius},
        {"camera_height", rig.camera_height},
        {"focal", rig.focal},
        {"image_width", rig.image_width},
        {"image_height", rig.image_height},
        {"points", rig.points},
        {"stage_radius", rig.stage_radius},
        {"stage_height", rig.stage_height},
        {"seed", rig.seed}}},
      {"keypoint_fraction", scenario.keypoint_fraction},
      {"model",
       {{"latency", {{"t0", m.latency.t0}, {"alpha", m.latency.alpha}, {"beta", m.latency.beta}}},
        {"quality", {{"q_max", m.quality.q_max}, {"gamma", m.quality.gamma}}},
        {"noise", m.noise},
        {"stages",
         {{"sfm", m.stages.sfm},
          {"split", m.stages.split},
          {"mvs_fg", m.stages.mvs_fg},
          {"merge", m.stages.merge}}},
        {"backend",
         {{"bg_subtraction", m.backend.bg_subtraction},
          {"golden_sfm", m.backend.golden_sfm},
          {"evaluation", m.backend.evaluation}}},
        {"background_seconds", m.background_seconds},
        {"transfer_seconds", m.transfer_seconds}}},
      {"stream",
       {{"tasks", scenario.tasks}, {"deadline", scenario.deadline}, {"seed", scenario.seed}}}};
  return doc.dump(2) + "\n";
}

Scenario read_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return scenario_from_json(buffer.str());
}

}  // namespace edgerecon
