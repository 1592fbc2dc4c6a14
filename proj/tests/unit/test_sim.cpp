#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "edgerecon/scenario.hpp"
#include "edgerecon/simulation.hpp"
#include "oracles/event_replay.hpp"

using namespace edgerecon;

namespace {

const CameraMap& ring_map() {
  static const CameraMap map = scenario_camera_map(Scenario{});
  return map;
}

ScenarioModel simple_model() {
  ScenarioModel m;
  m.num_cameras = 7;
  m.latency = {20.0, 2.1, 1.5};
  m.quality = {0.9, 0.3};
  m.noise = 0.0;
  m.camera_factor = camera_factor_from_map(ring_map());
  return m;
}

}  // namespace

TEST(Calibration, DanceAnchorsWithinFivePercent) {
  const std::vector<LatencySample> s = {{1.0, 7, 26.17}, {0.8, 7, 16.07}, {0.6, 7, 9.1}};
  const LatencyFit fit = calibrate_latency(s, 7);
  EXPECT_FALSE(fit.beta_fitted);
  EXPECT_LT(fit.max_relative_residual, 0.05);
  EXPECT_NEAR(fit.law.t0, 26.17, 0.05 * 26.17);
  EXPECT_NEAR(fit.law.alpha, 2.1, 0.1);
}

TEST(Calibration, RecoversSyntheticLaw) {
  const LatencyLaw truth{13.5, 1.7, 2.2};
  std::vector<LatencySample> s;
  for (double r : {0.3, 0.5, 0.8, 1.0}) {
    for (int n : {4, 6, 9}) {
      s.push_back({r, n, truth.t0 * std::pow(r, truth.alpha) * std::pow(n / 9.0, truth.beta)});
    }
  }
  const LatencyFit fit = calibrate_latency(s, 9);
  EXPECT_TRUE(fit.beta_fitted);
  EXPECT_NEAR(fit.law.t0, truth.t0, 1e-6);
  EXPECT_NEAR(fit.law.alpha, truth.alpha, 1e-6);
  EXPECT_NEAR(fit.law.beta, truth.beta, 1e-6);
}

TEST(Calibration, UnderDetermined) {
  const std::vector<LatencySample> two = {{1.0, 7, 26.17}, {0.8, 7, 16.07}};
  EXPECT_THROW(calibrate_latency(two, 7), std::invalid_argument);
  const std::vector<LatencySample> flat = {{1.0, 7, 26.0}, {1.0, 6, 20.0}, {1.0, 5, 15.0}};
  EXPECT_THROW(calibrate_latency(flat, 7), std::invalid_argument);
}

TEST(Calibration, QualityAnchors) {
  const QualityFit fit = calibrate_quality(Dance1Reference::quality_samples());
  EXPECT_LT(fit.max_abs_residual, 0.02);
  EXPECT_NEAR(fit.law.q_max * std::pow(0.95, fit.law.gamma), 0.911, 0.02);
  EXPECT_NEAR(fit.law.q_max * std::pow(0.70, fit.law.gamma), 0.819, 0.02);
}

TEST(RunTask, LawArithmeticAndDeterminism) {
  const ScenarioModel m = simple_model();
  Rng rng(1);
  const Observation full = run_task(m, {1.0, 7, {}}, rng);
  EXPECT_EQ(full.processing_time, 20.0);
  const Observation half = run_task(m, {0.5, 7, {}}, rng);
  EXPECT_NEAR(half.processing_time, 20.0 * std::pow(0.5, 2.1), 1e-12);
  ScenarioModel noisy = m;
  noisy.noise = 0.05;
  Rng a(9), b(9);
  for (int i = 0; i < 20; ++i) {
    const Observation x = run_task(noisy, {0.7, 5, {}}, a);
    const Observation y = run_task(noisy, {0.7, 5, {}}, b);
    EXPECT_EQ(x.processing_time, y.processing_time);
    EXPECT_LE(std::abs(x.processing_time / noisy.latency_at(0.7, 5) - 1.0), 0.05 + 1e-12);
    EXPECT_GE(x.quality, 0.0);
    EXPECT_LE(x.quality, 1.0);
  }
}

TEST(RunTask, LawsMonotone) {
  const ScenarioModel m = simple_model();
  for (int n = 3; n <= 7; ++n) {
    for (double r = 0.3; r < 1.0; r += 0.05) {
      EXPECT_LT(m.latency_at(r, n), m.latency_at(r + 0.05, n));
      EXPECT_LT(m.quality_at(r, n), m.quality_at(r + 0.05, n));
      if (n < 7) {
        EXPECT_LT(m.latency_at(r, n), m.latency_at(r, n + 1));
        EXPECT_LT(m.quality_at(r, n), m.quality_at(r, n + 1));
      }
    }
  }
}

TEST(Model, ValidationRanges) {
  ScenarioModel m = simple_model();
  EXPECT_NO_THROW(m.validate());
  m.noise = 0.3;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m = simple_model();
  m.latency.alpha = 0.0;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m = simple_model();
  m.stages.sfm = 0.5;
  EXPECT_THROW(m.validate(), std::invalid_argument);
}

TEST(Stream, UnconstrainedAndImpossible) {
  const ScenarioModel m = simple_model();
  const SimulationTrace easy = simulate_stream(m, ring_map(), {10, 50.0, 1});
  EXPECT_EQ(easy.search_steps, 1u);
  for (const auto& rec : easy.records) {
    EXPECT_EQ(rec.config.r, 1.0);
    EXPECT_EQ(rec.config.n_prime, 7);
  }
  try {
    simulate_stream(m, ring_map(), {60, 0.1, 1});
    FAIL() << "expected an infeasible deadline";
  } catch (const InfeasibleStream& e) {
    EXPECT_TRUE(e.trace().infeasible);
    EXPECT_FALSE(e.trace().records.empty());
  }
}

TEST(Stream, SingleTaskIsGolden) {
  const SimulationTrace t = simulate_stream(simple_model(), ring_map(), {1, 10.0, 1});
  ASSERT_EQ(t.records.size(), 1u);
  EXPECT_EQ(t.records[0].config.r, 1.0);
  EXPECT_EQ(t.records[0].config.n_prime, 7);
}

TEST(Stream, DeterministicUnderSeed) {
  ScenarioModel m = simple_model();
  m.noise = 0.03;
  SimulationTrace a = simulate_stream(m, ring_map(), {60, 7.5, 5});
  SimulationTrace b = simulate_stream(m, ring_map(), {60, 7.5, 5});
  simulate_collaboration(m, a);
  simulate_collaboration(m, b);
  EXPECT_EQ(trace_to_csv(a), trace_to_csv(b));
}

TEST(Collaboration, NoSlackNoBackground) {
  ScenarioModel m = simple_model();
  SimulationTrace t = simulate_stream(m, ring_map(), {30, m.backend.total(), 1});
  const ScheduleStats s = simulate_collaboration(m, t);
  EXPECT_EQ(s.background_updates, 0u);
  for (double idle : s.idle_window) EXPECT_EQ(idle, 0.0);
}

TEST(Collaboration, CriticalPathConservation) {
  ScenarioModel m = simple_model();
  m.noise = 0.03;
  SimulationTrace t = simulate_stream(m, ring_map(), {40, 7.5, 3});
  const ScheduleStats s = simulate_collaboration(m, t);
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    EXPECT_NEAR(s.critical_path[i], t.records[i].observation.processing_time,
                1e-12 * s.critical_path[i]);
  }
}

TEST(Collaboration, MatchesReplayOracle) {
  ScenarioModel m = simple_model();
  for (double period : {3.0, 4.1, 5.0, 7.5, 10.0, 13.3}) {
    for (double t_bg : {5.0, 20.0, 22.5, 25.0}) {
      m.background_seconds = t_bg;
      SimulationTrace t;
      t.deadline = period;
      for (std::size_t i = 0; i < 60; ++i) {
        TraceRecord rec;
        rec.task = i;
        rec.observation.processing_time = 1.0;
        t.records.push_back(rec);
      }
      const ScheduleStats s = simulate_collaboration(m, t);
      const auto expect = oracle::background_counts(60, period, m.backend.total(), t_bg);
      for (std::size_t i = 0; i < 60; ++i) EXPECT_EQ(t.records[i].bg_updates_so_far, expect[i]);
      EXPECT_EQ(s.background_updates, expect.back());
    }
  }
}

TEST(CriticalPath, DanceStages) {
  const double stages[] = {2.94, 8.78, 0.26};
  EXPECT_NEAR(critical_path(stages), 11.98, 1e-12);
  EXPECT_NEAR(reduction_percent(26.17, 11.98), 54.2224, 1e-4);
}

TEST(ScenarioFile, RoundTripsThroughJson) {
  Scenario s;
  s.model = dance1_model(ring_map());
  s.tasks = 33;
  s.deadline = 7.5;
  const Scenario back = scenario_from_json(scenario_to_json(s));
  EXPECT_EQ(back.tasks, 33u);
  EXPECT_EQ(back.deadline, 7.5);
  EXPECT_EQ(back.model.latency.t0, s.model.latency.t0);
  EXPECT_EQ(back.model.camera_factor, s.model.camera_factor);
  EXPECT_THROW(scenario_from_json(R"({"model": {"preset": "nope"}})"), std::invalid_argument);
}
