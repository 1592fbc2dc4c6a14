#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "edgerecon/camera_selection.hpp"

namespace edgerecon {

/// Resolution scale plus the camera subset pi(n_prime).
struct PipelineConfig {
  double r = 1.0;
  int n_prime = 3;
  std::vector<int> cameras;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// What the pipeline reported for the previously emitted configuration.
struct Observation {
  std::size_t task_index = 0;
  double processing_time = 0.0;  // seconds
  double quality = 0.0;          // F-score
};

enum class Phase { searching, adjusting, infeasible };
std::string to_string(Phase phase);

/// Why the search left a camera-count level (or stopped) on the last step.
enum class SearchEvent {
  none,
  bisect,
  level_converged,     // r_max - r_min <= tau_search
  baseline_check,      // lowest resolution already misses the deadline
  level_skip,          // infeasible and no better than a known solution
  global_termination,  // even full resolution here cannot beat a known solution
  search_finished,
  adjust_up,
  adjust_down,
  adjust_hold,
};
std::string to_string(SearchEvent event);

struct ControllerParams {
  double deadline = 10.0;  // seconds
  double r_floor = 0.3;
  double r_ceiling = 1.0;
  double tau_search = 0.01;
  double tau_adjust = 0.02;
};

struct SolutionRecord {
  double r = 0.0;
  int n_prime = 0;
  double quality = 0.0;

  friend bool operator==(const SolutionRecord&, const SolutionRecord&) = default;
};

/// Quality observed at full resolution for some camera count. Quality is
/// monotone in the camera count, so these bound every smaller level.
struct CeilingSample {
  int n_prime = 0;
  double quality = 0.0;

  friend bool operator==(const CeilingSample&, const CeilingSample&) = default;
};

struct ControllerState {
  Phase phase = Phase::searching;
  int num_cameras = 0;
  int n_prime = 0;
  double r = 1.0;  // resolution of the outstanding configuration
  double r_min = 0.3;
  double r_max = 1.0;
  double r_star = 1.0;
  bool golden_pending = true;
  bool level_probe = false;  // outstanding config is the first of its level
  std::vector<SolutionRecord> solutions;
  std::vector<CeilingSample> ceiling_samples;
  std::size_t search_steps = 0;
  double adjust_time_sum = 0.0;
  std::size_t adjust_count = 0;
  SearchEvent last_event = SearchEvent::none;

  friend bool operator==(const ControllerState&, const ControllerState&) = default;
};

/// Result of the deadline feedback law given the running and current latency.
int adjustment_direction(double average_time, double current_time, double deadline);

/// Online resolution / camera-count optimiser.
///
/// The first task runs the golden configuration (full resolution, all
/// cameras). The search then bisects the resolution for pi(N), pi(N-1), ...
/// down to three cameras; each level starts at the best feasible resolution
/// found so far. Three pruning rules cut levels short:
///   - baseline check: the level's first (lowest-resolution) probe misses
///     the deadline, so nothing on this level can meet it;
///   - level skip: an infeasible probe is already no better in quality than
///     a feasible solution found with more cameras;
///   - global termination: full-resolution quality observed for this many or
///     more cameras is no better than a feasible solution with more cameras.
/// After the search the best-quality feasible configuration is adopted
/// (ties: more cameras, then higher resolution) and its resolution is nudged
/// by +/- tau_adjust per task so the average latency tracks the deadline.
class BisectionController {
 public:
  /// Throws std::invalid_argument when N < 3, the deadline is not positive,
  /// or the map lacks an entry for some camera count in [3, N].
  BisectionController(CameraMap camera_map, ControllerParams params);

  /// Configuration the next task must run with.
  const PipelineConfig& current() const { return current_; }

  /// Consumes the observation of current() and returns the next config.
  /// Throws InfeasibleDeadline when the search ends without any feasible
  /// configuration; the controller then holds (r_floor, pi(3)).
  const PipelineConfig& next_config(const Observation& observation);

  const ControllerState& state() const { return state_; }
  const ControllerParams& params() const { return params_; }
  const CameraMap& camera_map() const { return map_; }

  std::optional<SolutionRecord> best_solution() const;

  /// Snapshot (params, camera map, search state) for trace replay.
  std::string to_json() const;
  static BisectionController from_json(const std::string& text);

 private:
  void search_step(const Observation& obs);
  void minor_adjustment(const Observation& obs);
  void descend();
  void finish();
  std::optional<SolutionRecord> best_with_more_cameras(int n_prime) const;
  void emit(double r, int n_prime);

  CameraMap map_;
  ControllerParams params_;
  ControllerState state_;
  PipelineConfig current_;
};

}  // namespace edgerecon
