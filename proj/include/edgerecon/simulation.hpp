#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgerecon/camera_selection.hpp"
#include "edgerecon/controller.hpp"
#include "edgerecon/errors.hpp"
#include "edgerecon/scenario.hpp"

namespace edgerecon {

struct TaskStream {
  std::size_t tasks = 60;
  double deadline = 10.0;  // also the task inter-arrival period
  std::uint64_t seed = 42;

  void validate() const;
};

struct TraceRecord {
  std::size_t task = 0;
  PipelineConfig config;
  Observation observation;
  Phase phase = Phase::searching;  // phase the observation was consumed in
  SearchEvent event = SearchEvent::none;
  std::size_t bg_updates_so_far = 0;  // filled by simulate_collaboration
};

struct SimulationTrace {
  double deadline = 0.0;
  std::vector<TraceRecord> records;
  std::size_t search_steps = 0;
  std::optional<SolutionRecord> chosen;
  bool infeasible = false;
};

/// Raised by simulate_stream when no configuration meets the deadline; the
/// trace up to and including the task that ended the search is attached.
class InfeasibleStream : public InfeasibleDeadline {
 public:
  explicit InfeasibleStream(SimulationTrace trace);
  const SimulationTrace& trace() const { return trace_; }

 private:
  SimulationTrace trace_;
};

/// Drives the controller with run_task for every task of the stream.
SimulationTrace simulate_stream(const ScenarioModel& model, const CameraMap& map,
                                const TaskStream& stream, ControllerParams params = {});

struct ScheduleStats {
  std::vector<double> critical_path;  // front-end latency per task
  std::vector<double> front_end_finish;
  std::vector<double> back_end_busy_until;
  std::vector<double> idle_window;  // delta_a per task
  std::vector<double> background_pushes;  // arrival time at the front end
  std::size_t background_updates = 0;
  double average_time = 0.0;
  double average_quality = 0.0;
  double average_time_adjusting = 0.0;
};

/// Two-node event replay. Task i arrives at i * deadline. The front end runs
/// SfM, split, foreground MVS and merge back to back (stage fractions of T).
/// The back end runs background subtraction, golden SfM and evaluation, then
/// spends the rest of the period on background reconstruction; each finished
/// background cloud is pushed with the transfer delay and the next one starts.
/// Fills bg_updates_so_far in the trace.
ScheduleStats simulate_collaboration(const ScenarioModel& model, SimulationTrace& trace);

/// Sum of stage durations, seconds.
double critical_path(std::span<const double> stage_seconds);

/// Latency reduction of `optimised` against `original`, in percent.
double reduction_percent(double original, double optimised);

/// Columns: task,r,n_prime,T,Q,phase,bg_updates_so_far
std::string trace_to_csv(const SimulationTrace& trace);

std::string summary_to_json(const SimulationTrace& trace, const ScheduleStats& stats);

}  // namespace edgerecon
