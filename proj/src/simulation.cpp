#include "edgerecon/simulation.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace edgerecon {

namespace {

// Rounding in i * period can leave sub-nanosecond slack between tasks.
constexpr double kSlackEpsilon = 1e-9;

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

}  // namespace

void TaskStream::validate() const {
  if (tasks < 1) throw std::invalid_argument("stream needs at least one task");
  if (!(deadline > 0.0)) throw std::invalid_argument("deadline must be positive");
}

InfeasibleStream::InfeasibleStream(SimulationTrace trace)
    : InfeasibleDeadline("no configuration meets the " + format_double(trace.deadline) +
                         " s deadline"),
      trace_(std::move(trace)) {}

SimulationTrace simulate_stream(const ScenarioModel& model, const CameraMap& map,
                                const TaskStream& stream, ControllerParams params) {
  stream.validate();
  model.validate();
  params.deadline = stream.deadline;
  BisectionController controller(map, params);
  Rng rng(stream.seed);

  SimulationTrace trace;
  trace.deadline = stream.deadline;
  trace.records.reserve(stream.tasks);
  for (std::size_t i = 0; i < stream.tasks; ++i) {
    TraceRecord record;
    record.task = i;
    record.config = controller.current();
    record.observation = run_task(model, record.config, rng, i);
    record.phase = controller.state().phase;
    bool infeasible = false;
    try {
      controller.next_config(record.observation);
    } catch (const InfeasibleDeadline&) {
      infeasible = true;
    }
    record.event = controller.state().last_event;
    trace.records.push_back(std::move(record));
    trace.search_steps = controller.state().search_steps;
    if (infeasible) {
      trace.infeasible = true;
      throw InfeasibleStream(std::move(trace));
    }
  }
  trace.chosen = controller.best_solution();
  if (controller.state().phase != Phase::adjusting) trace.chosen.reset();
  return trace;
}

ScheduleStats simulate_collaboration(const ScenarioModel& model, SimulationTrace& trace) {
  ScheduleStats stats;
  const double period = trace.deadline;
  const std::size_t n = trace.records.size();
  const double stage_total = model.stages.total();
  const double busy = model.backend.total();

  double front_free = 0.0;
  double back_free = 0.0;
  double progress = 0.0;  // seconds of background reconstruction done
  double time_sum = 0.0;
  double quality_sum = 0.0;
  double adjusting_sum = 0.0;
  std::size_t adjusting_count = 0;

  for (std::size_t i = 0; i < n; ++i) {
    TraceRecord& record = trace.records[i];
    const double arrival = static_cast<double>(i) * period;
    const double t = record.observation.processing_time;

    const double stages[] = {model.stages.sfm / stage_total * t,
                             model.stages.split / stage_total * t,
                             model.stages.mvs_fg / stage_total * t,
                             model.stages.merge / stage_total * t};
    const double path = critical_path(stages);
    const double front_start = std::max(arrival, front_free);
    front_free = front_start + path;
    stats.critical_path.push_back(path);
    stats.front_end_finish.push_back(front_free);

    const double back_start = std::max(arrival, back_free);
    back_free = back_start + busy;
    stats.back_end_busy_until.push_back(back_free);

    const double next_arrival = static_cast<double>(i + 1) * period;
    double idle = next_arrival - back_free;
    if (idle < kSlackEpsilon) idle = 0.0;
    stats.idle_window.push_back(idle);
    double clock = back_free;
    double remaining = idle;
    while (remaining > 0.0) {
      const double needed = model.background_seconds - progress;
      if (needed <= remaining) {
        clock += needed;
        remaining -= needed;
        progress = 0.0;
        ++stats.background_updates;
        stats.background_pushes.push_back(clock + model.transfer_seconds);
      } else {
        progress += remaining;
        remaining = 0.0;
      }
    }
    back_free = std::max(back_free, next_arrival);
    record.bg_updates_so_far = stats.background_updates;

    time_sum += t;
    quality_sum += record.observation.quality;
    if (record.phase == Phase::adjusting) {
      adjusting_sum += t;
      ++adjusting_count;
    }
  }
  if (n > 0) {
    stats.average_time = time_sum / static_cast<double>(n);
    stats.average_quality = quality_sum / static_cast<double>(n);
  }
  if (adjusting_count > 0) {
    stats.average_time_adjusting = adjusting_sum / static_cast<double>(adjusting_count);
  }
  return stats;
}

double critical_path(std::span<const double> stage_seconds) {
  return std::accumulate(stage_seconds.begin(), stage_seconds.end(), 0.0);
}

double reduction_percent(double original, double optimised) {
  if (!(original > 0.0)) throw std::invalid_argument("original latency must be positive");
  return (1.0 - optimised / original) * 100.0;
}

std::string trace_to_csv(const SimulationTrace& trace) {
  std::string out = "task,r,n_prime,T,Q,phase,bg_updates_so_far\n";
  for (const auto& rec : trace.records) {
    out += std::to_string(rec.task) + ',' + format_double(rec.config.r) + ',' +
           std::to_string(rec.config.n_prime) + ',' +
           format_double(rec.observation.processing_time) + ',' +
           format_double(rec.observation.quality) + ',' + to_string(rec.phase) + ',' +
           std::to_string(rec.bg_updates_so_far) + '\n';
  }
  return out;
}

std::string summary_to_json(const SimulationTrace& trace, const ScheduleStats& stats) {
  nlohmann::json doc = {{"deadline", trace.deadline},
                        {"tasks", trace.records.size()},
                        {"avg_processing_time", stats.average_time},
                        {"avg_processing_time_adjusting", stats.average_time_adjusting},
                        {"avg_fscore", stats.average_quality},
                        {"bg_dense_point_clouds", stats.background_updates},
                        {"config_search_steps", trace.search_steps},
                        {"infeasible", trace.infeasible}};
  if (trace.chosen) {
    doc["chosen"] = {{"r", trace.chosen->r},
                     {"n_prime", trace.chosen->n_prime},
                     {"quality", trace.chosen->quality}};
  } else {
    doc["chosen"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

}  // namespace edgerecon
