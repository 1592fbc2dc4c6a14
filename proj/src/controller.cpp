#include "edgerecon/controller.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "edgerecon/errors.hpp"

namespace edgerecon {

std::string to_string(Phase phase) {
  switch (phase) {
    case Phase::searching:
      return "searching";
    case Phase::adjusting:
      return "adjusting";
    case Phase::infeasible:
      return "infeasible";
  }
  return "searching";
}

std::string to_string(SearchEvent event) {
  switch (event) {
    case SearchEvent::none:
      return "none";
    case SearchEvent::bisect:
      return "bisect";
    case SearchEvent::level_converged:
      return "level_converged";
    case SearchEvent::baseline_check:
      return "baseline_check";
    case SearchEvent::level_skip:
      return "level_skip";
    case SearchEvent::global_termination:
      return "global_termination";
    case SearchEvent::search_finished:
      return "search_finished";
    case SearchEvent::adjust_up:
      return "adjust_up";
    case SearchEvent::adjust_down:
      return "adjust_down";
    case SearchEvent::adjust_hold:
      return "adjust_hold";
  }
  return "none";
}

int adjustment_direction(double average_time, double current_time, double deadline) {
  if (average_time < deadline && current_time < deadline) return 1;
  if (average_time > deadline && current_time > deadline) return -1;
  return 0;
}

namespace {

bool better(const SolutionRecord& a, const SolutionRecord& b) {
  if (a.quality != b.quality) return a.quality > b.quality;
  if (a.n_prime != b.n_prime) return a.n_prime > b.n_prime;
  return a.r > b.r;
}

}  // namespace

BisectionController::BisectionController(CameraMap camera_map, ControllerParams params)
    : map_(std::move(camera_map)), params_(params) {
  const int n = map_.num_cameras;
  if (n < 3) throw std::invalid_argument("the controller needs at least 3 cameras");
  if (!(params_.deadline > 0.0)) throw std::invalid_argument("deadline must be positive");
  if (!(params_.r_floor > 0.0 && params_.r_floor < params_.r_ceiling)) {
    throw std::invalid_argument("resolution bounds must satisfy 0 < r_floor < r_ceiling");
  }
  if (!(params_.tau_search > 0.0) || !(params_.tau_adjust > 0.0)) {
    throw std::invalid_argument("tau_search and tau_adjust must be positive");
  }
  for (int k = 3; k <= n; ++k) map_.at(k);

  state_.num_cameras = n;
  state_.n_prime = n;
  state_.r_min = params_.r_floor;
  state_.r_max = params_.r_ceiling;
  state_.r_star = params_.r_ceiling;
  emit(params_.r_ceiling, n);
}

void BisectionController::emit(double r, int n_prime) {
  state_.r = r;
  state_.n_prime = n_prime;
  current_.r = r;
  current_.n_prime = n_prime;
  current_.cameras = map_.at(n_prime).camera_ids;
}

std::optional<SolutionRecord> BisectionController::best_solution() const {
  std::optional<SolutionRecord> best;
  for (const SolutionRecord& s : state_.solutions) {
    if (!best || better(s, *best)) best = s;
  }
  return best;
}

std::optional<SolutionRecord> BisectionController::best_with_more_cameras(int n_prime) const {
  std::optional<SolutionRecord> best;
  for (const SolutionRecord& s : state_.solutions) {
    if (s.n_prime > n_prime && (!best || better(s, *best))) best = s;
  }
  return best;
}

const PipelineConfig& BisectionController::next_config(const Observation& observation) {
  switch (state_.phase) {
    case Phase::searching:
      search_step(observation);
      break;
    case Phase::adjusting:
      minor_adjustment(observation);
      break;
    case Phase::infeasible:
      break;
  }
  if (state_.phase == Phase::infeasible && state_.last_event == SearchEvent::search_finished) {
    state_.last_event = SearchEvent::none;
    throw InfeasibleDeadline("no configuration met the " + std::to_string(params_.deadline) +
                             " s deadline");
  }
  return current_;
}

void BisectionController::search_step(const Observation& obs) {
  ++state_.search_steps;
  const double r = state_.r;
  const int n_prime = state_.n_prime;
  const bool feasible = obs.processing_time <= params_.deadline;
  if (r >= params_.r_ceiling) state_.ceiling_samples.push_back({n_prime, obs.quality});

  if (state_.golden_pending) {
    // The golden run is a full-resolution probe of level N.
    state_.golden_pending = false;
    if (feasible) {
      state_.r_min = r;
      state_.r_star = r;
      state_.solutions.push_back({r, n_prime, obs.quality});
      state_.last_event = SearchEvent::level_converged;
      descend();
    } else {
      state_.level_probe = true;
      state_.last_event = SearchEvent::bisect;
      emit(state_.r_min, n_prime);
    }
    return;
  }

  const auto benchmark = best_with_more_cameras(n_prime);
  if (feasible) {
    state_.r_min = r;
    state_.r_star = r;
    state_.solutions.push_back({r, n_prime, obs.quality});
  } else {
    state_.r_max = r;
  }

  const bool probe = state_.level_probe;
  state_.level_probe = false;
  if (probe && !feasible) {
    state_.last_event = SearchEvent::baseline_check;
    descend();
  } else if (!feasible && benchmark && obs.quality <= benchmark->quality) {
    state_.last_event = SearchEvent::level_skip;
    descend();
  } else if (state_.r_max - state_.r_min <= params_.tau_search) {
    state_.last_event = SearchEvent::level_converged;
    descend();
  } else {
    state_.last_event = SearchEvent::bisect;
    emit((state_.r_max + state_.r_min) / 2.0, n_prime);
  }
}

void BisectionController::descend() {
  const int next = state_.n_prime - 1;
  state_.r_min = state_.solutions.empty() ? params_.r_floor : state_.r_star;
  state_.r_max = params_.r_ceiling;
  state_.level_probe = true;
  if (next < 3) {
    state_.n_prime = next;
    finish();
    return;
  }
  const auto benchmark = best_with_more_cameras(next);
  if (benchmark) {
    std::optional<double> ceiling;
    for (const CeilingSample& s : state_.ceiling_samples) {
      if (s.n_prime >= next) ceiling = ceiling ? std::min(*ceiling, s.quality) : s.quality;
    }
    if (ceiling && *ceiling <= benchmark->quality) {
      state_.last_event = SearchEvent::global_termination;
      finish();
      return;
    }
  }
  emit(state_.r_min, next);
}

void BisectionController::finish() {
  const auto best = best_solution();
  if (!best) {
    state_.phase = Phase::infeasible;
    state_.last_event = SearchEvent::search_finished;
    state_.r_star = params_.r_floor;
    emit(params_.r_floor, 3);
    return;
  }
  if (state_.last_event != SearchEvent::global_termination) {
    state_.last_event = SearchEvent::search_finished;
  }
  state_.phase = Phase::adjusting;
  state_.r_star = best->r;
  state_.r_min = best->r;
  state_.r_max = best->r;
  emit(best->r, best->n_prime);
}

void BisectionController::minor_adjustment(const Observation& obs) {
  state_.adjust_time_sum += obs.processing_time;
  ++state_.adjust_count;
  const double average = state_.adjust_time_sum / static_cast<double>(state_.adjust_count);
  const int direction = adjustment_direction(average, obs.processing_time, params_.deadline);
  state_.last_event = direction > 0   ? SearchEvent::adjust_up
                      : direction < 0 ? SearchEvent::adjust_down
                                      : SearchEvent::adjust_hold;
  state_.r_star = std::clamp(state_.r_star + direction * params_.tau_adjust, params_.r_floor,
                             params_.r_ceiling);
  emit(state_.r_star, state_.n_prime);
}

// ---- snapshots -------------------------------------------------------------

namespace {

Phase phase_from_string(const std::string& s) {
  if (s == "searching") return Phase::searching;
  if (s == "adjusting") return Phase::adjusting;
  if (s == "infeasible") return Phase::infeasible;
  throw std::invalid_argument("unknown phase '" + s + "'");
}

SearchEvent event_from_string(const std::string& s) {
  for (SearchEvent e :
       {SearchEvent::none, SearchEvent::bisect, SearchEvent::level_converged,
        SearchEvent::baseline_check, SearchEvent::level_skip, SearchEvent::global_termination,
        SearchEvent::search_finished, SearchEvent::adjust_up, SearchEvent::adjust_down,
        SearchEvent::adjust_hold}) {
    if (to_string(e) == s) return e;
  }
  throw std::invalid_argument("unknown search event '" + s + "'");
}

}  // namespace

std::string BisectionController::to_json() const {
  nlohmann::json map_entries = nlohmann::json::array();
  for (const auto& [n_prime, sol] : map_.entries) {
    map_entries.push_back({{"n_prime", n_prime},
                           {"columns", sol.columns},
                           {"cameras", sol.camera_ids},
                           {"objective", sol.objective},
                           {"exact", sol.exact}});
  }
  nlohmann::json solutions = nlohmann::json::array();
  for (const auto& s : state_.solutions) {
    solutions.push_back({{"r", s.r}, {"n_prime", s.n_prime}, {"quality", s.quality}});
  }
  nlohmann::json ceilings = nlohmann::json::array();
  for (const auto& s : state_.ceiling_samples) {
    ceilings.push_back({{"n_prime", s.n_prime}, {"quality", s.quality}});
  }
  const nlohmann::json doc = {
      {"params",
       {{"deadline", params_.deadline},
        {"r_floor", params_.r_floor},
        {"r_ceiling", params_.r_ceiling},
        {"tau_search", params_.tau_search},
        {"tau_adjust", params_.tau_adjust}}},
      {"camera_map", {{"num_cameras", map_.num_cameras}, {"entries", map_entries}}},
      {"state",
       {{"phase", to_string(state_.phase)},
        {"num_cameras", state_.num_cameras},
        {"n_prime", state_.n_prime},
        {"r", state_.r},
        {"r_min", state_.r_min},
        {"r_max", state_.r_max},
        {"r_star", state_.r_star},
        {"golden_pending", state_.golden_pending},
        {"level_probe", state_.level_probe},
        {"solutions", solutions},
        {"ceiling_samples", ceilings},
        {"search_steps", state_.search_steps},
        {"adjust_time_sum", state_.adjust_time_sum},
        {"adjust_count", state_.adjust_count},
        {"last_event", to_string(state_.last_event)}}}};
  return doc.dump(2);
}

BisectionController BisectionController::from_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  ControllerParams params;
  const auto& p = doc.at("params");
  params.deadline = p.at("deadline").get<double>();
  params.r_floor = p.at("r_floor").get<double>();
  params.r_ceiling = p.at("r_ceiling").get<double>();
  params.tau_search = p.at("tau_search").get<double>();
  params.tau_adjust = p.at("tau_adjust").get<double>();

  CameraMap map;
  map.num_cameras = doc.at("camera_map").at("num_cameras").get<int>();
  for (const auto& e : doc.at("camera_map").at("entries")) {
    SelectionSolution sol;
    sol.columns = e.at("columns").get<std::vector<int>>();
    sol.camera_ids = e.at("cameras").get<std::vector<int>>();
    sol.objective = e.at("objective").get<std::size_t>();
    sol.exact = e.at("exact").get<bool>();
    map.entries.emplace(e.at("n_prime").get<int>(), std::move(sol));
  }

  BisectionController controller(std::move(map), params);
  const auto& s = doc.at("state");
  ControllerState& st = controller.state_;
  st.phase = phase_from_string(s.at("phase").get<std::string>());
  st.num_cameras = s.at("num_cameras").get<int>();
  st.r_min = s.at("r_min").get<double>();
  st.r_max = s.at("r_max").get<double>();
  st.r_star = s.at("r_star").get<double>();
  st.golden_pending = s.at("golden_pending").get<bool>();
  st.level_probe = s.at("level_probe").get<bool>();
  st.solutions.clear();
  for (const auto& rec : s.at("solutions")) {
    st.solutions.push_back({rec.at("r").get<double>(), rec.at("n_prime").get<int>(),
                            rec.at("quality").get<double>()});
  }
  st.ceiling_samples.clear();
  for (const auto& rec : s.at("ceiling_samples")) {
    st.ceiling_samples.push_back({rec.at("n_prime").get<int>(), rec.at("quality").get<double>()});
  }
  st.search_steps = s.at("search_steps").get<std::size_t>();
  st.adjust_time_sum = s.at("adjust_time_sum").get<double>();
  st.adjust_count = s.at("adjust_count").get<std::size_t>();
  st.last_event = event_from_string(s.at("last_event").get<std::string>());
  controller.emit(s.at("r").get<double>(), s.at("n_prime").get<int>());
  return controller;
}

}  // namespace edgerecon
