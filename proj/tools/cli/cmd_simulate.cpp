#include <memory>
#include <ostream>

#include <CLI11.hpp>

#include "cli/cli.hpp"
#include "edgerecon/scenario.hpp"
#include "edgerecon/simulation.hpp"

namespace edgerecon::cli {

void register_simulate(CLI::App& app, Context& ctx) {
  struct Options {
    std::string scenario;
    double deadline = 0.0;
    std::size_t tasks = 0;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
  };
  auto opts = std::make_shared<Options>();
  auto* sub = app.add_subcommand("simulate", "Run the online optimiser on a scenario");
  sub->add_option("scenario", opts->scenario, "Scenario (.json)")->required();
  auto* deadline = sub->add_option("--deadline", opts->deadline, "Processing deadline, seconds")
                       ->check(CLI::PositiveNumber);
  auto* tasks = sub->add_option("--tasks", opts->tasks, "Number of tasks")
                    ->check(CLI::PositiveNumber);
  auto* seed = sub->add_option("--seed", opts->seed, "Latency-noise seed");
  sub->add_option("--out", opts->out, "Output directory for trace.csv and summary.json");
  sub->callback([opts, deadline, tasks, seed, &ctx] {
    const Scenario scenario = read_scenario_file(opts->scenario);
    TaskStream stream{scenario.tasks, scenario.deadline, scenario.seed};
    if (deadline->count()) stream.deadline = opts->deadline;
    if (tasks->count()) stream.tasks = opts->tasks;
    if (seed->count()) stream.seed = opts->seed;
    const auto dir = opts->out.empty() ? ctx.out_dir : std::filesystem::path(opts->out);

    const CameraMap map = scenario_camera_map(scenario);
    SimulationTrace trace;
    try {
      trace = simulate_stream(scenario.model, map, stream);
    } catch (const InfeasibleStream& e) {
      trace = e.trace();
      ctx.exit_code = kExitInfeasible;
      ctx.err << "infeasible: " << e.what() << '\n';
    }
    const ScheduleStats stats = simulate_collaboration(scenario.model, trace);
    const std::string summary = summary_to_json(trace, stats);
    write_output(dir, "trace.csv", trace_to_csv(trace));
    write_output(dir, "summary.json", summary);
    ctx.out << summary;
  });
}

}  // namespace edgerecon::cli
