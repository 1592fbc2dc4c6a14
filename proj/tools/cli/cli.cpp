#include "cli/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "edgerecon/errors.hpp"

namespace edgerecon::cli {

std::filesystem::path default_out_dir() {
  const char* env = std::getenv(kOutDirEnv);
  return env && *env ? std::filesystem::path(env) : std::filesystem::path(".");
}

void write_output(const std::filesystem::path& dir, const std::string& name,
                  const std::string& content) {
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << content;
  if (!file) throw std::runtime_error("failed writing " + path.string());
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge 3D reconstruction toolkit"};
  app.require_subcommand(1);
  Context ctx{out, err, default_out_dir()};
  register_eval(app, ctx);
  register_select(app, ctx);
  register_simulate(app, ctx);
  register_segment(app, ctx);
  register_pipeline(app, ctx);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  } catch (const InfeasibleDeadline& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return ctx.exit_code;
}

}  // namespace edgerecon::cli
