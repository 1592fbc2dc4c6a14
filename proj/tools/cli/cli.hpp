#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace CLI {
class App;
}

namespace edgerecon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr const char* kOutDirEnv = "EDGERECON_OUT";

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::filesystem::path out_dir;
  int exit_code = kExitOk;
};

/// Output directory from EDGERECON_OUT, "." when unset.
std::filesystem::path default_out_dir();

/// Writes `content` to dir/name, creating dir. Binary mode, no newline
/// translation.
void write_output(const std::filesystem::path& dir, const std::string& name,
                  const std::string& content);

void register_eval(CLI::App& app, Context& ctx);
void register_select(CLI::App& app, Context& ctx);
void register_simulate(CLI::App& app, Context& ctx);
void register_segment(CLI::App& app, Context& ctx);
void register_pipeline(CLI::App& app, Context& ctx);

/// args[0] is the program name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edgerecon::cli
