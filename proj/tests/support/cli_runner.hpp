#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "edgerecon/raster.hpp"

namespace testsupport {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "edgerecon");
  std::ostringstream out, err;
  const int code = edgerecon::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("edgerecon_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::filesystem::path data_dir() {
  const char* env = std::getenv("EDGERECON_DATA");
  return env ? std::filesystem::path(env) : std::filesystem::path("data");
}

// Frames of a dark static background with bright squares; squares[f] lists
// the top-left corners present in frame f.
inline void write_square_sequence(const std::filesystem::path& dir,
                                  const std::vector<std::vector<std::pair<int, int>>>& squares,
                                  int size = 12, int w = 96, int h = 64) {
  for (std::size_t f = 0; f < squares.size(); ++f) {
    edgerecon::GrayFrame frame(w, h, 40);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) frame.at(x, y) = static_cast<std::uint8_t>(30 + (x * 7 + y * 3) % 20);
    }
    for (const auto& [x0, y0] : squares[f]) {
      for (int y = y0; y < y0 + size; ++y) {
        for (int x = x0; x < x0 + size; ++x) frame.at(x, y) = 220;
      }
    }
    char name[64];
    std::snprintf(name, sizeof name, "frame_%03zu.pgm", f);
    edgerecon::write_pgm_file(dir / name, frame);
  }
}

}  // namespace testsupport
