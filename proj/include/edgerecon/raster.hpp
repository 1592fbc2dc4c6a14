#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace edgerecon {

/// 8-bit intensity image, row-major.
struct GrayFrame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  GrayFrame() = default;
  GrayFrame(int w, int h, std::uint8_t fill = 0);

  std::uint8_t& at(int x, int y) { return pixels[index(x, y)]; }
  std::uint8_t at(int x, int y) const { return pixels[index(x, y)]; }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(x);
  }
  bool same_size(const GrayFrame& other) const {
    return width == other.width && height == other.height;
  }
};

/// Binary raster (0/1) attached to a camera.
struct ForegroundMask {
  int camera_id = 0;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  ForegroundMask() = default;
  ForegroundMask(int camera, int w, int h);

  bool test(int x, int y) const { return pixels[index(x, y)] != 0; }
  void set(int x, int y, bool on = true) { pixels[index(x, y)] = on ? 1 : 0; }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(x);
  }
  std::size_t count() const;

  friend bool operator==(const ForegroundMask&, const ForegroundMask&) = default;
};

/// Binary PGM (P5, maxval <= 255).
GrayFrame parse_pgm(std::string_view bytes);
std::string write_pgm(const GrayFrame& frame);
GrayFrame read_pgm_file(const std::filesystem::path& path);
void write_pgm_file(const std::filesystem::path& path, const GrayFrame& frame);

/// Masks travel as PGM with values {0, 255}; any nonzero pixel reads as set.
GrayFrame mask_to_frame(const ForegroundMask& mask);
ForegroundMask mask_from_frame(const GrayFrame& frame, int camera_id);

}  // namespace edgerecon
