#include "edgerecon/raster.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "edgerecon/errors.hpp"

namespace edgerecon {

GrayFrame::GrayFrame(int w, int h, std::uint8_t fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {
  if (w < 0 || h < 0) throw std::invalid_argument("negative frame size");
}

ForegroundMask::ForegroundMask(int camera, int w, int h)
    : camera_id(camera),
      width(w),
      height(h),
      pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0) {
  if (w < 0 || h < 0) throw std::invalid_argument("negative mask size");
}

std::size_t ForegroundMask::count() const {
  return static_cast<std::size_t>(std::count_if(pixels.begin(), pixels.end(),
                                                [](std::uint8_t v) { return v != 0; }));
}

namespace {

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string_view header_token(std::string_view bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    const unsigned char c = static_cast<unsigned char>(bytes[pos]);
    if (c == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(c)) {
      ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  if (start == pos) throw ParseError("truncated PGM header", ParseError::Location::byte, pos);
  return bytes.substr(start, pos - start);
}

int header_int(std::string_view bytes, std::size_t& pos) {
  const std::size_t start = pos;
  const std::string_view token = header_token(bytes, pos);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < 0) {
    throw ParseError("invalid PGM header value '" + std::string(token) + "'",
                     ParseError::Location::byte, start);
  }
  return value;
}

}  // namespace

GrayFrame parse_pgm(std::string_view bytes) {
  std::size_t pos = 0;
  if (header_token(bytes, pos) != "P5") {
    throw ParseError("not a binary PGM (expected P5)", ParseError::Location::byte, 0);
  }
  const int width = header_int(bytes, pos);
  const int height = header_int(bytes, pos);
  const int maxval = header_int(bytes, pos);
  if (maxval <= 0 || maxval > 255) {
    throw ParseError("only 8-bit PGM is supported", ParseError::Location::byte, pos);
  }
  if (pos >= bytes.size()) throw ParseError("missing PGM body", ParseError::Location::byte, pos);
  ++pos;  // single whitespace byte after maxval
  GrayFrame frame(width, height);
  if (bytes.size() - pos < frame.pixels.size()) {
    throw ParseError("PGM body shorter than " + std::to_string(frame.pixels.size()) + " bytes",
                     ParseError::Location::byte, bytes.size());
  }
  std::copy_n(reinterpret_cast<const std::uint8_t*>(bytes.data() + pos), frame.pixels.size(),
              frame.pixels.begin());
  return frame;
}

std::string write_pgm(const GrayFrame& frame) {
  std::string out = "P5\n" + std::to_string(frame.width) + " " + std::to_string(frame.height) +
                    "\n255\n";
  out.append(reinterpret_cast<const char*>(frame.pixels.data()), frame.pixels.size());
  return out;
}

GrayFrame read_pgm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_pgm(buffer.str());
}

void write_pgm_file(const std::filesystem::path& path, const GrayFrame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const std::string bytes = write_pgm(frame);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

GrayFrame mask_to_frame(const ForegroundMask& mask) {
  GrayFrame frame(mask.width, mask.height);
  std::transform(mask.pixels.begin(), mask.pixels.end(), frame.pixels.begin(),
                 [](std::uint8_t v) -> std::uint8_t { return v ? 255 : 0; });
  return frame;
}

ForegroundMask mask_from_frame(const GrayFrame& frame, int camera_id) {
  ForegroundMask mask(camera_id, frame.width, frame.height);
  std::transform(frame.pixels.begin(), frame.pixels.end(), mask.pixels.begin(),
                 [](std::uint8_t v) -> std::uint8_t { return v ? 1 : 0; });
  return mask;
}

}  // namespace edgerecon
