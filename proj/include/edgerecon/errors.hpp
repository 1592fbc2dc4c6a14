#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edgerecon {

/// Raised by the PLY/PGM/CSV readers. `offset` is a byte offset into the
/// input for binary payloads and a 1-based line number for text sections.
class ParseError : public std::runtime_error {
 public:
  enum class Location { byte, line };

  ParseError(const std::string& what, Location location, std::size_t offset)
      : std::runtime_error(what + (location == Location::byte ? " (at byte " : " (at line ") +
                           std::to_string(offset) + ")"),
        location_(location),
        offset_(offset) {}

  Location location() const noexcept { return location_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  Location location_;
  std::size_t offset_;
};

/// No configuration met the deadline by the time the search finished.
class InfeasibleDeadline : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace edgerecon
