#include "edgerecon/ply.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "edgerecon/errors.hpp"

namespace edgerecon {
namespace {

enum class ScalarType { int8, uint8, int16, uint16, int32, uint32, float32, float64 };

std::optional<ScalarType> scalar_type_from_name(std::string_view name) {
  if (name == "char" || name == "int8") return ScalarType::int8;
  if (name == "uchar" || name == "uint8") return ScalarType::uint8;
  if (name == "short" || name == "int16") return ScalarType::int16;
  if (name == "ushort" || name == "uint16") return ScalarType::uint16;
  if (name == "int" || name == "int32") return ScalarType::int32;
  if (name == "uint" || name == "uint32") return ScalarType::uint32;
  if (name == "float" || name == "float32") return ScalarType::float32;
  if (name == "double" || name == "float64") return ScalarType::float64;
  return std::nullopt;
}

std::size_t scalar_size(ScalarType type) {
  switch (type) {
    case ScalarType::int8:
    case ScalarType::uint8:
      return 1;
    case ScalarType::int16:
    case ScalarType::uint16:
      return 2;
    case ScalarType::int32:
    case ScalarType::uint32:
    case ScalarType::float32:
      return 4;
    case ScalarType::float64:
      return 8;
  }
  return 0;
}

struct Property {
  std::string name;
  ScalarType type = ScalarType::float32;
  bool is_list = false;
  ScalarType count_type = ScalarType::uint8;
};

struct Element {
  std::string name;
  std::size_t count = 0;
  std::vector<Property> properties;
};

struct Header {
  bool binary = false;
  CloudLabel label = CloudLabel::full;
  std::vector<Element> elements;
  std::size_t body_offset = 0;  // byte offset of the first body byte
  std::size_t body_line = 0;    // line number of the first body line
};

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

// Returns the next '\n'-terminated line starting at `pos` and advances `pos`.
std::optional<std::string_view> next_line(std::string_view bytes, std::size_t& pos) {
  if (pos >= bytes.size()) return std::nullopt;
  const std::size_t end = bytes.find('\n', pos);
  std::string_view line;
  if (end == std::string_view::npos) {
    line = bytes.substr(pos);
    pos = bytes.size();
  } else {
    line = bytes.substr(pos, end - pos);
    pos = end + 1;
  }
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::size_t parse_count(std::string_view word, std::size_t line_no) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size()) {
    throw ParseError("invalid element count '" + std::string(word) + "'",
                     ParseError::Location::line, line_no);
  }
  return value;
}

Header parse_header(std::string_view bytes) {
  Header header;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError(what, ParseError::Location::line, line_no);
  };

  auto line = next_line(bytes, pos);
  ++line_no;
  if (!line || *line != "ply") throw fail("missing 'ply' magic");

  bool have_format = false;
  while (true) {
    line = next_line(bytes, pos);
    ++line_no;
    if (!line) throw fail("header ended before 'end_header'");
    const auto words = split_words(*line);
    if (words.empty()) continue;
    const std::string_view keyword = words[0];
    if (keyword == "end_header") break;
    if (keyword == "format") {
      if (words.size() != 3) throw fail("malformed format line");
      if (words[1] == "ascii") {
        header.binary = false;
      } else if (words[1] == "binary_little_endian") {
        header.binary = true;
      } else if (words[1] == "binary_big_endian") {
        throw fail("binary_big_endian PLY is not supported");
      } else {
        throw fail("unknown PLY format '" + std::string(words[1]) + "'");
      }
      have_format = true;
    } else if (keyword == "comment" || keyword == "obj_info") {
      if (keyword == "comment" && words.size() == 3 && words[1] == "label") {
        try {
          header.label = label_from_string(words[2]);
        } catch (const std::invalid_argument&) {
          // Foreign comments that happen to start with "label" are ignored.
        }
      }
    } else if (keyword == "element") {
      if (words.size() != 3) throw fail("malformed element line");
      Element element;
      element.name = std::string(words[1]);
      element.count = parse_count(words[2], line_no);
      header.elements.push_back(std::move(element));
    } else if (keyword == "property") {
      if (header.elements.empty()) throw fail("property declared before any element");
      Property property;
      if (words.size() == 5 && words[1] == "list") {
        const auto count_type = scalar_type_from_name(words[2]);
        const auto item_type = scalar_type_from_name(words[3]);
        if (!count_type || !item_type) throw fail("unknown list property type");
        property.is_list = true;
        property.count_type = *count_type;
        property.type = *item_type;
        property.name = std::string(words[4]);
      } else if (words.size() == 3) {
        const auto type = scalar_type_from_name(words[1]);
        if (!type) throw fail("unknown property type '" + std::string(words[1]) + "'");
        property.type = *type;
        property.name = std::string(words[2]);
      } else {
        throw fail("malformed property line");
      }
      header.elements.back().properties.push_back(std::move(property));
    } else {
      throw fail("unexpected header keyword '" + std::string(keyword) + "'");
    }
  }
  if (!have_format) throw fail("missing format line");
  header.body_offset = pos;
  header.body_line = line_no + 1;
  return header;
}

// Column indices of the properties the cloud cares about.
struct VertexLayout {
  std::array<std::optional<std::size_t>, 3> xyz;
  std::array<std::optional<std::size_t>, 3> rgb;
};

VertexLayout vertex_layout(const Element& vertex, std::size_t line_no) {
  VertexLayout layout;
  const std::array<std::string_view, 3> xyz_names{"x", "y", "z"};
  const std::array<std::string_view, 3> rgb_names{"red", "green", "blue"};
  for (std::size_t i = 0; i < vertex.properties.size(); ++i) {
    const Property& p = vertex.properties[i];
    for (std::size_t c = 0; c < 3; ++c) {
      if (p.name == xyz_names[c] || p.name == rgb_names[c]) {
        if (p.is_list) {
          throw ParseError("vertex property '" + p.name + "' must be a scalar",
                           ParseError::Location::line, line_no);
        }
        (p.name == xyz_names[c] ? layout.xyz : layout.rgb)[c] = i;
      }
    }
  }
  for (const auto& column : layout.xyz) {
    if (!column) {
      throw ParseError("vertex element lacks x, y or z", ParseError::Location::line, line_no);
    }
  }
  return layout;
}

std::uint8_t to_channel(double value) {
  return static_cast<std::uint8_t>(std::clamp(std::round(value), 0.0, 255.0));
}

Point3 assemble_point(const std::vector<double>& values, const VertexLayout& layout) {
  Point3 p;
  p.x = values[*layout.xyz[0]];
  p.y = values[*layout.xyz[1]];
  p.z = values[*layout.xyz[2]];
  if (layout.rgb[0]) p.color.r = to_channel(values[*layout.rgb[0]]);
  if (layout.rgb[1]) p.color.g = to_channel(values[*layout.rgb[1]]);
  if (layout.rgb[2]) p.color.b = to_channel(values[*layout.rgb[2]]);
  return p;
}

PointCloud parse_ascii_body(std::string_view bytes, const Header& header) {
  PointCloud cloud;
  cloud.label = header.label;
  std::size_t pos = header.body_offset;
  std::size_t line_no = header.body_line - 1;

  for (const Element& element : header.elements) {
    const bool is_vertex = element.name == "vertex";
    std::optional<VertexLayout> layout;
    if (is_vertex) {
      layout = vertex_layout(element, line_no);
      cloud.points.reserve(element.count);
    }
    std::vector<double> values(element.properties.size());
    for (std::size_t record = 0; record < element.count; ++record) {
      std::optional<std::string_view> line;
      std::vector<std::string_view> words;
      do {
        line = next_line(bytes, pos);
        ++line_no;
        if (!line) {
          throw ParseError("expected " + std::to_string(element.count) + " " + element.name +
                               " records, found " + std::to_string(record),
                           ParseError::Location::line, line_no);
        }
        words = split_words(*line);
      } while (words.empty());

      std::size_t w = 0;
      auto take = [&]() -> double {
        if (w >= words.size()) {
          throw ParseError("too few values in " + element.name + " record",
                           ParseError::Location::line, line_no);
        }
        const std::string_view word = words[w++];
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
        if (ec != std::errc() || ptr != word.data() + word.size()) {
          throw ParseError("invalid number '" + std::string(word) + "'",
                           ParseError::Location::line, line_no);
        }
        return value;
      };
      for (std::size_t i = 0; i < element.properties.size(); ++i) {
        if (element.properties[i].is_list) {
          const double n = take();
          if (n < 0 || n != std::floor(n)) {
            throw ParseError("invalid list length", ParseError::Location::line, line_no);
          }
          for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) take();
          values[i] = n;
        } else {
          values[i] = take();
        }
      }
      if (w != words.size()) {
        throw ParseError("too many values in " + element.name + " record",
                         ParseError::Location::line, line_no);
      }
      if (is_vertex) {
        Point3 p = assemble_point(values, *layout);
        if (!p.is_finite()) {
          throw ParseError("non-finite coordinate", ParseError::Location::line, line_no);
        }
        cloud.points.push_back(p);
      }
    }
  }
  while (auto line = next_line(bytes, pos)) {
    ++line_no;
    if (!split_words(*line).empty()) {
      throw ParseError("data after the last declared element", ParseError::Location::line,
                       line_no);
    }
  }
  return cloud;
}

template <typename T>
T load_le(const char* data) {
  T value;
  std::memcpy(&value, data, sizeof(T));
  if constexpr (std::endian::native == std::endian::big && sizeof(T) > 1) {
    auto* raw = reinterpret_cast<unsigned char*>(&value);
    std::reverse(raw, raw + sizeof(T));
  }
  return value;
}

double load_scalar(ScalarType type, const char* data) {
  switch (type) {
    case ScalarType::int8:
      return load_le<std::int8_t>(data);
    case ScalarType::uint8:
      return load_le<std::uint8_t>(data);
    case ScalarType::int16:
      return load_le<std::int16_t>(data);
    case ScalarType::uint16:
      return load_le<std::uint16_t>(data);
    case ScalarType::int32:
      return load_le<std::int32_t>(data);
    case ScalarType::uint32:
      return load_le<std::uint32_t>(data);
    case ScalarType::float32:
      return load_le<float>(data);
    case ScalarType::float64:
      return load_le<double>(data);
  }
  return 0.0;
}

PointCloud parse_binary_body(std::string_view bytes, const Header& header) {
  PointCloud cloud;
  cloud.label = header.label;
  std::size_t pos = header.body_offset;

  auto read = [&](ScalarType type, const std::string& element_name, std::size_t record,
                  std::size_t count) -> double {
    const std::size_t size = scalar_size(type);
    if (bytes.size() - pos < size) {
      throw ParseError("file ends inside " + element_name + " record " + std::to_string(record) +
                           " of " + std::to_string(count),
                       ParseError::Location::byte, pos);
    }
    const double value = load_scalar(type, bytes.data() + pos);
    pos += size;
    return value;
  };

  for (const Element& element : header.elements) {
    const bool is_vertex = element.name == "vertex";
    std::optional<VertexLayout> layout;
    if (is_vertex) {
      layout = vertex_layout(element, header.body_line - 1);
      cloud.points.reserve(element.count);
    }
    std::vector<double> values(element.properties.size());
    for (std::size_t record = 0; record < element.count; ++record) {
      const std::size_t record_start = pos;
      for (std::size_t i = 0; i < element.properties.size(); ++i) {
        const Property& p = element.properties[i];
        if (p.is_list) {
          const double n = read(p.count_type, element.name, record, element.count);
          if (n < 0) throw ParseError("negative list length", ParseError::Location::byte, pos);
          const std::size_t skip = static_cast<std::size_t>(n) * scalar_size(p.type);
          if (bytes.size() - pos < skip) {
            throw ParseError("file ends inside list property '" + p.name + "'",
                             ParseError::Location::byte, pos);
          }
          pos += skip;
          values[i] = n;
        } else {
          values[i] = read(p.type, element.name, record, element.count);
        }
      }
      if (is_vertex) {
        Point3 p = assemble_point(values, *layout);
        if (!p.is_finite()) {
          throw ParseError("non-finite coordinate", ParseError::Location::byte, record_start);
        }
        cloud.points.push_back(p);
      }
    }
  }
  if (pos != bytes.size()) {
    throw ParseError(std::to_string(bytes.size() - pos) + " trailing bytes after the last element",
                     ParseError::Location::byte, pos);
  }
  return cloud;
}

void append_double(std::string& out, double value) {
  std::array<char, 32> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  out.append(buffer.data(), result.ptr);
}

template <typename T>
void store_le(std::string& out, T value) {
  std::array<char, sizeof(T)> raw{};
  std::memcpy(raw.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big && sizeof(T) > 1) {
    std::reverse(raw.begin(), raw.end());
  }
  out.append(raw.data(), raw.size());
}

}  // namespace

PointCloud parse_ply(std::string_view bytes) {
  const Header header = parse_header(bytes);
  const bool has_vertex = std::any_of(header.elements.begin(), header.elements.end(),
                                      [](const Element& e) { return e.name == "vertex"; });
  if (!has_vertex) {
    throw ParseError("no vertex element declared", ParseError::Location::line,
                     header.body_line - 1);
  }
  return header.binary ? parse_binary_body(bytes, header) : parse_ascii_body(bytes, header);
}

std::string write_ply(const PointCloud& cloud, PlyFormat format) {
  std::string out;
  out += "ply\n";
  out += format == PlyFormat::ascii ? "format ascii 1.0\n" : "format binary_little_endian 1.0\n";
  out += "comment label ";
  out += to_string(cloud.label);
  out += "\nelement vertex " + std::to_string(cloud.size()) + "\n";
  out +=
      "property double x\nproperty double y\nproperty double z\n"
      "property uchar red\nproperty uchar green\nproperty uchar blue\n"
      "end_header\n";

  if (format == PlyFormat::ascii) {
    for (const Point3& p : cloud.points) {
      append_double(out, p.x);
      out += ' ';
      append_double(out, p.y);
      out += ' ';
      append_double(out, p.z);
      out += ' ' + std::to_string(p.color.r) + ' ' + std::to_string(p.color.g) + ' ' +
             std::to_string(p.color.b) + '\n';
    }
  } else {
    out.reserve(out.size() + cloud.size() * 27);
    for (const Point3& p : cloud.points) {
      store_le(out, p.x);
      store_le(out, p.y);
      store_le(out, p.z);
      out += static_cast<char>(p.color.r);
      out += static_cast<char>(p.color.g);
      out += static_cast<char>(p.color.b);
    }
  }
  return out;
}

PointCloud read_ply_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_ply(buffer.str());
}

void write_ply_file(const std::filesystem::path& path, const PointCloud& cloud,
                    PlyFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const std::string bytes = write_ply(cloud, format);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace edgerecon
