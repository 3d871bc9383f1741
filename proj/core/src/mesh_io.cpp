#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "crenrich/errors.hpp"
#include "crenrich/mesh.hpp"

namespace crenrich {

namespace {

using Tokens = std::vector<std::string_view>;

/// Non-empty, comment-stripped lines split on whitespace.
std::vector<Tokens> tokenize(std::string_view text) {
  std::vector<Tokens> rows;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    Tokens tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      std::size_t end = pos;
      while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
      if (end > pos) tokens.push_back(line.substr(pos, end - pos));
      pos = end;
    }
    if (!tokens.empty()) rows.push_back(std::move(tokens));
  }
  return rows;
}

template <class T>
T parse_number(std::string_view token, const char* file, std::size_t line) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(std::string(file) + " row " + std::to_string(line) + ": cannot parse '" +
                     std::string(token) + "'");
  }
  return value;
}

void expect_columns(const Tokens& row, std::size_t count, const char* file, std::size_t line) {
  if (row.size() < count) {
    throw ParseError(std::string(file) + " row " + std::to_string(line) + ": expected " +
                     std::to_string(count) + " columns, found " + std::to_string(row.size()));
  }
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Mesh parse_mesh(std::string_view node_text, std::string_view ele_text) {
  const auto node_rows = tokenize(node_text);
  if (node_rows.empty()) throw ParseError(".node: missing header");
  const auto& nh = node_rows.front();
  expect_columns(nh, 1, ".node", 0);
  const auto n_vertices = parse_number<long long>(nh[0], ".node", 0);
  const long long dim = nh.size() > 1 ? parse_number<long long>(nh[1], ".node", 0) : 2;
  const long long n_attrs = nh.size() > 2 ? parse_number<long long>(nh[2], ".node", 0) : 0;
  const long long n_markers = nh.size() > 3 ? parse_number<long long>(nh[3], ".node", 0) : 0;
  if (n_vertices < 3 || dim != 2 || n_attrs < 0 || n_markers < 0 || n_markers > 1) {
    throw ParseError(".node: invalid header");
  }
  if (node_rows.size() - 1 != static_cast<std::size_t>(n_vertices)) {
    throw ParseError(".node: header declares " + std::to_string(n_vertices) + " vertices, found " +
                     std::to_string(node_rows.size() - 1));
  }

  std::vector<Point2> vertices;
  std::vector<int> markers;
  vertices.reserve(static_cast<std::size_t>(n_vertices));
  long long base = 0;
  const std::size_t node_cols = static_cast<std::size_t>(3 + n_attrs + n_markers);
  for (std::size_t r = 1; r < node_rows.size(); ++r) {
    const auto& row = node_rows[r];
    expect_columns(row, node_cols, ".node", r);
    const auto index = parse_number<long long>(row[0], ".node", r);
    if (r == 1) {
      if (index != 0 && index != 1) throw ParseError(".node: first vertex index must be 0 or 1");
      base = index;
    }
    if (index != base + static_cast<long long>(r - 1)) {
      throw ParseError(".node row " + std::to_string(r) + ": vertex indices are not consecutive");
    }
    vertices.push_back({parse_number<double>(row[1], ".node", r), parse_number<double>(row[2], ".node", r)});
    if (n_markers == 1) markers.push_back(parse_number<int>(row[node_cols - 1], ".node", r));
  }

  const auto ele_rows = tokenize(ele_text);
  if (ele_rows.empty()) throw ParseError(".ele: missing header");
  const auto& eh = ele_rows.front();
  expect_columns(eh, 1, ".ele", 0);
  const auto n_triangles = parse_number<long long>(eh[0], ".ele", 0);
  const long long per_tri = eh.size() > 1 ? parse_number<long long>(eh[1], ".ele", 0) : 3;
  const long long ele_attrs = eh.size() > 2 ? parse_number<long long>(eh[2], ".ele", 0) : 0;
  if (n_triangles < 1 || per_tri != 3 || ele_attrs < 0) throw ParseError(".ele: invalid header");
  if (ele_rows.size() - 1 != static_cast<std::size_t>(n_triangles)) {
    throw ParseError(".ele: header declares " + std::to_string(n_triangles) + " triangles, found " +
                     std::to_string(ele_rows.size() - 1));
  }

  std::vector<TriangleIndices> triangles;
  triangles.reserve(static_cast<std::size_t>(n_triangles));
  for (std::size_t r = 1; r < ele_rows.size(); ++r) {
    const auto& row = ele_rows[r];
    expect_columns(row, static_cast<std::size_t>(4 + ele_attrs), ".ele", r);
    TriangleIndices tri{};
    for (std::size_t c = 0; c < 3; ++c) {
      const auto idx = parse_number<long long>(row[c + 1], ".ele", r) - base;
      if (idx < 0 || idx >= n_vertices) {
        throw IndexError(".ele row " + std::to_string(r) + ": vertex " + std::string(row[c + 1]) +
                         " out of range");
      }
      tri[c] = static_cast<std::size_t>(idx);
    }
    triangles.push_back(tri);
  }
  return Mesh(std::move(vertices), std::move(triangles), std::move(markers));
}

MeshText serialize_mesh(const Mesh& mesh) {
  const bool marked = mesh.has_boundary_markers();
  std::string node = std::to_string(mesh.vertices().size()) + " 2 0 " + (marked ? "1" : "0") + "\n";
  for (std::size_t i = 0; i < mesh.vertices().size(); ++i) {
    const Point2 p = mesh.vertices()[i];
    node += std::to_string(i) + " " + format_double(p.x) + " " + format_double(p.y);
    if (marked) node += " " + std::to_string(mesh.boundary_markers()[i]);
    node += "\n";
  }
  std::string ele = std::to_string(mesh.size()) + " 3 0\n";
  for (std::size_t k = 0; k < mesh.size(); ++k) {
    const auto& t = mesh.triangles()[k];
    ele += std::to_string(k) + " " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " +
           std::to_string(t[2]) + "\n";
  }
  return {std::move(node), std::move(ele)};
}

Mesh read_mesh_files(const std::string& base) {
  return parse_mesh(read_file(base + ".node"), read_file(base + ".ele"));
}

}  // namespace crenrich
