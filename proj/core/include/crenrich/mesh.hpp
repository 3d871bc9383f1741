#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crenrich/geometry.hpp"

namespace crenrich {

using TriangleIndices = std::array<std::size_t, 3>;

struct LocateResult {
  std::size_t triangle;
  Barycentric coords;
};

/// Indexed triangulation. Construction validates indices, repairs orientation
/// and rejects degenerate or duplicate triangles; the mesh is immutable afterwards.
class Mesh {
 public:
  Mesh(std::vector<Point2> vertices, std::vector<TriangleIndices> triangles,
       std::vector<int> boundary_markers = {});

  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<TriangleIndices>& triangles() const { return triangles_; }
  const std::vector<int>& boundary_markers() const { return markers_; }
  bool has_boundary_markers() const { return !markers_.empty(); }

  std::size_t size() const { return triangles_.size(); }
  const Triangle& triangle(std::size_t k) const { return geometry_[k]; }

  double total_area() const;
  /// Longest edge over the mesh.
  double h_max() const { return h_max_; }

  /// Finds the lowest-index triangle containing p (weights >= -1e-12).
  /// Throws PointOutsideMesh.
  LocateResult locate(Point2 p) const;

  friend bool operator==(const Mesh& a, const Mesh& b) {
    return a.vertices_ == b.vertices_ && a.triangles_ == b.triangles_ && a.markers_ == b.markers_;
  }

  static constexpr std::size_t kGridIndexThreshold = 10000;

 private:
  struct GridIndex;

  std::optional<LocateResult> try_triangle(std::size_t k, Point2 p) const;

  std::vector<Point2> vertices_;
  std::vector<TriangleIndices> triangles_;
  std::vector<int> markers_;
  std::vector<Triangle> geometry_;
  double h_max_ = 0.0;
  std::shared_ptr<const GridIndex> grid_;
};

/// Uniform n x n grid on [0,1]^2, each cell split along its SW-NE diagonal.
/// Produces 2 n^2 triangles; cell (i, j) contributes the lower triangle first.
Mesh structured_mesh(std::size_t n);

/// Parses Shewchuk Triangle .node / .ele texts. Index base (0 or 1) follows the
/// first vertex index in the .node file. Internal indices are always 0-based.
Mesh parse_mesh(std::string_view node_text, std::string_view ele_text);

struct MeshText {
  std::string node;
  std::string ele;
};

/// Writes .node / .ele texts (0-based, shortest round-trip decimal form).
MeshText serialize_mesh(const Mesh& mesh);

/// Reads `<base>.node` and `<base>.ele`. Throws IoError if either is unreadable.
Mesh read_mesh_files(const std::string& base);

}  // namespace crenrich
