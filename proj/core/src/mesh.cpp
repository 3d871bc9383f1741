#include "crenrich/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "crenrich/errors.hpp"

namespace crenrich {

namespace {

constexpr double kInsideTol = 1e-12;

}  // namespace

/// Uniform bucket grid over the mesh bounding box. Each bucket lists, in
/// increasing order, the triangles whose (slightly inflated) bounding box meets it.
struct Mesh::GridIndex {
  double x0 = 0.0, y0 = 0.0, dx = 1.0, dy = 1.0;
  std::size_t nx = 1, ny = 1;
  std::vector<std::vector<std::size_t>> buckets;

  std::size_t clamp_cell(double v, double origin, double width, std::size_t count) const {
    const double c = std::floor((v - origin) / width);
    if (c < 0.0) return 0;
    return std::min(static_cast<std::size_t>(c), count - 1);
  }

  GridIndex(const std::vector<Triangle>& tris) {
    double x1 = -INFINITY, y1 = -INFINITY;
    x0 = INFINITY;
    y0 = INFINITY;
    for (const auto& t : tris) {
      for (const auto& v : t.vertices()) {
        x0 = std::min(x0, v.x);
        y0 = std::min(y0, v.y);
        x1 = std::max(x1, v.x);
        y1 = std::max(y1, v.y);
      }
    }
    const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(tris.size()))));
    nx = ny = std::max<std::size_t>(side, 1);
    dx = std::max(x1 - x0, 1e-300) / static_cast<double>(nx);
    dy = std::max(y1 - y0, 1e-300) / static_cast<double>(ny);
    buckets.resize(nx * ny);
    const double pad = 1e-9 * std::max(x1 - x0, y1 - y0);
    for (std::size_t k = 0; k < tris.size(); ++k) {
      const auto& v = tris[k].vertices();
      const double bx0 = std::min({v[0].x, v[1].x, v[2].x}) - pad;
      const double bx1 = std::max({v[0].x, v[1].x, v[2].x}) + pad;
      const double by0 = std::min({v[0].y, v[1].y, v[2].y}) - pad;
      const double by1 = std::max({v[0].y, v[1].y, v[2].y}) + pad;
      const std::size_t i0 = clamp_cell(bx0, x0, dx, nx), i1 = clamp_cell(bx1, x0, dx, nx);
      const std::size_t j0 = clamp_cell(by0, y0, dy, ny), j1 = clamp_cell(by1, y0, dy, ny);
      for (std::size_t j = j0; j <= j1; ++j) {
        for (std::size_t i = i0; i <= i1; ++i) buckets[j * nx + i].push_back(k);
      }
    }
  }

  const std::vector<std::size_t>& candidates(Point2 p) const {
    return buckets[clamp_cell(p.y, y0, dy, ny) * nx + clamp_cell(p.x, x0, dx, nx)];
  }
};

Mesh::Mesh(std::vector<Point2> vertices, std::vector<TriangleIndices> triangles,
           std::vector<int> boundary_markers)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      markers_(std::move(boundary_markers)) {
  if (!markers_.empty() && markers_.size() != vertices_.size()) {
    throw ParseError("boundary marker count " + std::to_string(markers_.size()) +
                     " does not match vertex count " + std::to_string(vertices_.size()));
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!is_finite(vertices_[i])) {
      throw ParseError("vertex " + std::to_string(i) + " has non-finite coordinates");
    }
  }
  std::set<TriangleIndices> seen;
  geometry_.reserve(triangles_.size());
  for (std::size_t k = 0; k < triangles_.size(); ++k) {
    auto& tri = triangles_[k];
    for (std::size_t idx : tri) {
      if (idx >= vertices_.size()) {
        throw IndexError("triangle " + std::to_string(k) + " references vertex " +
                         std::to_string(idx) + " of " + std::to_string(vertices_.size()));
      }
    }
    bool swapped = false;
    try {
      geometry_.push_back(
          Triangle::make(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]], swapped));
    } catch (const DegenerateTriangle& e) {
      throw DegenerateTriangle("triangle " + std::to_string(k) + ": " + e.what());
    }
    if (swapped) std::swap(tri[1], tri[2]);
    auto key = tri;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) {
      throw ParseError("duplicate triangle " + std::to_string(k));
    }
    h_max_ = std::max(h_max_, geometry_.back().diameter());
  }
  if (geometry_.size() >= kGridIndexThreshold) {
    grid_ = std::make_shared<const GridIndex>(geometry_);
  }
}

double Mesh::total_area() const {
  return std::accumulate(geometry_.begin(), geometry_.end(), 0.0,
                         [](double acc, const Triangle& t) { return acc + t.area(); });
}

std::optional<LocateResult> Mesh::try_triangle(std::size_t k, Point2 p) const {
  const Barycentric b = geometry_[k].barycentric(p);
  if (b.inside(kInsideTol)) return LocateResult{k, b};
  return std::nullopt;
}

LocateResult Mesh::locate(Point2 p) const {
  if (grid_) {
    for (std::size_t k : grid_->candidates(p)) {
      if (auto hit = try_triangle(k, p)) return *hit;
    }
  } else {
    for (std::size_t k = 0; k < geometry_.size(); ++k) {
      if (auto hit = try_triangle(k, p)) return *hit;
    }
  }
  throw PointOutsideMesh("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                         ") is outside the mesh");
}

Mesh structured_mesh(std::size_t n) {
  if (n == 0) throw DomainError("structured_mesh requires n >= 1");
  const std::size_t side = n + 1;
  std::vector<Point2> vertices;
  vertices.reserve(side * side);
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t i = 0; i <= n; ++i) {
      vertices.push_back({static_cast<double>(i) / static_cast<double>(n),
                          static_cast<double>(j) / static_cast<double>(n)});
    }
  }
  std::vector<TriangleIndices> triangles;
  triangles.reserve(2 * n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t sw = j * side + i, se = sw + 1, nw = sw + side, ne = nw + 1;
      triangles.push_back({sw, se, ne});
      triangles.push_back({sw, ne, nw});
    }
  }
  return Mesh(std::move(vertices), std::move(triangles));
}

}  // namespace crenrich
