#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace crenrich {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Barycentric weights (l[0], l[1], l[2]) relative to the vertices of a triangle.
struct Barycentric {
  std::array<double, 3> l{};

  constexpr double operator[](std::size_t i) const { return l[i]; }
  constexpr double& operator[](std::size_t i) { return l[i]; }

  double sum() const { return l[0] + l[1] + l[2]; }
  bool inside(double tol = 1e-12) const { return l[0] >= -tol && l[1] >= -tol && l[2] >= -tol; }

  /// Convex combination t*a + (1-t)*b.
  static constexpr Barycentric lerp(double t, const Barycentric& a, const Barycentric& b) {
    return {{t * a.l[0] + (1.0 - t) * b.l[0], t * a.l[1] + (1.0 - t) * b.l[1],
             t * a.l[2] + (1.0 - t) * b.l[2]}};
  }
  static constexpr Barycentric vertex(std::size_t i) {
    Barycentric b;
    b.l[i] = 1.0;
    return b;
  }
  /// Midpoint of the edge opposite vertex j.
  static constexpr Barycentric midpoint(std::size_t j) {
    Barycentric b{{0.5, 0.5, 0.5}};
    b.l[j] = 0.0;
    return b;
  }
  static constexpr Barycentric barycenter() { return {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}}; }
};

/// Cyclic successor of a local index: next(2) == 0, matching v4 = v1, v5 = v2.
constexpr std::size_t next(std::size_t j, std::size_t step = 1) { return (j + step) % 3; }

struct SpecialPoints {
  std::array<Point2, 3> midpoints;  // midpoints[j] lies on the edge opposite vertex j
  Point2 barycenter;
};

/// Nondegenerate triangle with counterclockwise vertices. Immutable.
class Triangle {
 public:
  /// Builds a triangle, swapping v2/v3 if needed to make it counterclockwise.
  /// Throws DegenerateTriangle if |signed area| <= 1e-14 * (bbox diagonal)^2.
  static Triangle make(Point2 a, Point2 b, Point2 c);

  /// Same as make(); reports whether the vertices were swapped.
  static Triangle make(Point2 a, Point2 b, Point2 c, bool& swapped);

  static Triangle reference() { return make({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}); }

  const Point2& vertex(std::size_t i) const { return v_[i]; }
  const std::array<Point2, 3>& vertices() const { return v_; }
  double signed_area() const { return area_; }
  double area() const { return area_; }

  /// Edge opposite vertex j, parametrized from v_{j+1} to v_{j+2}.
  std::array<Point2, 2> edge(std::size_t j) const { return {v_[next(j)], v_[next(j, 2)]}; }
  double edge_length(std::size_t j) const { return distance(v_[next(j)], v_[next(j, 2)]); }
  double diameter() const;

  Point2 midpoint(std::size_t j) const { return 0.5 * (v_[next(j)] + v_[next(j, 2)]); }
  Point2 barycenter() const { return (1.0 / 3.0) * (v_[0] + v_[1] + v_[2]); }
  SpecialPoints special_points() const;

  /// Barycentric coordinates via signed-area ratios; exact at the vertices.
  Barycentric barycentric(Point2 p) const;
  Point2 point(const Barycentric& b) const;

 private:
  Triangle(std::array<Point2, 3> v, double area) : v_(v), area_(area) {}

  std::array<Point2, 3> v_;
  double area_;
};

/// Twice the signed area of (a, b, c); positive when counterclockwise.
inline double orient2d(Point2 a, Point2 b, Point2 c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

}  // namespace crenrich
