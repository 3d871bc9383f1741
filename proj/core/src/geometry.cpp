#include "crenrich/geometry.hpp"

#include <algorithm>
#include <string>

#include "crenrich/errors.hpp"

namespace crenrich {

namespace {

double bbox_diagonal_sq(Point2 a, Point2 b, Point2 c) {
  const double dx = std::max({a.x, b.x, c.x}) - std::min({a.x, b.x, c.x});
  const double dy = std::max({a.y, b.y, c.y}) - std::min({a.y, b.y, c.y});
  return dx * dx + dy * dy;
}

}  // namespace

Triangle Triangle::make(Point2 a, Point2 b, Point2 c) {
  bool swapped = false;
  return make(a, b, c, swapped);
}

Triangle Triangle::make(Point2 a, Point2 b, Point2 c, bool& swapped) {
  if (!is_finite(a) || !is_finite(b) || !is_finite(c)) {
    throw DegenerateTriangle("triangle has non-finite vertex coordinates");
  }
  double twice_area = orient2d(a, b, c);
  if (std::abs(0.5 * twice_area) <= 1e-14 * bbox_diagonal_sq(a, b, c)) {
    throw DegenerateTriangle("degenerate triangle (signed area " + std::to_string(0.5 * twice_area) +
                             ")");
  }
  swapped = twice_area < 0.0;
  if (swapped) {
    std::swap(b, c);
    twice_area = orient2d(a, b, c);
  }
  return Triangle({a, b, c}, 0.5 * twice_area);
}

double Triangle::diameter() const {
  return std::max({edge_length(0), edge_length(1), edge_length(2)});
}

SpecialPoints Triangle::special_points() const {
  return {{midpoint(0), midpoint(1), midpoint(2)}, barycenter()};
}

Barycentric Triangle::barycentric(Point2 p) const {
  // Signed-area ratios; l[0] is closed by the partition of unity so that the
  // vertices map to exact unit vectors.
  const double twice_area = 2.0 * area_;
  const double l1 = orient2d(v_[0], p, v_[2]) / twice_area;
  const double l2 = orient2d(v_[0], v_[1], p) / twice_area;
  return {{1.0 - l1 - l2, l1, l2}};
}

Point2 Triangle::point(const Barycentric& b) const {
  return {b[0] * v_[0].x + b[1] * v_[1].x + b[2] * v_[2].x,
          b[0] * v_[0].y + b[1] * v_[1].y + b[2] * v_[2].y};
}

}  // namespace crenrich
