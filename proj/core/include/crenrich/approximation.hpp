#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "crenrich/element_spec.hpp"
#include "crenrich/mesh.hpp"
#include "crenrich/quadrature.hpp"

namespace crenrich {

using ScalarField = std::function<double(Point2)>;

/// DOF values of f on one triangle: (I1, I2, I3) for CR, (I1, I2, I3, F1, F2, F3)
/// for enriched elements. The approximant is sum_k dofs[k] * basis_k.
struct LocalApproximant {
  std::array<double, 6> dofs{};
  std::size_t count = 0;
};

template <class Field>
LocalApproximant local_interpolate(Field&& f, const Triangle& t, const Element& element) {
  LocalApproximant out;
  out.count = element.dof_count();
  for (std::size_t k = 0; k < out.count; ++k) {
    out.dofs[k] = apply_functional(element.functionals()[k], f, t, element.rules());
  }
  return out;
}

inline double evaluate(const LocalApproximant& approx, const Element& element, const Barycentric& b) {
  const auto basis = element.basis(b);
  double acc = 0.0;
  for (std::size_t k = 0; k < approx.count; ++k) acc += approx.dofs[k] * basis[k];
  return acc;
}

/// |DOF_k(Pi f) - DOF_k(f)| for every DOF of the element.
template <class Field>
std::vector<double> interpolation_property_check(Field&& f, const Triangle& t, const Element& element) {
  const LocalApproximant approx = local_interpolate(f, t, element);
  auto projected = [&](Point2 p) { return evaluate(approx, element, t.barycentric(p)); };
  std::vector<double> residuals(approx.count);
  for (std::size_t k = 0; k < approx.count; ++k) {
    const double again = apply_functional(element.functionals()[k], projected, t, element.rules());
    residuals[k] = std::abs(again - approx.dofs[k]);
  }
  return residuals;
}

/// Elementwise (nonconforming) approximant over a mesh.
class PiecewiseField {
 public:
  PiecewiseField(std::shared_ptr<const Mesh> mesh, Element element, std::vector<LocalApproximant> locals);

  const Mesh& mesh() const { return *mesh_; }
  const Element& element() const { return element_; }
  const std::vector<LocalApproximant>& locals() const { return locals_; }

  double evaluate(std::size_t triangle, const Barycentric& b) const {
    return crenrich::evaluate(locals_[triangle], element_, b);
  }
  /// Evaluates in the lowest-index triangle containing p. Throws PointOutsideMesh.
  double evaluate(Point2 p) const;

  /// Debug text: header line, then "<triangle> <dof...>" per triangle.
  std::string serialize() const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  Element element_;
  std::vector<LocalApproximant> locals_;
};

/// Applies the local operator on every triangle. Failures are rethrown as
/// TriangleError carrying the triangle index. `threads == 0` uses all cores.
PiecewiseField global_interpolate(std::shared_ptr<const Mesh> mesh, const ScalarField& f,
                                  const Element& element, unsigned threads = 0);

struct ErrorReport {
  double l1 = 0.0;            // unnormalized integral of |f - field|
  double linf_sampled = 0.0;  // max |f - field| over quadrature nodes only
  std::size_t n_triangles = 0;
  double h_max = 0.0;
  int quadrature_degree = 0;
  bool subdivided = false;
};

/// L1 error by `rule` on each triangle (or on its four midpoint children when
/// `subdivide` is set). Per-triangle contributions are summed in index order.
ErrorReport l1_error(const PiecewiseField& field, const ScalarField& f, const TriangleRule& rule,
                     bool subdivide = false, unsigned threads = 0);

struct ConvergenceSlopes {
  std::vector<double> pairwise;  // log(e_i/e_{i+1}) / log(h_i/h_{i+1})
  double least_squares = 0.0;    // slope of log e against log h
};

/// Throws DomainError if fewer than 2 levels, h not strictly decreasing, or any
/// error is not positive (an exactly reproduced function has no order).
ConvergenceSlopes convergence_order(std::span<const double> errors, std::span<const double> h);

}  // namespace crenrich
