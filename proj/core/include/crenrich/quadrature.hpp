#pragma once

#include <optional>
#include <vector>

#include "crenrich/geometry.hpp"

namespace crenrich {

/// Euler beta function B(z1, z2) for z1, z2 > 0, via log-gamma.
/// Throws DomainError for nonpositive arguments.
double beta(double z1, double z2);

/// Total mass of the weight w_gamma(t) = t^gamma (1-t)^gamma on [0,1],
/// i.e. B(gamma+1, gamma+1). Throws DomainError for gamma <= -1.
double sigma(double gamma);

/// Gauss rule on [0,1]. When `weight_exponent` is set, the weights absorb
/// w_gamma and the rule computes  int_0^1 w_gamma(t) f(t) dt ~ sum w_k f(t_k).
struct SegmentRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::optional<double> weight_exponent;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) acc += weights[k] * f(nodes[k]);
    return acc;
  }
};

inline constexpr int kMaxSegmentPoints = 64;
inline constexpr int kDefaultSegmentPoints = 20;

/// n-point Gauss-Legendre rule on [0,1] (Newton on the Legendre recurrence).
SegmentRule gauss_legendre_01(int n);

/// n-point Gauss-Jacobi rule for the symmetric weight w_gamma on [0,1]
/// (Golub-Welsch on the symmetric Jacobi recurrence, mapped from [-1,1]).
SegmentRule gauss_jacobi_01(double gamma, int n);

/// Symmetric triangle rule with area-normalized weights (sum 1).
struct TriangleRule {
  std::vector<Barycentric> nodes;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return nodes.size(); }

  /// Integral over `t`: area(t) * sum_k w_k f(x_k).
  template <class F>
  double integrate(const Triangle& t, F&& f) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) acc += weights[k] * f(t.point(nodes[k]));
    return t.area() * acc;
  }
};

inline constexpr int kDefaultTriangleDegree = 8;

/// Dunavant-type rule with positive weights for degree in {2, 5, 8, 10}.
/// Throws UnsupportedDegree otherwise.
TriangleRule triangle_rule(int degree);

}  // namespace crenrich
