#include "crenrich/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <tuple>
#include <utility>

#include <Eigen/Eigenvalues>

#include "crenrich/errors.hpp"

namespace crenrich {

namespace {

double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

void check_points(int n) {
  if (n < 1 || n > kMaxSegmentPoints) {
    throw DomainError("segment rule size must lie in [1, " + std::to_string(kMaxSegmentPoints) +
                      "], got " + std::to_string(n));
  }
}

/// Enforces t_k + t_{n-1-k} = 1 and mirrored weights, which both constructions
/// satisfy in exact arithmetic.
void symmetrize(SegmentRule& rule) {
  const std::size_t n = rule.size();
  for (std::size_t k = 0; k < n / 2; ++k) {
    const std::size_t m = n - 1 - k;
    const double t = 0.5 * (rule.nodes[k] + (1.0 - rule.nodes[m]));
    const double w = 0.5 * (rule.weights[k] + rule.weights[m]);
    rule.nodes[k] = t;
    rule.nodes[m] = 1.0 - t;
    rule.weights[k] = rule.weights[m] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.5;
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  if (n == 1) p0 = 1.0;
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

double beta(double z1, double z2) {
  if (!(z1 > 0.0) || !(z2 > 0.0)) {
    throw DomainError("beta requires positive arguments, got (" + std::to_string(z1) + ", " +
                      std::to_string(z2) + ")");
  }
  return std::exp(log_gamma(z1) + log_gamma(z2) - log_gamma(z1 + z2));
}

double sigma(double gamma) {
  if (!(gamma > -1.0)) {
    throw DomainError("weight exponent must exceed -1, got " + std::to_string(gamma));
  }
  return beta(gamma + 1.0, gamma + 1.0);
}

SegmentRule gauss_legendre_01(int n) {
  check_points(n);
  SegmentRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Root i of P_n counted from x = 1 downwards.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    auto [p, dp] = legendre(n, x);
    for (int iter = 0; iter < 100; ++iter) {
      const double dx = p / dp;
      x -= dx;
      std::tie(p, dp) = legendre(n, x);
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 1.0 / ((1.0 - x * x) * dp * dp);  // 2/((1-x^2)P'^2), halved for [0,1]
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    const auto lo = static_cast<std::size_t>(i);
    rule.nodes[hi] = 0.5 * (1.0 + x);
    rule.nodes[lo] = 0.5 * (1.0 - x);
    rule.weights[hi] = rule.weights[lo] = w;
  }
  symmetrize(rule);
  return rule;
}

SegmentRule gauss_jacobi_01(double gamma, int n) {
  const double mass = sigma(gamma);
  check_points(n);
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(size);
  Eigen::VectorXd sub(std::max<Eigen::Index>(size - 1, 0));
  for (Eigen::Index k = 1; k < size; ++k) {
    const double kk = static_cast<double>(k);
    // Monic symmetric Jacobi recurrence; k = 1 written in closed form because
    // the general expression is 0/0 at gamma = -1/2.
    const double b = k == 1 ? 1.0 / (2.0 * gamma + 3.0)
                            : kk * (kk + 2.0 * gamma) /
                                  ((2.0 * kk + 2.0 * gamma) * (2.0 * kk + 2.0 * gamma) - 1.0);
    sub[k - 1] = std::sqrt(b);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw DomainError("Gauss-Jacobi eigenproblem did not converge");
  }
  SegmentRule rule;
  rule.weight_exponent = gamma;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < size; ++k) {
    const double v0 = solver.eigenvectors()(0, k);
    rule.nodes[static_cast<std::size_t>(k)] = 0.5 * (1.0 + solver.eigenvalues()[k]);
    rule.weights[static_cast<std::size_t>(k)] = mass * v0 * v0;
  }
  symmetrize(rule);
  return rule;
}

}  // namespace crenrich
