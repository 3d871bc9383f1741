// Independent reference computations for the test suites. Nothing here calls
// into the library's quadrature or basis code.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "crenrich/geometry.hpp"

namespace oracle {

using crenrich::Barycentric;
using crenrich::Point2;
using crenrich::Triangle;

// Double-exponential (tanh-sinh) rule on [0,1]. The integrand receives both t
// and 1 - t so endpoint factors keep full relative accuracy.
class TanhSinh {
 public:
  explicit TanhSinh(double h = 1.0 / 64.0, double u_max = 4.0) {
    for (double u = -u_max; u <= u_max + 0.5 * h; u += h) {
      const double s = 0.5 * std::numbers::pi * std::sinh(u);
      const double t = 1.0 / (1.0 + std::exp(-2.0 * s));
      const double one_minus_t = 1.0 / (1.0 + std::exp(2.0 * s));
      const double w = h * std::numbers::pi * std::cosh(u) * t * one_minus_t;
      if (w < 1e-300 || t <= 0.0 || one_minus_t <= 0.0) continue;
      nodes_.push_back({t, one_minus_t, w});
    }
  }

  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (const auto& n : nodes_) acc += n.w * f(n.t, n.s);
    return acc;
  }

 private:
  struct Node {
    double t, s, w;
  };
  std::vector<Node> nodes_;
};

inline const TanhSinh& tanh_sinh() {
  static const TanhSinh rule;
  return rule;
}

inline double weight(double gamma, double t, double s) { return std::pow(t, gamma) * std::pow(s, gamma); }

// int_0^1 w_gamma(t) t^k dt by direct quadrature.
inline double weighted_moment(double gamma, int k) {
  return tanh_sinh().integrate([&](double t, double s) { return weight(gamma, t, s) * std::pow(t, k); });
}

// B(a, b) through Gamma, used only where tgamma stays in range.
inline double beta_via_tgamma(double a, double b) { return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b); }

// int_T l0^a l1^b l2^c = a! b! c! 2|T| / (a+b+c+2)!
inline double barycentric_monomial_integral(int a, int b, int c, double area) {
  auto fact = [](int n) { return std::tgamma(n + 1.0); };
  return fact(a) * fact(b) * fact(c) * 2.0 * area / fact(a + b + c + 2);
}

// Functional kinds, described by segment endpoints in barycentric coordinates
// and a weight exponent (none for edge means, which use weight 1).
struct Segment {
  Barycentric start;
  Barycentric end;
  double gamma = 0.0;
  bool point = false;  // vertex evaluation at `start`
};

inline Barycentric mid(std::size_t j) {
  Barycentric b{{0.5, 0.5, 0.5}};
  b.l[j] = 0.0;
  return b;
}
inline Barycentric vert(std::size_t j) {
  Barycentric b;
  b.l[j] = 1.0;
  return b;
}
inline std::size_t nxt(std::size_t j, std::size_t step = 1) { return (j + step) % 3; }

// I_j: mean over the edge from v_{j+1} (t = 1) to v_{j+2} (t = 0).
inline Segment edge_mean(std::size_t j) { return {vert(nxt(j)), vert(nxt(j, 2)), 0.0, false}; }
// F_{j,gamma}: across the midsegment from m_{j+1} (t = 1) to m_{j+2} (t = 0).
inline Segment midsegment(std::size_t j, double gamma) { return {mid(nxt(j)), mid(nxt(j, 2)), gamma, false}; }
// G_{j,mu}: along the median from m_j (t = 1) to the barycenter (t = 0).
inline Segment median(std::size_t j, double mu) {
  return {mid(j), Barycentric{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}}, mu, false};
}
inline Segment vertex_eval(std::size_t j) { return {vert(j), vert(j), 0.0, true}; }

// Applies a functional to g(Barycentric) by tanh-sinh quadrature.
template <class G>
double apply(const Segment& seg, G&& g) {
  if (seg.point) return g(seg.start);
  return tanh_sinh().integrate([&](double t, double s) {
    Barycentric b;
    for (std::size_t i = 0; i < 3; ++i) b.l[i] = t * seg.start[i] + s * seg.end[i];
    return weight(seg.gamma, t, s) * g(b);
  });
}

// Same, for a Cartesian field on a concrete triangle.
template <class F>
double apply_on(const Segment& seg, const Triangle& tri, F&& f) {
  return apply(seg, [&](const Barycentric& b) { return f(tri.point(b)); });
}

// Closed forms of the two enriched families, written out term by term.
struct ClosedGn {
  double sigma;
  // Midsegment family
  double K, c, d, Delta, det_magnitude;
  double n_diag, n_off;          // N
  double n_inv_diag, n_inv_off;  // N^-1
  double f_same, f_other;        // F_j(varphi_j), F_j(varphi_i)
};

inline ClosedGn closed_gn(double g) {
  ClosedGn p{};
  p.sigma = beta_via_tgamma(g + 1.0, g + 1.0);
  const double s = p.sigma;
  p.K = -(5.0 * g + 6.0) / (8.0 * (2.0 * g + 3.0));
  p.c = 3.0 * (11.0 * g * g + 33.0 * g + 24.0) / (g * (7.0 * g + 9.0));
  p.d = -3.0 * (g + 3.0) * (3.0 * g + 4.0) / (g * (7.0 * g + 9.0));
  p.Delta = g * (7.0 * g + 9.0) / (8.0 * std::pow(2.0 * g + 3.0, 2));
  p.det_magnitude = g * g * (7.0 * g + 9.0) * s * s * s / (256.0 * std::pow(2.0 * g + 3.0, 3));
  p.n_diag = -0.25 * s;
  p.n_off = p.K * s;
  p.n_inv_diag = (1.0 - 4.0 * p.K) / (s * p.Delta);
  p.n_inv_off = 4.0 * p.K / (s * p.Delta);
  p.f_same = 3.0 * (g + 1.0) * s / (4.0 * (2.0 * g + 3.0));
  p.f_other = 0.75 * s;
  return p;
}

struct ClosedPn {
  double sigma, D, H, r, q, Omega, det;
  double n_diag, n_off, n_inv_diag, n_inv_off;
  double g_same, g_other;
};

inline ClosedPn closed_pn(double m) {
  ClosedPn p{};
  p.sigma = beta_via_tgamma(m + 1.0, m + 1.0);
  const double s = p.sigma;
  p.D = -(3.0 * m + 4.0) / (3.0 * (2.0 * m + 3.0));
  p.H = -(15.0 * m + 22.0) / (12.0 * (2.0 * m + 3.0));
  const double den = 3.0 * (m + 2.0) * (7.0 * m + 10.0);
  p.r = -(125.0 * m * m + 372.0 * m + 276.0) / den;
  p.q = (85.0 * m * m + 264.0 * m + 204.0) / den;
  p.Omega = -(m + 2.0) * (7.0 * m + 10.0) / (8.0 * std::pow(2.0 * m + 3.0, 2));
  p.det = -std::pow(m + 2.0, 2) * (7.0 * m + 10.0) * s * s * s / (256.0 * std::pow(2.0 * m + 3.0, 3));
  p.n_diag = 0.5 * s * p.D;
  p.n_off = 0.5 * s * p.H;
  p.n_inv_diag = 2.0 * (p.D + p.H) / (s * p.Omega);
  p.n_inv_off = -2.0 * p.H / (s * p.Omega);
  p.g_same = (25.0 * m + 38.0) * s / (12.0 * (2.0 * m + 3.0));
  p.g_other = (5.0 * m + 7.0) * s / (6.0 * (2.0 * m + 3.0));
  return p;
}

// AF3 vertex-dual and edge-dual quadratics, written out directly.
inline double phi(std::size_t i, const Barycentric& b) {
  return b[i] * (1.0 - 3.0 * b[nxt(i)] - 3.0 * b[nxt(i, 2)]);
}
inline double varphi(std::size_t i, const Barycentric& b) { return 6.0 * b[nxt(i)] * b[nxt(i, 2)]; }

// Random inputs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
  Point2 point(double lo = -1.0, double hi = 1.0) { return {uniform(lo, hi), uniform(lo, hi)}; }

  // Nondegenerate triangle with minimum angle bounded away from zero.
  Triangle triangle() {
    for (;;) {
      const Point2 a = point(), b = point(), c = point();
      const double area2 = std::abs(crenrich::orient2d(a, b, c));
      const double longest = std::max({crenrich::distance(a, b), crenrich::distance(b, c), crenrich::distance(c, a)});
      if (area2 > 0.05 * longest * longest) return Triangle::make(a, b, c);
    }
  }

  Barycentric barycentric() {
    const double u = uniform(0.0, 1.0), v = uniform(0.0, 1.0);
    const double a = std::min(u, v), b = std::max(u, v);
    return {{a, b - a, 1.0 - b}};
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// Quadratic c0 + c1 x + c2 y + c3 x^2 + c4 xy + c5 y^2.
struct Quadratic {
  std::array<double, 6> c{};
  double operator()(Point2 p) const {
    return c[0] + c[1] * p.x + c[2] * p.y + c[3] * p.x * p.x + c[4] * p.x * p.y + c[5] * p.y * p.y;
  }
  static Quadratic random(Rng& rng, bool linear_only = false) {
    Quadratic q;
    for (std::size_t k = 0; k < 6; ++k) q.c[k] = (linear_only && k >= 3) ? 0.0 : rng.uniform(-1.0, 1.0);
    return q;
  }
};

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
