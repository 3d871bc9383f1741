#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "crenrich/errors.hpp"
#include "crenrich/geometry.hpp"
#include "crenrich/quadrature.hpp"

namespace crenrich {

using Vec3 = std::array<double, 3>;

// ---------------------------------------------------------------------------
// Shape functions. Local indices are 0-based; edge j is opposite vertex j.
// ---------------------------------------------------------------------------

/// Crouzeix-Raviart basis 1 - 2 l_i, dual to the edge means.
inline double cr_basis(std::size_t i, const Barycentric& b) { return 1.0 - 2.0 * b[i]; }

/// The quadratic AF3 pair at one index: `vertex` is dual to point evaluation at
/// v_i with vanishing edge means, `edge` is dual to the mean over edge i and
/// vanishes at every vertex.
struct Af3Values {
  double vertex;
  double edge;
};

inline Af3Values af3_basis(std::size_t i, const Barycentric& b) {
  const double li = b[i], lj = b[next(i)], lk = b[next(i, 2)];
  return {li * (1.0 - 3.0 * lj - 3.0 * lk), 6.0 * lj * lk};
}

inline Vec3 af3_vertex_functions(const Barycentric& b) {
  return {af3_basis(0, b).vertex, af3_basis(1, b).vertex, af3_basis(2, b).vertex};
}

inline Vec3 af3_edge_functions(const Barycentric& b) {
  return {6.0 * b[1] * b[2], 6.0 * b[2] * b[0], 6.0 * b[0] * b[1]};
}

// ---------------------------------------------------------------------------
// Degrees of freedom
// ---------------------------------------------------------------------------

enum class FunctionalKind {
  EdgeMean,            // mean of f over edge j
  VertexEval,          // f(v_j)
  MidsegmentWeighted,  // int w_gamma(t) f(t m_{j+1} + (1-t) m_{j+2}) dt
  MedianWeighted,      // int w_mu(t) f(t m_j + (1-t) m_star) dt
};

/// A linear functional on C(T). The integral kinds are line integrals along a
/// segment whose endpoints are fixed in barycentric coordinates, so every
/// functional commutes with affine maps of the triangle.
struct DofFunctional {
  FunctionalKind kind = FunctionalKind::EdgeMean;
  std::size_t index = 0;
  double parameter = 0.0;

  static DofFunctional edge_mean(std::size_t j);
  static DofFunctional vertex_eval(std::size_t j);
  /// Weighted integral across the midsegment parallel to edge j. gamma > -1.
  static DofFunctional midsegment(std::size_t j, double gamma);
  /// Weighted integral along the median from m_j to the barycenter. mu > -1.
  static DofFunctional median(std::size_t j, double mu);

  bool is_integral() const { return kind != FunctionalKind::VertexEval; }
  /// Exponent of w_gamma absorbed by the quadrature, if the functional is weighted.
  std::optional<double> weight_exponent() const;
  /// Segment as t*start + (1-t)*end, t in [0,1]; only meaningful for integral kinds.
  Barycentric segment_start() const;
  Barycentric segment_end() const;

  std::string describe() const;

  friend bool operator==(const DofFunctional&, const DofFunctional&) = default;
};

using FunctionalTriple = std::array<DofFunctional, 3>;

FunctionalTriple af3_functionals();
FunctionalTriple gn_functionals(double gamma);
FunctionalTriple pn_functionals(double mu);

/// Parses a functional triple such as "midsegment:1 / median:2 / vertex".
/// Entry j defines the functional with index j. Accepts '/', ';', '|' or
/// whitespace as separators. Throws ConfigError.
FunctionalTriple parse_functional_triple(std::string_view text);

/// Segment rules needed to apply a set of functionals: one Gauss-Legendre rule
/// for edge means plus one Gauss-Jacobi rule per distinct weight exponent.
class FunctionalRules {
 public:
  explicit FunctionalRules(std::vector<double> exponents = {}, int points = kDefaultSegmentPoints);

  static FunctionalRules for_functionals(const std::vector<DofFunctional>& functionals,
                                         int points = kDefaultSegmentPoints);

  int points() const { return points_; }
  const SegmentRule& plain() const { return plain_; }
  /// Throws DomainError if no rule for this exponent was prepared.
  const SegmentRule& weighted(double gamma) const;
  const SegmentRule& rule_for(const DofFunctional& f) const;

 private:
  int points_;
  SegmentRule plain_;
  std::vector<SegmentRule> weighted_;
};

/// Applies a functional to a scalar field f(Point2) on triangle t.
template <class Field>
double apply_functional(const DofFunctional& functional, Field&& f, const Triangle& t,
                        const FunctionalRules& rules) {
  if (functional.kind == FunctionalKind::VertexEval) return f(t.vertex(functional.index));
  const SegmentRule& rule = rules.rule_for(functional);
  const Barycentric a = functional.segment_start();
  const Barycentric b = functional.segment_end();
  double acc = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    acc += rule.weights[k] * f(t.point(Barycentric::lerp(rule.nodes[k], a, b)));
  }
  return acc;
}

/// Applies a functional to a function given directly in barycentric coordinates.
template <class BaryField>
double apply_functional_barycentric(const DofFunctional& functional, BaryField&& g,
                                    const FunctionalRules& rules) {
  if (functional.kind == FunctionalKind::VertexEval) {
    return g(Barycentric::vertex(functional.index));
  }
  const SegmentRule& rule = rules.rule_for(functional);
  const Barycentric a = functional.segment_start();
  const Barycentric b = functional.segment_end();
  double acc = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    acc += rule.weights[k] * g(Barycentric::lerp(rule.nodes[k], a, b));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// 3x3 algebra
// ---------------------------------------------------------------------------

struct Matrix3 {
  std::array<double, 9> a{};  // row-major

  double& operator()(std::size_t r, std::size_t c) { return a[3 * r + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a[3 * r + c]; }

  static Matrix3 identity();
  /// Matrix with `diag` on the diagonal and `off` elsewhere.
  static Matrix3 symmetric_pattern(double diag, double off);

  double det() const;
  /// Adjugate over determinant. Throws DomainError if det == 0.
  Matrix3 inverse() const;
  double max_abs() const;
  Vec3 column(std::size_t c) const { return {a[c], a[3 + c], a[6 + c]}; }

  friend Vec3 operator*(const Matrix3& m, const Vec3& v);
  friend Matrix3 operator*(const Matrix3& x, const Matrix3& y);
  friend Matrix3 operator*(double s, Matrix3 m);
};

struct Admissibility {
  double det;
  bool admissible;
};

/// |det N| > 1e-12 (max |N_ij|)^3.
Admissibility admissibility(const Matrix3& n);

/// N_ji = F_j(phi_i) for the AF3 vertex functions phi_i, by quadrature on t.
Matrix3 build_N(const FunctionalTriple& functionals, const Triangle& t, const FunctionalRules& rules);

/// M_ji = F_j(varphi_i) for the AF3 edge functions varphi_i.
Matrix3 build_edge_moments(const FunctionalTriple& functionals, const Triangle& t,
                           const FunctionalRules& rules);

// ---------------------------------------------------------------------------
// Enriched elements
// ---------------------------------------------------------------------------

/// Values of the six dual basis functions at one point: rho_i is dual to the
/// edge mean I_i, tau_i to the enriched functional F_i.
struct BasisEval {
  Vec3 rho{};
  Vec3 tau{};
};

/// Generic enrichment of CR by an admissible functional triple:
///   rho_i = <w_i, phi> + varphi_i,  tau_i = <c_i, phi>,
/// with c_i the columns of N^-1 and w_i = -sum_j c_j F_j(varphi_i).
class EnrichedElement {
 public:
  /// Throws InadmissibleFunctionals if N is singular.
  static EnrichedElement build(const FunctionalTriple& functionals, const Triangle& t,
                               const FunctionalRules& rules, std::string label = {});

  const FunctionalTriple& functionals() const { return functionals_; }
  const Matrix3& N() const { return n_; }
  const Matrix3& N_inv() const { return n_inv_; }
  const Matrix3& edge_moments() const { return edge_moments_; }
  double det() const { return det_; }
  Vec3 c(std::size_t i) const { return n_inv_.column(i); }
  const Vec3& w(std::size_t i) const { return w_[i]; }
  const std::string& label() const { return label_; }

  BasisEval evaluate(const Barycentric& b) const;

 private:
  EnrichedElement() = default;

  FunctionalTriple functionals_{};
  Matrix3 n_{};
  Matrix3 n_inv_{};
  Matrix3 edge_moments_{};
  double det_ = 0.0;
  std::array<Vec3, 3> w_{};
  std::string label_;
};

/// Closed-form constants of the midsegment family GN_gamma.
struct GnConstants {
  double gamma;
  double sigma;
  double K;      // -(5 gamma + 6) / (8 (2 gamma + 3))
  double c;      // rho_i coefficient of phi_i
  double d;      // rho_i coefficient of phi_k, k != i
  double Delta;  // gamma (7 gamma + 9) / (8 (2 gamma + 3)^2)
  double det;    // -gamma^2 (7 gamma + 9) sigma^3 / (256 (2 gamma + 3)^3)
  Matrix3 N;
  Matrix3 N_inv;
  double f_edge_same;   // F_j(varphi_j)
  double f_edge_other;  // F_j(varphi_i), i != j
};

/// Throws DomainError for gamma <= -1 or |gamma| < 1e-6 (singular at 0).
GnConstants gn_constants(double gamma);

/// Closed-form constants of the median family PN_mu.
struct PnConstants {
  double mu;
  double sigma;
  double D;
  double H;
  double r;
  double q;
  double Omega;
  double det;  // -(mu + 2)^2 (7 mu + 10) sigma^3 / (256 (2 mu + 3)^3)
  Matrix3 N;
  Matrix3 N_inv;
  double g_edge_same;   // G_j(varphi_j)
  double g_edge_other;  // G_j(varphi_i), i != j
};

/// Throws DomainError for mu <= -1.
PnConstants pn_constants(double mu);

/// Closed-form GN_gamma basis.
class GnBasis {
 public:
  explicit GnBasis(double gamma);
  const GnConstants& constants() const { return k_; }
  BasisEval evaluate(const Barycentric& b) const;

 private:
  GnConstants k_;
  double tau_scale_;
};

/// Closed-form PN_mu basis.
class PnBasis {
 public:
  explicit PnBasis(double mu);
  const PnConstants& constants() const { return k_; }
  BasisEval evaluate(const Barycentric& b) const;

 private:
  PnConstants k_;
  double tau_scale_;
};

inline BasisEval gn_basis(double gamma, const Barycentric& b) { return GnBasis(gamma).evaluate(b); }
inline BasisEval pn_basis(double mu, const Barycentric& b) { return PnBasis(mu).evaluate(b); }

}  // namespace crenrich
