#include "crenrich/elements.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace crenrich {

namespace {

void check_index(std::size_t j) {
  if (j > 2) throw DomainError("local index must be 0, 1 or 2, got " + std::to_string(j));
}

void check_exponent(double gamma) {
  if (!(gamma > -1.0) || !std::isfinite(gamma)) {
    throw DomainError("weight exponent must be finite and exceed -1, got " + std::to_string(gamma));
  }
}

std::string format_parameter(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

// --- DofFunctional ----------------------------------------------------------

DofFunctional DofFunctional::edge_mean(std::size_t j) {
  check_index(j);
  return {FunctionalKind::EdgeMean, j, 0.0};
}

DofFunctional DofFunctional::vertex_eval(std::size_t j) {
  check_index(j);
  return {FunctionalKind::VertexEval, j, 0.0};
}

DofFunctional DofFunctional::midsegment(std::size_t j, double gamma) {
  check_index(j);
  check_exponent(gamma);
  return {FunctionalKind::MidsegmentWeighted, j, gamma};
}

DofFunctional DofFunctional::median(std::size_t j, double mu) {
  check_index(j);
  check_exponent(mu);
  return {FunctionalKind::MedianWeighted, j, mu};
}

std::optional<double> DofFunctional::weight_exponent() const {
  if (kind == FunctionalKind::MidsegmentWeighted || kind == FunctionalKind::MedianWeighted) {
    return parameter;
  }
  return std::nullopt;
}

Barycentric DofFunctional::segment_start() const {
  switch (kind) {
    case FunctionalKind::EdgeMean: return Barycentric::vertex(next(index));
    case FunctionalKind::MidsegmentWeighted: return Barycentric::midpoint(next(index));
    case FunctionalKind::MedianWeighted: return Barycentric::midpoint(index);
    case FunctionalKind::VertexEval: break;
  }
  return Barycentric::vertex(index);
}

Barycentric DofFunctional::segment_end() const {
  switch (kind) {
    case FunctionalKind::EdgeMean: return Barycentric::vertex(next(index, 2));
    case FunctionalKind::MidsegmentWeighted: return Barycentric::midpoint(next(index, 2));
    case FunctionalKind::MedianWeighted: return Barycentric::barycenter();
    case FunctionalKind::VertexEval: break;
  }
  return Barycentric::vertex(index);
}

std::string DofFunctional::describe() const {
  const std::string j = std::to_string(index + 1);
  switch (kind) {
    case FunctionalKind::EdgeMean: return "I" + j;
    case FunctionalKind::VertexEval: return "L" + j;
    case FunctionalKind::MidsegmentWeighted: return "F" + j + "[gamma=" + format_parameter(parameter) + "]";
    case FunctionalKind::MedianWeighted: return "G" + j + "[mu=" + format_parameter(parameter) + "]";
  }
  return "?";
}

FunctionalTriple af3_functionals() {
  return {DofFunctional::vertex_eval(0), DofFunctional::vertex_eval(1), DofFunctional::vertex_eval(2)};
}

FunctionalTriple gn_functionals(double gamma) {
  return {DofFunctional::midsegment(0, gamma), DofFunctional::midsegment(1, gamma),
          DofFunctional::midsegment(2, gamma)};
}

FunctionalTriple pn_functionals(double mu) {
  return {DofFunctional::median(0, mu), DofFunctional::median(1, mu), DofFunctional::median(2, mu)};
}

FunctionalTriple parse_functional_triple(std::string_view text) {
  std::vector<std::string> items;
  std::string current;
  for (char ch : text) {
    if (ch == '/' || ch == ';' || ch == '|' || std::isspace(static_cast<unsigned char>(ch))) {
      if (!current.empty()) items.push_back(std::move(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  if (!current.empty()) items.push_back(std::move(current));
  if (items.size() != 3) {
    throw ConfigError("functional triple needs exactly 3 entries, got " + std::to_string(items.size()) +
                      " in '" + std::string(text) + "'");
  }
  FunctionalTriple triple{};
  for (std::size_t j = 0; j < 3; ++j) {
    const std::string& item = items[j];
    const auto colon = item.find(':');
    const std::string name = item.substr(0, colon);
    double value = 0.0;
    if (colon != std::string::npos) {
      const std::string num = item.substr(colon + 1);
      const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
      if (ec != std::errc{} || ptr != num.data() + num.size()) {
        throw ConfigError("bad parameter in functional '" + item + "'");
      }
    }
    try {
      if (name == "vertex" && colon == std::string::npos) {
        triple[j] = DofFunctional::vertex_eval(j);
      } else if (name == "midsegment" && colon != std::string::npos) {
        triple[j] = DofFunctional::midsegment(j, value);
      } else if (name == "median" && colon != std::string::npos) {
        triple[j] = DofFunctional::median(j, value);
      } else {
        throw ConfigError("unknown functional '" + item +
                          "' (expected vertex, midsegment:<gamma> or median:<mu>)");
      }
    } catch (const DomainError& e) {
      throw ConfigError("functional '" + item + "': " + e.what());
    }
  }
  return triple;
}

// --- FunctionalRules --------------------------------------------------------

FunctionalRules::FunctionalRules(std::vector<double> exponents, int points)
    : points_(points), plain_(gauss_legendre_01(points)) {
  std::sort(exponents.begin(), exponents.end());
  exponents.erase(std::unique(exponents.begin(), exponents.end()), exponents.end());
  weighted_.reserve(exponents.size());
  for (double g : exponents) weighted_.push_back(gauss_jacobi_01(g, points));
}

FunctionalRules FunctionalRules::for_functionals(const std::vector<DofFunctional>& functionals,
                                                 int points) {
  std::vector<double> exponents;
  for (const auto& f : functionals) {
    if (auto g = f.weight_exponent()) exponents.push_back(*g);
  }
  return FunctionalRules(std::move(exponents), points);
}

const SegmentRule& FunctionalRules::weighted(double gamma) const {
  for (const auto& r : weighted_) {
    if (*r.weight_exponent == gamma) return r;
  }
  throw DomainError("no Gauss-Jacobi rule prepared for exponent " + format_parameter(gamma));
}

const SegmentRule& FunctionalRules::rule_for(const DofFunctional& f) const {
  if (auto g = f.weight_exponent()) return weighted(*g);
  return plain_;
}

// --- Matrix3 ----------------------------------------------------------------

Matrix3 Matrix3::identity() { return symmetric_pattern(1.0, 0.0); }

Matrix3 Matrix3::symmetric_pattern(double diag, double off) {
  return {{diag, off, off, off, diag, off, off, off, diag}};
}

double Matrix3::det() const {
  const auto& m = a;
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

Matrix3 Matrix3::inverse() const {
  const double d = det();
  if (d == 0.0) throw DomainError("singular 3x3 matrix");
  const auto& m = a;
  Matrix3 adj{{
      m[4] * m[8] - m[5] * m[7], m[2] * m[7] - m[1] * m[8], m[1] * m[5] - m[2] * m[4],
      m[5] * m[6] - m[3] * m[8], m[0] * m[8] - m[2] * m[6], m[2] * m[3] - m[0] * m[5],
      m[3] * m[7] - m[4] * m[6], m[1] * m[6] - m[0] * m[7], m[0] * m[4] - m[1] * m[3],
  }};
  return (1.0 / d) * adj;
}

double Matrix3::max_abs() const {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

Vec3 operator*(const Matrix3& m, const Vec3& v) {
  return {m(0, 0) * v[0] + m(0, 1) * v[1] + m(0, 2) * v[2],
          m(1, 0) * v[0] + m(1, 1) * v[1] + m(1, 2) * v[2],
          m(2, 0) * v[0] + m(2, 1) * v[1] + m(2, 2) * v[2]};
}

Matrix3 operator*(const Matrix3& x, const Matrix3& y) {
  Matrix3 r;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j) + x(i, 2) * y(2, j);
    }
  }
  return r;
}

Matrix3 operator*(double s, Matrix3 m) {
  for (double& v : m.a) v *= s;
  return m;
}

Admissibility admissibility(const Matrix3& n) {
  const double d = n.det();
  const double scale = n.max_abs();
  return {d, std::abs(d) > 1e-12 * scale * scale * scale};
}

// --- N and the generic pipeline ---------------------------------------------

namespace {

template <class Shape>
Matrix3 functional_matrix(const FunctionalTriple& functionals, const Triangle& t,
                          const FunctionalRules& rules, Shape shape) {
  Matrix3 m;
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < 3; ++i) {
      m(j, i) = apply_functional(
          functionals[j], [&](Point2 p) { return shape(i, t.barycentric(p)); }, t, rules);
    }
  }
  return m;
}

}  // namespace

Matrix3 build_N(const FunctionalTriple& functionals, const Triangle& t, const FunctionalRules& rules) {
  return functional_matrix(functionals, t, rules,
                           [](std::size_t i, const Barycentric& b) { return af3_basis(i, b).vertex; });
}

Matrix3 build_edge_moments(const FunctionalTriple& functionals, const Triangle& t,
                           const FunctionalRules& rules) {
  return functional_matrix(functionals, t, rules,
                           [](std::size_t i, const Barycentric& b) { return af3_basis(i, b).edge; });
}

EnrichedElement EnrichedElement::build(const FunctionalTriple& functionals, const Triangle& t,
                                       const FunctionalRules& rules, std::string label) {
  EnrichedElement e;
  e.functionals_ = functionals;
  e.label_ = std::move(label);
  e.n_ = build_N(functionals, t, rules);
  const Admissibility adm = admissibility(e.n_);
  e.det_ = adm.det;
  if (!adm.admissible) {
    std::ostringstream msg;
    msg << "functionals";
    for (const auto& f : functionals) msg << ' ' << f.describe();
    msg << " are not admissible (det N = " << adm.det << ")";
    throw InadmissibleFunctionals(msg.str());
  }
  e.n_inv_ = e.n_.inverse();
  e.edge_moments_ = build_edge_moments(functionals, t, rules);
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec3 moments = e.edge_moments_.column(i);  // F_j(varphi_i), j = 0..2
    const Vec3 nw = e.n_inv_ * moments;
    e.w_[i] = {-nw[0], -nw[1], -nw[2]};
  }
  return e;
}

BasisEval EnrichedElement::evaluate(const Barycentric& b) const {
  const Vec3 phi = af3_vertex_functions(b);
  const Vec3 edge = af3_edge_functions(b);
  BasisEval out;
  for (std::size_t i = 0; i < 3; ++i) {
    out.rho[i] = w_[i][0] * phi[0] + w_[i][1] * phi[1] + w_[i][2] * phi[2] + edge[i];
    out.tau[i] = n_inv_(0, i) * phi[0] + n_inv_(1, i) * phi[1] + n_inv_(2, i) * phi[2];
  }
  return out;
}

// --- Closed forms -----------------------------------------------------------

GnConstants gn_constants(double gamma) {
  check_exponent(gamma);
  if (std::abs(gamma) < 1e-6) {
    throw DomainError("GN family is singular at gamma = 0 (got " + format_parameter(gamma) + ")");
  }
  const double g = gamma;
  const double s = sigma(g);
  const double den = 2.0 * g + 3.0;
  GnConstants k{};
  k.gamma = g;
  k.sigma = s;
  k.K = -(5.0 * g + 6.0) / (8.0 * den);
  k.c = 3.0 * (11.0 * g * g + 33.0 * g + 24.0) / (g * (7.0 * g + 9.0));
  k.d = -3.0 * (g + 3.0) * (3.0 * g + 4.0) / (g * (7.0 * g + 9.0));
  k.Delta = g * (7.0 * g + 9.0) / (8.0 * den * den);
  k.det = -g * g * (7.0 * g + 9.0) * s * s * s / (256.0 * den * den * den);
  k.N = s * Matrix3::symmetric_pattern(-0.25, k.K);
  k.N_inv = (1.0 / (s * k.Delta)) * Matrix3::symmetric_pattern(1.0 - 4.0 * k.K, 4.0 * k.K);
  k.f_edge_same = 3.0 * (g + 1.0) / (4.0 * den) * s;
  k.f_edge_other = 0.75 * s;
  return k;
}

PnConstants pn_constants(double mu) {
  check_exponent(mu);
  const double m = mu;
  const double s = sigma(m);
  const double den = 2.0 * m + 3.0;
  const double prod = (m + 2.0) * (7.0 * m + 10.0);
  PnConstants k{};
  k.mu = m;
  k.sigma = s;
  k.D = -(3.0 * m + 4.0) / (3.0 * den);
  k.H = -(15.0 * m + 22.0) / (12.0 * den);
  k.r = -(125.0 * m * m + 372.0 * m + 276.0) / (3.0 * prod);
  k.q = (85.0 * m * m + 264.0 * m + 204.0) / (3.0 * prod);
  k.Omega = -prod / (8.0 * den * den);
  k.det = -(m + 2.0) * (m + 2.0) * (7.0 * m + 10.0) * s * s * s / (256.0 * den * den * den);
  k.N = (0.5 * s) * Matrix3::symmetric_pattern(k.D, k.H);
  k.N_inv = (2.0 / (s * k.Omega)) * Matrix3::symmetric_pattern(k.D + k.H, -k.H);
  k.g_edge_same = (25.0 * m + 38.0) / (12.0 * den) * s;
  k.g_edge_other = (5.0 * m + 7.0) / (6.0 * den) * s;
  return k;
}

GnBasis::GnBasis(double gamma) : k_(gn_constants(gamma)), tau_scale_(1.0 / (k_.sigma * k_.Delta)) {}

BasisEval GnBasis::evaluate(const Barycentric& b) const {
  const Vec3 phi = af3_vertex_functions(b);
  const Vec3 edge = af3_edge_functions(b);
  const double total = phi[0] + phi[1] + phi[2];
  const double diag = 1.0 - 4.0 * k_.K, off = 4.0 * k_.K;
  BasisEval out;
  for (std::size_t i = 0; i < 3; ++i) {
    const double others = total - phi[i];
    out.rho[i] = k_.c * phi[i] + k_.d * others + edge[i];
    out.tau[i] = tau_scale_ * (diag * phi[i] + off * others);
  }
  return out;
}

PnBasis::PnBasis(double mu) : k_(pn_constants(mu)), tau_scale_(2.0 / (k_.sigma * k_.Omega)) {}

BasisEval PnBasis::evaluate(const Barycentric& b) const {
  const Vec3 phi = af3_vertex_functions(b);
  const Vec3 edge = af3_edge_functions(b);
  const double total = phi[0] + phi[1] + phi[2];
  BasisEval out;
  for (std::size_t i = 0; i < 3; ++i) {
    const double others = total - phi[i];
    out.rho[i] = k_.r * phi[i] + k_.q * others + edge[i];
    out.tau[i] = tau_scale_ * ((k_.D + k_.H) * phi[i] - k_.H * others);
  }
  return out;
}

}  // namespace crenrich
