#include "crenrich/self_check.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "crenrich/approximation.hpp"
#include "crenrich/elements.hpp"
#include "crenrich/harness.hpp"

namespace crenrich {

namespace {

using Rng = std::mt19937_64;

Triangle random_triangle(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  while (true) {
    const Point2 a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    const double twice = std::abs(orient2d(a, b, c));
    const double d = std::max({distance(a, b), distance(b, c), distance(c, a)});
    if (twice > 0.2 * d * d) return Triangle::make(a, b, c);
  }
}

Barycentric random_barycentric(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double s = u(rng), t = u(rng);
  if (s + t > 1.0) {
    s = 1.0 - s;
    t = 1.0 - t;
  }
  return {{1.0 - s - t, s, t}};
}

/// Tracks the worst value/bound ratio over many measurements.
struct Tally {
  double ratio = 0.0;
  std::string note = "no measurements";

  void add(double value, double bound, const char* what) {
    const double r = std::isnan(value) ? INFINITY : value / bound;
    if (r > ratio || note == "no measurements") {
      ratio = std::max(r, ratio);
      std::ostringstream ss;
      ss << what << ": " << value << " (bound " << bound << ")";
      note = ss.str();
    }
  }
  void require(bool ok, const char* what) { add(ok ? 0.0 : 2.0, 1.0, what); }
};

CheckResult timed(const std::string& name, const std::function<Tally()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  r.name = name;
  try {
    const Tally tally = body();
    r.passed = tally.ratio <= 1.0;
    r.detail = tally.note;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Worst |DOF_j(basis_i) - delta_ij| over the element's DOFs on triangle t.
double duality_defect(const Element& element, const Triangle& t) {
  double worst = 0.0;
  const std::size_t n = element.dof_count();
  for (std::size_t i = 0; i < n; ++i) {
    auto basis_i = [&](Point2 p) { return element.basis(t.barycentric(p))[i]; };
    for (std::size_t j = 0; j < n; ++j) {
      const double v = apply_functional(element.functionals()[j], basis_i, t, element.rules());
      worst = std::max(worst, std::abs(v - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double matrix_gap(const Matrix3& a, const Matrix3& b) {
  double worst = 0.0;
  const double scale = b.max_abs();
  for (std::size_t k = 0; k < 9; ++k) worst = std::max(worst, std::abs(a.a[k] - b.a[k]) / scale);
  return worst;
}

}  // namespace

std::vector<CheckResult> run_self_checks(std::uint64_t seed) {
  std::vector<CheckResult> results;
  Rng rng(seed);

  results.push_back(timed("barycentric partition and reconstruction", [&] {
    Tally tally;
    for (int k = 0; k < 1000; ++k) {
      const Triangle t = random_triangle(rng);
      const Point2 p = t.point(random_barycentric(rng));
      const Barycentric b = t.barycentric(p);
      tally.add(std::abs(b.sum() - 1.0), 1e-12, "|sum l - 1|");
      tally.add(distance(p, t.point(b)), 1e-10 * t.diameter(), "|p - sum l_i v_i|");
    }
    return tally;
  }));

  results.push_back(timed("beta symmetry and recurrence", [&] {
    std::uniform_real_distribution<double> u(0.05, 20.0);
    Tally tally;
    for (int k = 0; k < 100; ++k) {
      const double a = u(rng), b = u(rng);
      tally.add(relative_gap(beta(a, b), beta(b, a)), 1e-13, "B(a,b) vs B(b,a)");
      tally.add(relative_gap(beta(a + 1.0, b), a / (a + b) * beta(a, b)), 1e-12, "B(a+1,b) recurrence");
    }
    return tally;
  }));

  results.push_back(timed("Gauss-Jacobi moments", [&] {
    Tally tally;
    for (double g : {-0.5, 0.0, 0.5, 1.0, 2.0, 5.0}) {
      const SegmentRule rule = gauss_jacobi_01(g, kDefaultSegmentPoints);
      for (int k = 0; k <= 2 * kDefaultSegmentPoints - 1; ++k) {
        const double q = rule.integrate([&](double t) { return std::pow(t, k); });
        tally.add(std::abs(q - beta(g + 1.0 + k, g + 1.0)), 1e-12, "int w t^k - B(g+1+k, g+1)");
      }
    }
    return tally;
  }));

  const std::vector<std::string> enriched = {"af3",  "gn:0.5", "gn:1", "gn:2", "gn:5",
                                             "pn:0", "pn:0.5", "pn:2", "pn:5", "pn:-0.5"};

  results.push_back(timed("duality on random triangles", [&] {
    Tally tally;
    std::vector<Element> elements;
    elements.push_back(Element::make(ElementSpec::parse("cr")));
    for (const auto& s : enriched) elements.push_back(Element::make(ElementSpec::parse(s)));
    for (int k = 0; k < 20; ++k) {
      const Triangle t = random_triangle(rng);
      for (const auto& e : elements) tally.add(duality_defect(e, t), 1e-9, "|DOF_j(basis_i) - delta_ij|");
    }
    return tally;
  }));

  results.push_back(timed("closed forms against generic construction", [&] {
    Tally tally;
    const Triangle ref = Triangle::reference();
    auto compare = [&](const EnrichedElement& generic, const Matrix3& n, const Matrix3& n_inv, double det,
                       const auto& closed) {
      tally.add(matrix_gap(generic.N(), n), 1e-12, "N (relative)");
      tally.add(matrix_gap(generic.N_inv(), n_inv), 1e-12, "N^-1 (relative)");
      tally.add(relative_gap(generic.det(), det), 1e-12, "det N (relative)");
      for (int k = 0; k < 100; ++k) {
        const Barycentric b = random_barycentric(rng);
        const BasisEval x = generic.evaluate(b), y = closed.evaluate(b);
        for (std::size_t i = 0; i < 3; ++i) {
          tally.add(std::abs(x.rho[i] - y.rho[i]), 1e-10 * std::max(1.0, std::abs(y.rho[i])), "rho_i");
          tally.add(std::abs(x.tau[i] - y.tau[i]), 1e-10 * std::max(1.0, std::abs(y.tau[i])), "tau_i");
        }
      }
    };
    for (double g : {0.5, 1.0, 2.0, 5.0}) {
      const auto generic = EnrichedElement::build(gn_functionals(g), ref, FunctionalRules({g}));
      const GnBasis closed(g);
      compare(generic, closed.constants().N, closed.constants().N_inv, closed.constants().det, closed);
    }
    for (double m : {0.0, 0.5, 2.0, 5.0}) {
      const auto generic = EnrichedElement::build(pn_functionals(m), ref, FunctionalRules({m}));
      const PnBasis closed(m);
      compare(generic, closed.constants().N, closed.constants().N_inv, closed.constants().det, closed);
    }
    return tally;
  }));

  results.push_back(timed("midsegment family singular at gamma = 0", [&] {
    Tally tally;
    const Matrix3 n = build_N(gn_functionals(0.0), Triangle::reference(), FunctionalRules({0.0}));
    const Admissibility adm = admissibility(n);
    tally.add(std::abs(adm.det), 1e-14 * std::pow(n.max_abs(), 3), "|det N| at gamma = 0");
    tally.require(!adm.admissible, "gamma = 0 rejected");
    return tally;
  }));

  results.push_back(timed("median family admissible for mu > -1", [&] {
    Tally tally;
    for (double m : {-0.9, -0.5, 0.0, 1.0, 10.0}) {
      const Matrix3 n = build_N(pn_functionals(m), Triangle::reference(), FunctionalRules({m}));
      tally.require(admissibility(n).admissible, "median functionals admissible");
    }
    return tally;
  }));

  results.push_back(timed("AF3 partition of unity", [&] {
    Tally tally;
    for (int k = 0; k < 1000; ++k) {
      const Barycentric b = random_barycentric(rng);
      const Vec3 p = af3_vertex_functions(b), e = af3_edge_functions(b);
      tally.add(std::abs(p[0] + p[1] + p[2] + e[0] + e[1] + e[2] - 1.0), 1e-12, "sum of AF3 basis - 1");
    }
    return tally;
  }));

  results.push_back(timed("P2 reproduction", [&] {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Tally tally;
    std::vector<Element> elements;
    for (const auto& s : enriched) elements.push_back(Element::make(ElementSpec::parse(s)));
    for (int k = 0; k < 50; ++k) {
      const Triangle t = random_triangle(rng);
      const std::array<double, 6> a = {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
      auto quad = [&](Point2 p) {
        return a[0] + a[1] * p.x + a[2] * p.y + a[3] * p.x * p.x + a[4] * p.x * p.y + a[5] * p.y * p.y;
      };
      for (const auto& e : elements) {
        const LocalApproximant approx = local_interpolate(quad, t, e);
        for (int s = 0; s < 20; ++s) {
          const Barycentric b = random_barycentric(rng);
          tally.add(std::abs(evaluate(approx, e, b) - quad(t.point(b))), 1e-9, "|Pi p - p|");
        }
      }
    }
    return tally;
  }));

  results.push_back(timed("N relates vertex values to enriched functionals", [&] {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Tally tally;
    for (const auto& triple : {gn_functionals(2.0), pn_functionals(2.0), gn_functionals(0.5), pn_functionals(5.0)}) {
      const FunctionalRules rules = FunctionalRules::for_functionals({triple.begin(), triple.end()});
      for (int k = 0; k < 10; ++k) {
        const Triangle t = random_triangle(rng);
        const Matrix3 n = build_N(triple, t, rules);
        const Vec3 a = {u(rng), u(rng), u(rng)};
        auto p = [&](Point2 x) {
          const Vec3 phi = af3_vertex_functions(t.barycentric(x));
          return a[0] * phi[0] + a[1] * phi[1] + a[2] * phi[2];
        };
        const Vec3 lhs = n * Vec3{p(t.vertex(0)), p(t.vertex(1)), p(t.vertex(2))};
        const double norm = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
        for (std::size_t j = 0; j < 3; ++j) {
          tally.add(std::abs(lhs[j] - apply_functional(triple[j], p, t, rules)), 1e-10 * norm,
                    "N L(p) - F(p)");
        }
      }
    }
    return tally;
  }));

  results.push_back(timed("structured mesh areas", [&] {
    Tally tally;
    for (std::size_t n : {1u, 2u, 7u, 16u, 64u}) {
      tally.add(std::abs(structured_mesh(n).total_area() - 1.0), 1e-13, "total area - 1");
    }
    return tally;
  }));

  results.push_back(timed("L1 error decreases under refinement", [&] {
    Tally tally;
    const TriangleRule rule = triangle_rule(kDefaultTriangleDegree);
    for (const char* spec : {"cr", "gn:2", "pn:2"}) {
      const Element e = Element::make(ElementSpec::parse(spec));
      for (const auto& name : builtin_function_names()) {
        const TestFunction fn = test_function(name);
        double prev = INFINITY;
        for (std::size_t n : {4u, 8u, 16u}) {
          auto mesh = std::make_shared<const Mesh>(structured_mesh(n));
          const double err = l1_error(global_interpolate(mesh, fn.eval, e, 1), fn.eval, rule).l1;
          tally.require(err < prev, "L1 error strictly decreasing");
          prev = err;
        }
      }
    }
    return tally;
  }));

  return results;
}

}  // namespace crenrich
