#include <cmath>
#include <string>

#include "crenrich/errors.hpp"
#include "crenrich/quadrature.hpp"

namespace crenrich {

namespace {

// Dunavant symmetric rules. Weights are normalized to sum 1 over the triangle.

void add_centroid(TriangleRule& rule, double w) {
  rule.nodes.push_back(Barycentric::barycenter());
  rule.weights.push_back(w);
}

// Orbit of (a, a, 1-2a).
void add_orbit3(TriangleRule& rule, double a, double w) {
  const double c = 1.0 - 2.0 * a;
  rule.nodes.push_back({{c, a, a}});
  rule.nodes.push_back({{a, c, a}});
  rule.nodes.push_back({{a, a, c}});
  rule.weights.insert(rule.weights.end(), 3, w);
}

// Orbit of (a, b, 1-a-b) under all permutations.
void add_orbit6(TriangleRule& rule, double a, double b, double w) {
  const double c = 1.0 - a - b;
  rule.nodes.push_back({{a, b, c}});
  rule.nodes.push_back({{a, c, b}});
  rule.nodes.push_back({{b, a, c}});
  rule.nodes.push_back({{b, c, a}});
  rule.nodes.push_back({{c, a, b}});
  rule.nodes.push_back({{c, b, a}});
  rule.weights.insert(rule.weights.end(), 6, w);
}

TriangleRule degree2() {
  TriangleRule r;
  r.degree = 2;
  add_orbit3(r, 1.0 / 6.0, 1.0 / 3.0);
  return r;
}

TriangleRule degree5() {
  TriangleRule r;
  r.degree = 5;
  const double s15 = std::sqrt(15.0);
  add_centroid(r, 9.0 / 40.0);
  add_orbit3(r, (6.0 - s15) / 21.0, (155.0 - s15) / 1200.0);
  add_orbit3(r, (6.0 + s15) / 21.0, (155.0 + s15) / 1200.0);
  return r;
}

TriangleRule degree8() {
  TriangleRule r;
  r.degree = 8;
  add_centroid(r, 0.14431560767778716825109111048906);
  add_orbit3(r, 0.17056930775176020662229350149146, 0.10321737053471825028179155029212);
  add_orbit3(r, 0.05054722831703097545842355059660, 0.03245849762319808031092592834178);
  add_orbit3(r, 0.45929258829272315602881551449417, 0.09509163426728462479389610438858);
  add_orbit6(r, 0.26311282963463811342178578628464, 0.72849239295540428124100037917606,
             0.02723031417443499426484469007390);
  return r;
}

TriangleRule degree10() {
  TriangleRule r;
  r.degree = 10;
  add_centroid(r, 0.090817990382754);
  add_orbit3(r, 0.485577633383657, 0.036725957756467);
  add_orbit3(r, 0.109481575485037, 0.045321059435528);
  add_orbit6(r, 0.141707219414880, 0.307939838764121, 0.072757916845420);
  add_orbit6(r, 0.025003534762686, 0.246672560639903, 0.028327242531057);
  add_orbit6(r, 0.009540815400299, 0.066803251012200, 0.009421666963733);
  return r;
}

}  // namespace

TriangleRule triangle_rule(int degree) {
  switch (degree) {
    case 2: return degree2();
    case 5: return degree5();
    case 8: return degree8();
    case 10: return degree10();
    default:
      throw UnsupportedDegree("no triangle rule of degree " + std::to_string(degree) +
                              " (supported: 2, 5, 8, 10)");
  }
}

}  // namespace crenrich
