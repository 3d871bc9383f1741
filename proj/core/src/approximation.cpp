#include "crenrich/approximation.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "crenrich/errors.hpp"
#include "crenrich/parallel.hpp"

namespace crenrich {

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct Contribution {
  double l1 = 0.0;
  double linf = 0.0;
};

Contribution triangle_error(const PiecewiseField& field, std::size_t k, const ScalarField& f,
                            const TriangleRule& rule, bool subdivide) {
  const Triangle& t = field.mesh().triangle(k);
  Contribution c;
  auto accumulate = [&](const std::array<Barycentric, 3>& corners, double area) {
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Barycentric& local = rule.nodes[q];
      Barycentric b;
      for (std::size_t i = 0; i < 3; ++i) {
        b[i] = local[0] * corners[0][i] + local[1] * corners[1][i] + local[2] * corners[2][i];
      }
      const double diff = std::abs(f(t.point(b)) - field.evaluate(k, b));
      acc += rule.weights[q] * diff;
      c.linf = std::max(c.linf, diff);
    }
    c.l1 += area * acc;
  };
  const std::array<Barycentric, 3> vertices = {Barycentric::vertex(0), Barycentric::vertex(1),
                                               Barycentric::vertex(2)};
  if (!subdivide) {
    accumulate(vertices, t.area());
    return c;
  }
  const Barycentric m0 = Barycentric::midpoint(0), m1 = Barycentric::midpoint(1),
                    m2 = Barycentric::midpoint(2);
  const double quarter = 0.25 * t.area();
  accumulate({vertices[0], m2, m1}, quarter);
  accumulate({m2, vertices[1], m0}, quarter);
  accumulate({m1, m0, vertices[2]}, quarter);
  accumulate({m0, m1, m2}, quarter);
  return c;
}

}  // namespace

PiecewiseField::PiecewiseField(std::shared_ptr<const Mesh> mesh, Element element,
                               std::vector<LocalApproximant> locals)
    : mesh_(std::move(mesh)), element_(std::move(element)), locals_(std::move(locals)) {
  if (!mesh_ || locals_.size() != mesh_->size()) {
    throw DomainError("piecewise field needs exactly one approximant per triangle");
  }
}

double PiecewiseField::evaluate(Point2 p) const {
  const LocateResult hit = mesh_->locate(p);
  return evaluate(hit.triangle, hit.coords);
}

std::string PiecewiseField::serialize() const {
  std::string out = "# element " + element_.label() + " triangles " + std::to_string(locals_.size()) +
                    " dofs " + std::to_string(element_.dof_count()) + "\n";
  for (std::size_t k = 0; k < locals_.size(); ++k) {
    out += std::to_string(k);
    for (std::size_t d = 0; d < locals_[k].count; ++d) out += " " + format_double(locals_[k].dofs[d]);
    out += "\n";
  }
  return out;
}

PiecewiseField global_interpolate(std::shared_ptr<const Mesh> mesh, const ScalarField& f,
                                  const Element& element, unsigned threads) {
  if (!mesh) throw DomainError("global_interpolate: null mesh");
  std::vector<LocalApproximant> locals(mesh->size());
  parallel_for(mesh->size(), threads, [&](std::size_t k) {
    try {
      locals[k] = local_interpolate(f, mesh->triangle(k), element);
    } catch (const std::exception& e) {
      throw TriangleError(k, e.what());
    }
  });
  return PiecewiseField(std::move(mesh), element, std::move(locals));
}

ErrorReport l1_error(const PiecewiseField& field, const ScalarField& f, const TriangleRule& rule,
                     bool subdivide, unsigned threads) {
  const Mesh& mesh = field.mesh();
  std::vector<Contribution> parts(mesh.size());
  parallel_for(mesh.size(), threads,
               [&](std::size_t k) { parts[k] = triangle_error(field, k, f, rule, subdivide); });
  ErrorReport report;
  for (const auto& p : parts) {
    report.l1 += p.l1;
    report.linf_sampled = std::max(report.linf_sampled, p.linf);
  }
  report.n_triangles = mesh.size();
  report.h_max = mesh.h_max();
  report.quadrature_degree = rule.degree;
  report.subdivided = subdivide;
  return report;
}

ConvergenceSlopes convergence_order(std::span<const double> errors, std::span<const double> h) {
  if (errors.size() != h.size() || errors.size() < 2) {
    throw DomainError("convergence_order needs at least two levels with matching sizes");
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0)) throw DomainError("error level " + std::to_string(i) + " is exact (zero)");
    if (!(h[i] > 0.0)) throw DomainError("mesh size must be positive");
    if (i > 0 && !(h[i] < h[i - 1])) throw DomainError("mesh sizes must be strictly decreasing");
  }
  ConvergenceSlopes out;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    out.pairwise.push_back(std::log(errors[i] / errors[i + 1]) / std::log(h[i] / h[i + 1]));
  }
  const double n = static_cast<double>(errors.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const double x = std::log(h[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.least_squares = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

}  // namespace crenrich
