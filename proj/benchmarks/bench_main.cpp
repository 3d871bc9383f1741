#include <benchmark/benchmark.h>

#include <cstdint>
#include <memory>

#include "crenrich/approximation.hpp"
#include "crenrich/harness.hpp"

using namespace crenrich;

static void BM_GaussJacobi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_jacobi_01(2.0, n));
}
BENCHMARK(BM_GaussJacobi)->Arg(8)->Arg(20)->Arg(64);

static void BM_GaussLegendre(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_legendre_01(n));
}
BENCHMARK(BM_GaussLegendre)->Arg(8)->Arg(20)->Arg(64);

static void BM_BasisEvaluate(benchmark::State& state, const char* name) {
  const Element element = Element::make(ElementSpec::parse(name));
  const Barycentric b{{0.2, 0.3, 0.5}};
  for (auto _ : state) benchmark::DoNotOptimize(element.basis(b));
}
BENCHMARK_CAPTURE(BM_BasisEvaluate, cr, "cr");
BENCHMARK_CAPTURE(BM_BasisEvaluate, gn2, "gn:2");
BENCHMARK_CAPTURE(BM_BasisEvaluate, pn2, "pn:2");
BENCHMARK_CAPTURE(BM_BasisEvaluate, af3, "af3");

static void BM_ElementBuild(benchmark::State& state, const char* name) {
  const ElementSpec spec = ElementSpec::parse(name, "midsegment:1 / median:2 / vertex");
  for (auto _ : state) benchmark::DoNotOptimize(Element::make(spec));
}
BENCHMARK_CAPTURE(BM_ElementBuild, gn2, "gn:2");
BENCHMARK_CAPTURE(BM_ElementBuild, custom, "custom");

static void BM_InterpolateAndError(benchmark::State& state, const char* name) {
  auto mesh = std::make_shared<const Mesh>(structured_mesh(static_cast<std::size_t>(state.range(0))));
  const Element element = Element::make(ElementSpec::parse(name));
  const TestFunction f = test_function("f1");
  const TriangleRule rule = triangle_rule(8);
  for (auto _ : state) {
    const PiecewiseField field = global_interpolate(mesh, f.eval, element, 1);
    benchmark::DoNotOptimize(l1_error(field, f.eval, rule, false, 1).l1);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(mesh->size()));
}
BENCHMARK_CAPTURE(BM_InterpolateAndError, cr, "cr")->Arg(32);
BENCHMARK_CAPTURE(BM_InterpolateAndError, gn2, "gn:2")->Arg(32);
BENCHMARK_CAPTURE(BM_InterpolateAndError, pn2, "pn:2")->Arg(32);

static void BM_Locate(benchmark::State& state) {
  const Mesh mesh = structured_mesh(static_cast<std::size_t>(state.range(0)));
  double x = 0.0;
  for (auto _ : state) {
    x += 0.6180339887498949;
    if (x >= 1.0) x -= 1.0;
    benchmark::DoNotOptimize(mesh.locate({x, 1.0 - 0.5 * x}));
  }
}
BENCHMARK(BM_Locate)->Arg(16)->Arg(80);

BENCHMARK_MAIN();
