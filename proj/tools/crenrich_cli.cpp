// crenrich: convergence studies and diagnostics for enriched Crouzeix-Raviart elements.
//
//   crenrich converge --functions f1,f2 --elements cr,gn:2,pn:2 --mesh structured:4,8,16,32 \
//                     --out report.csv --plot plot.gp
//   crenrich check
//   crenrich info --element gn:2
//
// Exit codes: 0 success, 1 validation error, 2 runtime failure.

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crenrich/approximation.hpp"
#include "crenrich/errors.hpp"
#include "crenrich/harness.hpp"
#include "crenrich/self_check.hpp"

namespace {

using namespace crenrich;

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct ConvergeArgs {
  std::string config_path;
  std::string functions;
  std::string elements;
  std::string custom;
  std::string mesh;
  int quad_degree = kDefaultTriangleDegree;
  bool subdivide = false;
  int segment_points = kDefaultSegmentPoints;
  unsigned threads = 0;
  std::string out;
  std::string plot;
};

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

RunConfig build_config(const CLI::App& cmd, const ConvergeArgs& args) {
  RunConfig config = args.config_path.empty() ? RunConfig{} : load_config_file(args.config_path);
  if (cmd.count("--functions")) config.functions = split_commas(args.functions);
  if (cmd.count("--elements")) config.elements = split_commas(args.elements);
  if (cmd.count("--custom")) config.custom = args.custom;
  if (cmd.count("--mesh")) config.mesh = MeshSource::parse(args.mesh);
  if (cmd.count("--quad-degree")) config.quad_degree = args.quad_degree;
  if (cmd.count("--subdivide")) config.subdivide = args.subdivide;
  if (cmd.count("--segment-points")) config.segment_points = args.segment_points;
  if (cmd.count("--threads")) config.threads = args.threads;
  if (cmd.count("--out")) config.out_csv = args.out;
  if (cmd.count("--plot")) config.plot_script = args.plot;
  config.validate();
  return config;
}

void print_report(const ConvergenceReport& report, const RunConfig& config) {
  std::cout << "# L1 errors are unnormalized integrals of |f - Pi f| over the mesh\n"
            << "# domain [0,1]^2 for structured meshes; quad-degree " << report.quad_degree
            << (report.subdivide ? " (4-way subdivided)" : "") << "; " << report.segment_points
            << "-point segment rules\n"
            << "# mesh " << config.mesh.describe() << "; config " << report.config_hash << "; "
            << report.timestamp << "\n";
  std::cout << std::left << std::setw(6) << "func" << std::setw(12) << "element" << std::right << std::setw(10)
            << "triangles" << std::setw(14) << "h_max" << std::setw(16) << "L1 error" << std::setw(10) << "order"
            << "\n";
  for (const auto& r : report.rows) {
    std::cout << std::left << std::setw(6) << r.function << std::setw(12) << r.element << std::right
              << std::setw(10) << r.n_triangles << std::setw(14) << std::setprecision(6) << r.h_max;
    if (r.l1_error) {
      std::cout << std::setw(16) << std::scientific << std::setprecision(6) << *r.l1_error << std::defaultfloat;
    } else {
      std::cout << std::setw(16) << "-";
    }
    if (r.order) {
      std::cout << std::setw(10) << std::fixed << std::setprecision(3) << *r.order << std::defaultfloat;
    }
    std::cout << "\n";
    if (!r.failure.empty()) std::cerr << "row failed (" << r.function << ", " << r.element << "): " << r.failure << "\n";
  }
  std::cout << "# least-squares orders\n";
  for (const auto& fn : report.functions()) {
    for (const auto& el : report.elements()) {
      if (auto p = report.least_squares_order(fn, el)) {
        std::cout << "#   " << fn << " " << el << ": " << std::fixed << std::setprecision(3) << *p
                  << std::defaultfloat << "\n";
      }
    }
  }
}

int run_converge(const CLI::App& cmd, const ConvergeArgs& args) {
  RunConfig config;
  try {
    config = build_config(cmd, args);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const UnsupportedDegree& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  const ConvergenceReport report = run_convergence(config);
  print_report(report, config);
  if (!config.out_csv.empty()) {
    emit_csv(report, config.out_csv);
    std::cout << "# wrote " << config.out_csv << "\n";
  }
  if (!config.plot_script.empty()) {
    emit_plot_script(report, config.out_csv.empty() ? "report.csv" : config.out_csv, config.plot_script);
    std::cout << "# wrote " << config.plot_script << "\n";
  }
  return 0;
}

int run_check() {
  const auto results = run_self_checks();
  bool ok = true;
  for (const auto& r : results) {
    std::printf("[%s] %-50s %8.3fs  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds, r.detail.c_str());
    ok = ok && r.passed;
  }
  std::printf("%s\n", ok ? "all checks passed" : "some checks FAILED");
  return ok ? 0 : kExitRuntime;
}

void print_matrix(const char* name, const Matrix3& m) {
  std::printf("%s =\n", name);
  for (std::size_t r = 0; r < 3; ++r) {
    std::printf("  [% .17g, % .17g, % .17g]\n", m(r, 0), m(r, 1), m(r, 2));
  }
}

int run_info(const std::string& element_text, const std::string& custom) {
  ElementSpec spec;
  try {
    spec = ElementSpec::parse(element_text, custom);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  std::printf("element %s\n", spec.label().c_str());
  if (spec.kind == ElementKind::CR) {
    std::printf("dofs: I1 I2 I3 (edge means); basis 1 - 2 l_i; no enrichment matrix\n");
    return 0;
  }
  FunctionalTriple triple{};
  switch (spec.kind) {
    case ElementKind::AF3: triple = af3_functionals(); break;
    case ElementKind::GN: triple = gn_functionals(spec.parameter); break;
    case ElementKind::PN: triple = pn_functionals(spec.parameter); break;
    case ElementKind::Custom: triple = *spec.custom; break;
    case ElementKind::CR: break;
  }
  std::printf("dofs: I1 I2 I3");
  for (const auto& f : triple) std::printf(" %s", f.describe().c_str());
  std::printf("\n");

  const FunctionalRules rules = FunctionalRules::for_functionals({triple.begin(), triple.end()});
  const Matrix3 n = build_N(triple, Triangle::reference(), rules);
  const Admissibility adm = admissibility(n);
  print_matrix("N (quadrature)", n);
  std::printf("det N = %.17g  -> %s\n", adm.det, adm.admissible ? "admissible" : "NOT admissible");
  if (!adm.admissible) return kExitRuntime;

  const EnrichedElement generic = EnrichedElement::build(triple, Triangle::reference(), rules);
  print_matrix("N^-1 (quadrature)", generic.N_inv());
  for (std::size_t i = 0; i < 3; ++i) {
    std::printf("w_%zu = [% .17g, % .17g, % .17g]\n", i + 1, generic.w(i)[0], generic.w(i)[1], generic.w(i)[2]);
  }

  if (spec.kind == ElementKind::GN) {
    try {
      const GnConstants k = gn_constants(spec.parameter);
      std::printf("closed form: sigma = %.17g  K = %.17g\n", k.sigma, k.K);
      std::printf("             c = %.17g  d = %.17g  Delta = %.17g\n", k.c, k.d, k.Delta);
      std::printf("             det N = %.17g\n", k.det);
      print_matrix("N^-1 (closed form)", k.N_inv);
    } catch (const DomainError& e) {
      std::printf("closed form unavailable: %s\n", e.what());
    }
  } else if (spec.kind == ElementKind::PN) {
    const PnConstants k = pn_constants(spec.parameter);
    std::printf("closed form: sigma = %.17g  D = %.17g  H = %.17g\n", k.sigma, k.D, k.H);
    std::printf("             r = %.17g  q = %.17g  Omega = %.17g\n", k.r, k.q, k.Omega);
    std::printf("             det N = %.17g\n", k.det);
    print_matrix("N^-1 (closed form)", k.N_inv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enriched Crouzeix-Raviart elements: convergence studies and diagnostics"};
  app.require_subcommand(1);

  ConvergeArgs args;
  auto* converge = app.add_subcommand("converge", "L1 convergence study over a mesh sequence");
  converge->add_option("--config", args.config_path, "key = value file mirroring these flags");
  converge->add_option("--functions", args.functions, "comma list of f1..f4");
  converge->add_option("--elements", args.elements, "comma list of cr, af3, gn:<gamma>, pn:<mu>, custom");
  converge->add_option("--custom", args.custom, "functional triple for 'custom', e.g. \"midsegment:1/median:2/vertex\"");
  converge->add_option("--mesh", args.mesh, "structured:<n,...> or files:<base,...>");
  converge->add_option("--quad-degree", args.quad_degree, "triangle rule degree (2, 5, 8, 10)");
  converge->add_flag("--subdivide", args.subdivide, "split each triangle in 4 for error integration");
  converge->add_option("--segment-points", args.segment_points, "Gauss points per functional (1..64)");
  converge->add_option("--threads", args.threads, "worker threads (0 = all cores)");
  converge->add_option("--out", args.out, "CSV report path");
  converge->add_option("--plot", args.plot, "gnuplot script path");

  app.add_subcommand("check", "run the invariant suite and print pass/fail");

  std::string info_element = "gn:2";
  std::string info_custom;
  auto* info = app.add_subcommand("info", "print N, its inverse, the determinant and closed-form constants");
  info->add_option("--element", info_element, "element selection")->capture_default_str();
  info->add_option("--custom", info_custom, "functional triple for 'custom'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*converge) return run_converge(*converge, args);
    if (app.got_subcommand("check")) return run_check();
    if (*info) return run_info(info_element, info_custom);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
