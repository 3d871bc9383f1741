#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crenrich/approximation.hpp"

namespace crenrich {

/// Named scalar field on the unit square.
struct TestFunction {
  std::string name;
  ScalarField eval;
};

/// f1 = exp(x+y), f2 = 1/(x^2+y^2+8), f3 = cos(x+y+1),
/// f4 = sqrt(64 - 81((x-1/2)^2 + (y-1/2)^2))/9 - 1/2. Throws UnknownFunction.
TestFunction test_function(std::string_view name);
std::vector<std::string> builtin_function_names();

struct MeshSource {
  enum class Kind { Structured, Files };
  Kind kind = Kind::Structured;
  std::vector<std::size_t> levels = {4, 8, 16, 32};  // structured grid sizes n
  std::vector<std::string> files;                    // .node/.ele base paths

  /// "structured:4,8,16" or "files:a,b" (base names without extension).
  static MeshSource parse(std::string_view text);
  std::string describe() const;
  std::size_t count() const { return kind == Kind::Structured ? levels.size() : files.size(); }
};

struct RunConfig {
  std::vector<std::string> functions = {"f1", "f2", "f3", "f4"};
  std::vector<std::string> elements = {"cr", "gn:2", "pn:2"};
  std::string custom;  // functional triple used by the "custom" element
  MeshSource mesh;
  int quad_degree = kDefaultTriangleDegree;
  bool subdivide = false;
  int segment_points = kDefaultSegmentPoints;
  unsigned threads = 0;
  std::string out_csv;
  std::string plot_script;

  /// Throws ConfigError.
  void validate() const;
  /// Deterministic text of every setting that affects numbers.
  std::string canonical() const;
};

/// Applies "key = value" lines (keys mirror the CLI flags: functions, elements,
/// custom, mesh, quad-degree, subdivide, segment-points, threads, out, plot).
/// '#' starts a comment. Throws ConfigError.
void apply_config_text(RunConfig& config, std::string_view text);
RunConfig load_config_file(const std::string& path);

struct ReportRow {
  std::string function;
  std::string element;
  std::size_t n_triangles = 0;
  double h_max = 0.0;
  std::optional<double> l1_error;  // empty when the row failed
  std::optional<double> order;     // empty on the coarsest level
  std::string failure;             // "<ErrorKind>: message" for failed rows
};

struct ConvergenceReport {
  std::vector<ReportRow> rows;  // sorted by (function, element, n_triangles)
  int quad_degree = kDefaultTriangleDegree;
  bool subdivide = false;
  int segment_points = kDefaultSegmentPoints;
  std::string timestamp;
  std::string config_hash;

  std::vector<const ReportRow*> series(std::string_view function, std::string_view element) const;
  /// Least-squares slope of log L1 against log h_max over successful rows.
  std::optional<double> least_squares_order(std::string_view function, std::string_view element) const;
  std::vector<std::string> functions() const;
  std::vector<std::string> elements() const;
};

/// Runs every (function, element, mesh) combination. Per-row failures are
/// recorded in the report and the run continues. Throws ConfigError.
ConvergenceReport run_convergence(const RunConfig& config);

/// Fills the order column from consecutive rows of each (function, element) series.
void compute_orders(ConvergenceReport& report);

inline constexpr std::string_view kCsvHeader = "function,element,n_triangles,h_max,l1_error,order";

std::string format_csv(const ConvergenceReport& report);
/// Parses text written by format_csv (rows only). Throws ParseError.
ConvergenceReport parse_csv(std::string_view text);
/// Throws IoError.
void emit_csv(const ConvergenceReport& report, const std::string& path);

/// gnuplot script with one loglog panel per function (L1 error against number
/// of triangles), one curve per element, and order-2 / order-3 guide lines.
std::string format_plot_script(const ConvergenceReport& report, const std::string& csv_path);
/// Throws IoError or DomainError (fewer than two mesh levels).
void emit_plot_script(const ConvergenceReport& report, const std::string& csv_path,
                      const std::string& path);

/// Name of the library error type of `e` ("InadmissibleFunctionals", ...).
std::string error_kind(const std::exception& e);

}  // namespace crenrich
