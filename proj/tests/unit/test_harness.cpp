#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "crenrich/errors.hpp"
#include "crenrich/harness.hpp"

using namespace crenrich;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "crenrich_harness_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

RunConfig small_config() {
  RunConfig c;
  c.functions = {"f1"};
  c.elements = {"cr", "gn:2"};
  c.mesh = MeshSource::parse("structured:4,8,16,32");
  return c;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("test function values") {
  CHECK(test_function("f1").eval({0, 0}) == 1.0);
  CHECK(test_function("f1").eval({0.5, 0.5}) == doctest::Approx(std::exp(1.0)));
  CHECK(test_function("f2").eval({0, 0}) == doctest::Approx(0.125));
  CHECK(test_function("f2").eval({1, 1}) == doctest::Approx(0.1));
  CHECK(test_function("f3").eval({0, 0}) == doctest::Approx(std::cos(1.0)));
  CHECK(test_function("f4").eval({0.5, 0.5}) == doctest::Approx(7.0 / 18.0));
  CHECK(test_function("f4").eval({0, 0}) == doctest::Approx(std::sqrt(64.0 - 40.5) / 9.0 - 0.5));
  CHECK_THROWS_AS(test_function("f9"), UnknownFunction);
  CHECK(builtin_function_names().size() == 4);
}

TEST_CASE("mesh source parsing") {
  const MeshSource s = MeshSource::parse("structured:2,4");
  CHECK(s.levels == std::vector<std::size_t>{2, 4});
  CHECK(s.describe() == "structured:2,4");
  const MeshSource f = MeshSource::parse("files:a,b,c");
  CHECK(f.count() == 3);
  CHECK_THROWS_AS(MeshSource::parse("structured:"), ConfigError);
  CHECK_THROWS_AS(MeshSource::parse("structured:4,0"), ConfigError);
  CHECK_THROWS_AS(MeshSource::parse("grid:4"), ConfigError);
  CHECK_THROWS_AS(MeshSource::parse("files:"), ConfigError);
}

TEST_CASE("config text") {
  RunConfig c;
  apply_config_text(c,
                    "# study\n"
                    "functions = f2, f3\n"
                    "elements = cr, custom   # enriched by a mixed triple\n"
                    "custom = midsegment:1 / median:2 / vertex\n"
                    "mesh = structured:2,4\n"
                    "quad-degree = 10\n"
                    "subdivide = true\n"
                    "segment-points = 12\n"
                    "threads = 2\n"
                    "out = r.csv\n");
  CHECK(c.functions == std::vector<std::string>{"f2", "f3"});
  CHECK(c.elements == std::vector<std::string>{"cr", "custom"});
  CHECK(c.quad_degree == 10);
  CHECK(c.subdivide);
  CHECK(c.segment_points == 12);
  CHECK(c.threads == 2);
  CHECK(c.out_csv == "r.csv");
  CHECK_NOTHROW(c.validate());

  RunConfig bad;
  CHECK_THROWS_AS(apply_config_text(bad, "colour = blue\n"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(bad, "functions\n"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(bad, "quad-degree = eight\n"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(bad, "subdivide = maybe\n"), ConfigError);
}

TEST_CASE("config validation") {
  RunConfig c;
  c.functions = {};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.functions = {"f7"};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.elements = {"p3"};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.quad_degree = 4;
  CHECK_THROWS_AS(c.validate(), UnsupportedDegree);
  c = RunConfig{};
  c.segment_points = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.mesh.levels.clear();
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS(run_convergence(c), ConfigError);
  CHECK_THROWS_AS(load_config_file(scratch("absent.cfg").string()), IoError);
}

TEST_CASE("convergence run with CR and GN2 on f1") {
  const ConvergenceReport r = run_convergence(small_config());
  REQUIRE(r.rows.size() == 8);
  const auto cr = r.series("f1", "cr");
  const auto gn = r.series("f1", "gn:2");
  REQUIRE(cr.size() == 4);
  REQUIRE(gn.size() == 4);
  CHECK_FALSE(cr[0]->order.has_value());
  for (std::size_t k = 1; k < 4; ++k) {
    CHECK(*cr[k]->order == doctest::Approx(2.0).epsilon(0.05));
    CHECK(*gn[k]->order == doctest::Approx(3.0).epsilon(0.05));
    CHECK(cr[k]->n_triangles == 4 * cr[k - 1]->n_triangles);
  }
  CHECK(*r.least_squares_order("f1", "cr") == doctest::Approx(2.0).epsilon(0.05));
  CHECK(r.functions() == std::vector<std::string>{"f1"});
  CHECK(r.elements() == std::vector<std::string>{"cr", "gn:2"});
  CHECK(r.config_hash.size() == 16);
  CHECK(r.timestamp.size() >= 20);
}

TEST_CASE("inadmissible element rows are flagged and the run continues") {
  RunConfig c = small_config();
  c.elements = {"gn:0", "cr"};
  c.mesh = MeshSource::parse("structured:2,4");
  const ConvergenceReport r = run_convergence(c);
  REQUIRE(r.rows.size() == 4);
  const auto bad = r.series("f1", "gn:0");
  REQUIRE(bad.size() == 2);
  for (const auto* row : bad) {
    CHECK_FALSE(row->l1_error.has_value());
    CHECK(row->failure.starts_with("InadmissibleFunctionals"));
  }
  for (const auto* row : r.series("f1", "cr")) CHECK(row->l1_error.has_value());
  CHECK_FALSE(r.least_squares_order("f1", "gn:0").has_value());
}

TEST_CASE("runs over mesh files") {
  const auto base = scratch("two").string();
  {
    std::ofstream(base + ".node") << "4 2 0 0\n1 0 0\n2 1 0\n3 1 1\n4 0 1\n";
    std::ofstream(base + ".ele") << "2 3 0\n1 1 2 3\n2 1 3 4\n";
  }
  RunConfig c = small_config();
  c.mesh = MeshSource::parse("files:" + base + "," + scratch("nope").string());
  const ConvergenceReport r = run_convergence(c);
  REQUIRE(r.rows.size() == 4);
  std::size_t failed = 0;
  for (const auto& row : r.rows) failed += row.l1_error.has_value() ? 0 : 1;
  CHECK(failed == 2);
}

TEST_CASE("CSV format") {
  RunConfig c = small_config();
  c.elements = {"cr"};
  c.mesh = MeshSource::parse("structured:2,4");
  const ConvergenceReport r = run_convergence(c);
  const auto path = scratch("r.csv").string();
  emit_csv(r, path);
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == kCsvHeader);
  CHECK(lines[1].starts_with("f1,cr,8,"));
  CHECK(lines[1].ends_with(","));
  CHECK(lines[2].starts_with("f1,cr,32,"));
  CHECK(std::count(lines[2].begin(), lines[2].end(), ',') == 5);
  CHECK_THROWS_AS(emit_csv(r, (scratch("missing_dir") / "x" / "r.csv").string()), IoError);
}

TEST_CASE("CSV is deterministic and round-trips") {
  RunConfig c = small_config();
  c.functions = {"f4", "f2"};
  c.elements = {"pn:2", "cr", "gn:0"};
  c.mesh = MeshSource::parse("structured:2,4,8");
  c.threads = 3;
  const std::string a = format_csv(run_convergence(c));
  c.threads = 1;
  const std::string b = format_csv(run_convergence(c));
  CHECK(a == b);
  const ConvergenceReport parsed = parse_csv(a);
  CHECK(parsed.rows.size() == 18);
  CHECK(format_csv(parsed) == a);
  // Rows are sorted by function, then element.
  CHECK(parsed.rows.front().function == "f2");
  CHECK(parsed.rows.front().element == "cr");
  CHECK_THROWS_AS(parse_csv("a,b,c\n"), ParseError);
  CHECK_THROWS_AS(parse_csv(std::string(kCsvHeader) + "\nf1,cr,x,1,1,\n"), ParseError);
}

TEST_CASE("plot script") {
  RunConfig c = small_config();
  c.functions = {"f1", "f2", "f3"};
  c.elements = {"cr", "gn:2", "pn:2"};
  c.mesh = MeshSource::parse("structured:2,4");
  const ConvergenceReport r = run_convergence(c);
  const std::string gp = format_plot_script(r, "report.csv");
  CHECK(count_of(gp, "with linespoints") == 9);
  CHECK(count_of(gp, "title \"order 2\"") == 3);
  CHECK(count_of(gp, "title \"order 3\"") == 3);
  CHECK(count_of(gp, "set logscale xy") >= 1);
  CHECK(gp.find("report.csv") != std::string::npos);
  CHECK(gp.find("multiplot") != std::string::npos);

  c.mesh = MeshSource::parse("structured:4");
  const ConvergenceReport single = run_convergence(c);
  CHECK_THROWS_AS(emit_plot_script(single, "r.csv", scratch("p.gp").string()), DomainError);
}

TEST_CASE("error kind names") {
  CHECK(error_kind(InadmissibleFunctionals("x")) == "InadmissibleFunctionals");
  CHECK(error_kind(ConfigError("x")) == "ConfigError");
  CHECK(error_kind(IoError("x")) == "IoError");
}

}
