#include "crenrich/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "crenrich/errors.hpp"

namespace crenrich {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                                   : comma - pos));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

template <class T>
T parse_value(std::string_view text, std::string_view key) {
  const std::string s = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("invalid value '" + s + "' for " + std::string(key));
  }
  return value;
}

bool parse_bool(std::string_view text, std::string_view key) {
  const std::string s = trim(text);
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw ConfigError("invalid boolean '" + s + "' for " + std::string(key));
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

// --- test functions ---------------------------------------------------------

TestFunction test_function(std::string_view name) {
  if (name == "f1") return {"f1", [](Point2 p) { return std::exp(p.x + p.y); }};
  if (name == "f2") return {"f2", [](Point2 p) { return 1.0 / (p.x * p.x + p.y * p.y + 8.0); }};
  if (name == "f3") return {"f3", [](Point2 p) { return std::cos(p.x + p.y + 1.0); }};
  if (name == "f4") {
    return {"f4", [](Point2 p) {
              const double dx = p.x - 0.5, dy = p.y - 0.5;
              return std::sqrt(64.0 - 81.0 * (dx * dx + dy * dy)) / 9.0 - 0.5;
            }};
  }
  throw UnknownFunction("unknown test function '" + std::string(name) + "' (expected f1..f4)");
}

std::vector<std::string> builtin_function_names() { return {"f1", "f2", "f3", "f4"}; }

// --- configuration ----------------------------------------------------------

MeshSource MeshSource::parse(std::string_view text) {
  MeshSource src;
  if (text.starts_with("structured:")) {
    src.kind = Kind::Structured;
    src.levels.clear();
    for (const auto& item : split_list(text.substr(11))) {
      const auto n = parse_value<long long>(item, "mesh");
      if (n < 1) throw ConfigError("structured mesh size must be >= 1, got " + item);
      src.levels.push_back(static_cast<std::size_t>(n));
    }
  } else if (text.starts_with("files:")) {
    src.kind = Kind::Files;
    src.levels.clear();
    src.files = split_list(text.substr(6));
  } else {
    throw ConfigError("mesh source must be 'structured:<n,...>' or 'files:<base,...>', got '" +
                      std::string(text) + "'");
  }
  if (src.count() == 0) throw ConfigError("mesh list is empty");
  return src;
}

std::string MeshSource::describe() const {
  if (kind == Kind::Files) return "files:" + join(files);
  std::vector<std::string> parts;
  for (auto n : levels) parts.push_back(std::to_string(n));
  return "structured:" + join(parts);
}

void RunConfig::validate() const {
  if (functions.empty()) throw ConfigError("function list is empty");
  if (elements.empty()) throw ConfigError("element list is empty");
  if (mesh.count() == 0) throw ConfigError("mesh list is empty");
  for (const auto& f : functions) {
    try {
      (void)test_function(f);
    } catch (const UnknownFunction& e) {
      throw ConfigError(e.what());
    }
  }
  for (const auto& e : elements) (void)ElementSpec::parse(e, custom);
  (void)triangle_rule(quad_degree);
  if (segment_points < 1 || segment_points > kMaxSegmentPoints) {
    throw ConfigError("segment-points must lie in [1, " + std::to_string(kMaxSegmentPoints) + "]");
  }
}

std::string RunConfig::canonical() const {
  return "functions=" + join(functions) + ";elements=" + join(elements) + ";custom=" + custom +
         ";mesh=" + mesh.describe() + ";quad-degree=" + std::to_string(quad_degree) +
         ";subdivide=" + (subdivide ? "1" : "0") + ";segment-points=" + std::to_string(segment_points);
}

void apply_config_text(RunConfig& config, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "functions") {
      config.functions = split_list(value);
    } else if (key == "elements") {
      config.elements = split_list(value);
    } else if (key == "custom") {
      config.custom = value;
    } else if (key == "mesh") {
      config.mesh = MeshSource::parse(value);
    } else if (key == "quad-degree") {
      config.quad_degree = parse_value<int>(value, key);
    } else if (key == "subdivide") {
      config.subdivide = parse_bool(value, key);
    } else if (key == "segment-points") {
      config.segment_points = parse_value<int>(value, key);
    } else if (key == "threads") {
      config.threads = parse_value<unsigned>(value, key);
    } else if (key == "out") {
      config.out_csv = value;
    } else if (key == "plot") {
      config.plot_script = value;
    } else {
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  RunConfig config;
  apply_config_text(config, ss.str());
  return config;
}

// --- report -----------------------------------------------------------------

std::vector<const ReportRow*> ConvergenceReport::series(std::string_view function,
                                                        std::string_view element) const {
  std::vector<const ReportRow*> out;
  for (const auto& r : rows) {
    if (r.function == function && r.element == element) out.push_back(&r);
  }
  return out;
}

std::optional<double> ConvergenceReport::least_squares_order(std::string_view function,
                                                             std::string_view element) const {
  std::vector<double> errors, h;
  for (const ReportRow* r : series(function, element)) {
    if (!r->l1_error) continue;
    errors.push_back(*r->l1_error);
    h.push_back(r->h_max);
  }
  try {
    return convergence_order(errors, h).least_squares;
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

std::vector<std::string> ConvergenceReport::functions() const {
  std::vector<std::string> out;
  for (const auto& r : rows) {
    if (std::find(out.begin(), out.end(), r.function) == out.end()) out.push_back(r.function);
  }
  return out;
}

std::vector<std::string> ConvergenceReport::elements() const {
  std::vector<std::string> out;
  for (const auto& r : rows) {
    if (std::find(out.begin(), out.end(), r.element) == out.end()) out.push_back(r.element);
  }
  return out;
}

void compute_orders(ConvergenceReport& report) {
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    ReportRow& row = report.rows[i];
    row.order.reset();
    if (i == 0) continue;
    const ReportRow& prev = report.rows[i - 1];
    if (prev.function != row.function || prev.element != row.element) continue;
    if (!row.l1_error || !prev.l1_error || !(*row.l1_error > 0.0) || !(*prev.l1_error > 0.0)) continue;
    if (!(row.h_max < prev.h_max)) continue;
    row.order = std::log(*prev.l1_error / *row.l1_error) / std::log(prev.h_max / row.h_max);
  }
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const InadmissibleFunctionals*>(&e)) return "InadmissibleFunctionals";
  if (dynamic_cast<const DegenerateTriangle*>(&e)) return "DegenerateTriangle";
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const IndexError*>(&e)) return "IndexError";
  if (dynamic_cast<const PointOutsideMesh*>(&e)) return "PointOutsideMesh";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const UnsupportedDegree*>(&e)) return "UnsupportedDegree";
  if (dynamic_cast<const UnknownFunction*>(&e)) return "UnknownFunction";
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const IoError*>(&e)) return "IoError";
  if (dynamic_cast<const TriangleError*>(&e)) return "TriangleError";
  return "Error";
}

ConvergenceReport run_convergence(const RunConfig& config) {
  config.validate();

  struct LoadedMesh {
    std::shared_ptr<const Mesh> mesh;
    std::string failure;
  };
  std::vector<LoadedMesh> meshes;
  for (std::size_t m = 0; m < config.mesh.count(); ++m) {
    const std::string name = config.mesh.kind == MeshSource::Kind::Structured
                                 ? "structured:" + std::to_string(config.mesh.levels[m])
                                 : config.mesh.files[m];
    try {
      if (config.mesh.kind == MeshSource::Kind::Structured) {
        meshes.push_back({std::make_shared<const Mesh>(structured_mesh(config.mesh.levels[m])), {}});
      } else {
        meshes.push_back({std::make_shared<const Mesh>(read_mesh_files(config.mesh.files[m])), {}});
      }
    } catch (const Error& e) {
      meshes.push_back({nullptr, error_kind(e) + ": " + name + ": " + e.what()});
    }
  }

  const TriangleRule rule = triangle_rule(config.quad_degree);
  ConvergenceReport report;
  report.quad_degree = config.quad_degree;
  report.subdivide = config.subdivide;
  report.segment_points = config.segment_points;
  report.timestamp = utc_timestamp();
  report.config_hash = fnv1a_hex(config.canonical());

  for (const auto& element_text : config.elements) {
    const ElementSpec spec = ElementSpec::parse(element_text, config.custom);
    std::optional<Element> element;
    std::string element_failure;
    try {
      element = Element::make(spec, config.segment_points);
    } catch (const Error& e) {
      element_failure = error_kind(e) + ": " + e.what();
    }
    for (const auto& function_name : config.functions) {
      const TestFunction fn = test_function(function_name);
      for (const auto& loaded : meshes) {
        ReportRow row;
        row.function = fn.name;
        row.element = spec.label();
        if (loaded.mesh) {
          row.n_triangles = loaded.mesh->size();
          row.h_max = loaded.mesh->h_max();
        }
        if (!loaded.mesh) {
          row.failure = loaded.failure;
        } else if (!element) {
          row.failure = element_failure;
        } else {
          try {
            const PiecewiseField field = global_interpolate(loaded.mesh, fn.eval, *element, config.threads);
            row.l1_error = l1_error(field, fn.eval, rule, config.subdivide, config.threads).l1;
          } catch (const Error& e) {
            row.failure = error_kind(e) + ": " + e.what();
          }
        }
        report.rows.push_back(std::move(row));
      }
    }
  }

  std::stable_sort(report.rows.begin(), report.rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.function != b.function) return a.function < b.function;
    if (a.element != b.element) return a.element < b.element;
    return a.n_triangles < b.n_triangles;
  });
  compute_orders(report);
  return report;
}

}  // namespace crenrich
