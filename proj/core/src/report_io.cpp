#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "crenrich/errors.hpp"
#include "crenrich/harness.hpp"

namespace crenrich {

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

template <class T>
T parse_field(std::string_view field, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("csv line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  }
  return value;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_csv(const ConvergenceReport& report) {
  std::string out(kCsvHeader);
  out += "\n";
  for (const auto& r : report.rows) {
    out += r.function + "," + r.element + "," + std::to_string(r.n_triangles) + "," + format_double(r.h_max) +
           "," + (r.l1_error ? format_double(*r.l1_error) : "") + "," +
           (r.order ? format_double(*r.order) : "") + "\n";
  }
  return out;
}

ConvergenceReport parse_csv(std::string_view text) {
  ConvergenceReport report;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw ParseError("csv: unexpected header '" + std::string(line) + "'");
      header_seen = true;
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != 6) {
      throw ParseError("csv line " + std::to_string(line_no) + ": expected 6 fields");
    }
    ReportRow row;
    row.function = std::string(fields[0]);
    row.element = std::string(fields[1]);
    row.n_triangles = parse_field<std::size_t>(fields[2], line_no);
    row.h_max = parse_field<double>(fields[3], line_no);
    if (!fields[4].empty()) row.l1_error = parse_field<double>(fields[4], line_no);
    if (!fields[5].empty()) row.order = parse_field<double>(fields[5], line_no);
    report.rows.push_back(std::move(row));
  }
  if (!header_seen) throw ParseError("csv: missing header");
  return report;
}

void emit_csv(const ConvergenceReport& report, const std::string& path) {
  write_file(path, format_csv(report));
}

std::string format_plot_script(const ConvergenceReport& report, const std::string& csv_path) {
  const auto functions = report.functions();
  const auto elements = report.elements();
  const std::size_t panels = std::max<std::size_t>(functions.size(), 1);
  const std::size_t cols = panels == 1 ? 1 : 2;
  const std::size_t rows = (panels + cols - 1) / cols;

  std::ostringstream gp;
  gp << "# L1 error against number of triangles; data: " << csv_path << "\n"
     << "# Columns: " << kCsvHeader << "\n"
     << "if (!exists(\"outfile\")) outfile = \"convergence.png\"\n"
     << "set terminal pngcairo size " << 640 * cols << "," << 480 * rows << "\n"
     << "set output outfile\n"
     << "set datafile separator \",\"\n"
     << "set key top right\n"
     << "set logscale xy\n"
     << "set format y \"10^{%L}\"\n"
     << "set xlabel \"number of triangles\"\n"
     << "set ylabel \"L1 error\"\n"
     << "csv = " << quote(csv_path) << "\n"
     << "set multiplot layout " << rows << "," << cols << "\n";

  for (const auto& fn : functions) {
    // Guides e ~ N^(-p/2) for orders p = 2, 3 in h, anchored at the coarsest
    // successful point of this panel.
    double anchor_n = 0.0, anchor_e = 0.0;
    for (const auto& el : elements) {
      for (const ReportRow* r : report.series(fn, el)) {
        if (!r->l1_error || !(*r->l1_error > 0.0)) continue;
        if (anchor_n == 0.0 || static_cast<double>(r->n_triangles) < anchor_n ||
            (static_cast<double>(r->n_triangles) == anchor_n && *r->l1_error > anchor_e)) {
          anchor_n = static_cast<double>(r->n_triangles);
          anchor_e = *r->l1_error;
        }
        break;
      }
    }
    const double c2 = anchor_e * anchor_n;
    const double c3 = anchor_e * std::pow(anchor_n, 1.5);
    gp << "\nset title " << quote(fn) << "\n"
       << "plot \\\n";
    for (const auto& el : elements) {
      gp << "  csv skip 1 using ((strcol(1) eq " << quote(fn) << " && strcol(2) eq " << quote(el)
         << ") ? $3 : 1/0):5 with linespoints title " << quote(el) << ", \\\n";
    }
    gp << "  " << format_double(c2) << " * x**(-1.0) with lines dashtype 2 lc rgb \"gray40\" title \"order 2\", \\\n"
       << "  " << format_double(c3) << " * x**(-1.5) with lines dashtype 3 lc rgb \"gray20\" title \"order 3\"\n";
  }
  gp << "\nunset multiplot\n";
  return gp.str();
}

void emit_plot_script(const ConvergenceReport& report, const std::string& csv_path,
                      const std::string& path) {
  std::size_t levels = 0;
  for (const auto& fn : report.functions()) {
    for (const auto& el : report.elements()) levels = std::max(levels, report.series(fn, el).size());
  }
  if (levels < 2) throw DomainError("plot needs at least two mesh levels");
  write_file(path, format_plot_script(report, csv_path));
}

}  // namespace crenrich
