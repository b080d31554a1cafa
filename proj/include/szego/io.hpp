#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "szego/compression.hpp"
#include "szego/spectral.hpp"

namespace szego {

using json = nlohmann::ordered_json;

// fixed double formatting so repeated runs are byte-identical
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline json complex_to_json(cdouble z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

// ---- matrices ----------------------------------------------------------

// Row-major CSV with the one-line header "rows,cols,path"; entries as
// adjacent re,im columns.
inline std::string matrix_to_csv(const CompressedMatrix& a) {
  std::ostringstream out;
  out << a.entries.rows() << ',' << a.entries.cols() << ',' << to_string(a.path) << '\n';
  for (std::size_t i = 0; i < a.entries.rows(); ++i) {
    for (std::size_t j = 0; j < a.entries.cols(); ++j) {
      if (j) out << ',';
      out << format_double(a.entries(i, j).real()) << ',' << format_double(a.entries(i, j).imag());
    }
    out << '\n';
  }
  return out.str();
}

inline json matrix_to_json(const CompressedMatrix& a) {
  json entries = json::array();
  for (std::size_t i = 0; i < a.entries.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.entries.cols(); ++j) row.push_back(complex_to_json(a.entries(i, j)));
    entries.push_back(std::move(row));
  }
  return json{{"rows", a.entries.rows()},
              {"cols", a.entries.cols()},
              {"path", to_string(a.path)},
              {"block_size", a.block_size},
              {"block_count", a.block_count},
              {"entries", std::move(entries)}};
}

// ---- distribution reports ----------------------------------------------

inline std::string report_to_csv(const DistributionReport& report) {
  std::ostringstream out;
  out << "n,dim,G_center,G_width,mode,empirical,limit,gap\n";
  for (const auto& r : report.rows)
    out << r.n << ',' << r.dim << ',' << format_double(r.center) << ',' << format_double(r.width)
        << ',' << to_string(r.mode) << ',' << format_double(r.empirical) << ','
        << format_double(r.limit) << ',' << format_double(r.gap) << '\n';
  return out.str();
}

inline json report_to_json(const DistributionReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows)
    rows.push_back(json{{"n", r.n},
                        {"dim", r.dim},
                        {"G_center", r.center},
                        {"G_width", r.width},
                        {"mode", to_string(r.mode)},
                        {"empirical", r.empirical},
                        {"limit", r.limit},
                        {"gap", r.gap}});
  return json{{"rows", std::move(rows)}};
}

inline DistributionReport report_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("report CSV: missing header");
  DistributionReport report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 8) throw std::invalid_argument("report CSV: bad row: " + line);
    DistributionRow r;
    r.n = std::stoi(fields[0]);
    r.dim = std::stoi(fields[1]);
    r.center = std::stod(fields[2]);
    r.width = std::stod(fields[3]);
    if (fields[4] == "eigen")
      r.mode = SpectrumMode::eigen;
    else if (fields[4] == "singular")
      r.mode = SpectrumMode::singular;
    else
      throw std::invalid_argument("report CSV: bad mode: " + fields[4]);
    r.empirical = std::stod(fields[5]);
    r.limit = std::stod(fields[6]);
    r.gap = std::stod(fields[7]);
    report.rows.push_back(r);
  }
  return report;
}

// ---- SVG convergence chart ----------------------------------------------

// log-log chart of gap vs n, one polyline per test function; direct markup,
// deterministic bytes.
inline std::string report_to_svg(const DistributionReport& report) {
  constexpr double kW = 640.0, kH = 480.0, kPad = 56.0;
  constexpr double kGapFloor = 1e-16;

  // group rows by (center, width), preserving first-seen order
  std::vector<std::pair<double, double>> keys;
  for (const auto& r : report.rows) {
    const std::pair<double, double> key{r.center, r.width};
    bool seen = false;
    for (const auto& k : keys)
      if (k == key) { seen = true; break; }
    if (!seen) keys.push_back(key);
  }

  double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
  for (const auto& r : report.rows) {
    const double x = std::log10(static_cast<double>(r.n));
    const double y = std::log10(std::max(r.gap, kGapFloor));
    min_x = std::min(min_x, x);
    max_x = std::max(max_x, x);
    min_y = std::min(min_y, y);
    max_y = std::max(max_y, y);
  }
  if (max_x <= min_x) max_x = min_x + 1.0;
  if (max_y <= min_y) max_y = min_y + 1.0;
  const auto sx = [&](double x) { return kPad + (x - min_x) / (max_x - min_x) * (kW - 2 * kPad); };
  const auto sy = [&](double y) { return kH - kPad - (y - min_y) / (max_y - min_y) * (kH - 2 * kPad); };

  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
  out << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
  out << "<line x1=\"" << kPad << "\" y1=\"" << kH - kPad << "\" x2=\"" << kW - kPad << "\" y2=\""
      << kH - kPad << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kPad << "\" y1=\"" << kPad << "\" x2=\"" << kPad << "\" y2=\""
      << kH - kPad << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">log10 n</text>\n";
  out << "<text x=\"14\" y=\"" << kH / 2
      << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 " << kH / 2
      << ")\">log10 gap</text>\n";

  std::size_t color = 0;
  for (const auto& key : keys) {
    std::ostringstream pts;
    for (const auto& r : report.rows)
      if (r.center == key.first && r.width == key.second)
        pts << format_double(sx(std::log10(static_cast<double>(r.n)))) << ','
            << format_double(sy(std::log10(std::max(r.gap, kGapFloor)))) << ' ';
    out << "<polyline fill=\"none\" stroke=\"" << kColors[color % 10] << "\" stroke-width=\"1.5\" points=\""
        << pts.str() << "\"/>\n";
    out << "<text x=\"" << kW - kPad + 4 << "\" y=\"" << kPad + 14 * static_cast<double>(color)
        << "\" font-size=\"10\" fill=\"" << kColors[color % 10] << "\">hat(" << format_double(key.first)
        << ',' << format_double(key.second) << ")</text>\n";
    ++color;
  }
  out << "</svg>\n";
  return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace szego
