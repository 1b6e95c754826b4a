// SPDX-License-Identifier: Apache-2.0
#include "vohd/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "vohd/errors.hpp"

namespace vohd::report {
namespace {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_coord(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string format_tick(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

constexpr int kWidth = 800;
constexpr int kHeight = 600;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                "#9467bd", "#ff7f0e", "#8c564b",
                                "#e377c2", "#7f7f7f"};
constexpr int kPaletteSize = 8;

struct series {
  std::string label;
  std::vector<double> y;
};

struct panel_data {
  std::vector<double> t;
  std::vector<series> curves;
  std::string title;
  std::string y_label;
};

std::string render_panel(const panel_data& p) {
  double tmin = std::numeric_limits<double>::infinity();
  double tmax = -tmin;
  double ymin = tmin;
  double ymax = -tmin;
  for (double v : p.t) {
    tmin = std::fmin(tmin, v);
    tmax = std::fmax(tmax, v);
  }
  for (const series& s : p.curves) {
    for (double v : s.y) {
      ymin = std::fmin(ymin, v);
      ymax = std::fmax(ymax, v);
    }
  }
  if (!(tmax > tmin)) tmax = tmin + 1.0;
  if (!(ymax > ymin)) {
    ymax = ymin + 1.0;
    ymin -= 1.0;
  }
  // A little vertical headroom keeps curves off the frame.
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto sx = [&](double t) {
    return kMarginLeft + (t - tmin) / (tmax - tmin) * plot_w;
  };
  auto sy = [&](double y) {
    return kMarginTop + (ymax - y) / (ymax - ymin) * plot_h;
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "viewBox=\"0 0 800 600\" width=\"800\" height=\"600\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" "
         "fill=\"white\"/>\n";
  out += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"monospace\" font-size=\"16\">" + p.title +
         "</text>\n";

  // Frame and ticks: 5 divisions per axis.
  out += "<rect x=\"" + format_coord(kMarginLeft) + "\" y=\"" +
         format_coord(kMarginTop) + "\" width=\"" + format_coord(plot_w) +
         "\" height=\"" + format_coord(plot_h) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double tv = tmin + i * (tmax - tmin) / 5.0;
    const double xx = sx(tv);
    out += "<line x1=\"" + format_coord(xx) + "\" y1=\"" +
           format_coord(kMarginTop + plot_h) + "\" x2=\"" + format_coord(xx) +
           "\" y2=\"" + format_coord(kMarginTop + plot_h + 6) +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + format_coord(xx) + "\" y=\"" +
           format_coord(kMarginTop + plot_h + 22) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"11\">" + format_tick(tv) + "</text>\n";
    const double yv = ymin + i * (ymax - ymin) / 5.0;
    const double yy = sy(yv);
    out += "<line x1=\"" + format_coord(kMarginLeft - 6) + "\" y1=\"" +
           format_coord(yy) + "\" x2=\"" + format_coord(kMarginLeft) +
           "\" y2=\"" + format_coord(yy) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + format_coord(kMarginLeft - 10) + "\" y=\"" +
           format_coord(yy + 4) +
           "\" text-anchor=\"end\" font-family=\"monospace\" "
           "font-size=\"11\">" + format_tick(yv) + "</text>\n";
  }
  out += "<text x=\"" + format_coord(kMarginLeft + plot_w / 2) + "\" y=\"" +
         format_coord(kHeight - 10) +
         "\" text-anchor=\"middle\" font-family=\"monospace\" "
         "font-size=\"13\">t</text>\n";
  out += "<text x=\"18\" y=\"" + format_coord(kMarginTop + plot_h / 2) +
         "\" text-anchor=\"middle\" font-family=\"monospace\" "
         "font-size=\"13\" transform=\"rotate(-90 18 " +
         format_coord(kMarginTop + plot_h / 2) + ")\">" + p.y_label +
         "</text>\n";

  for (std::size_t c = 0; c < p.curves.size(); ++c) {
    const series& s = p.curves[c];
    const char* color = kPalette[c % kPaletteSize];
    std::string pts;
    for (std::size_t i = 0; i < p.t.size(); ++i) {
      if (!pts.empty()) pts += ' ';
      pts += format_coord(sx(p.t[i]));
      pts += ',';
      pts += format_coord(sy(s.y[i]));
    }
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    // Legend swatch and label, stacked top-right inside the frame.
    const double ly = kMarginTop + 14 + 18.0 * static_cast<double>(c);
    out += "<line x1=\"" + format_coord(kMarginLeft + plot_w - 150) +
           "\" y1=\"" + format_coord(ly) + "\" x2=\"" +
           format_coord(kMarginLeft + plot_w - 120) + "\" y2=\"" +
           format_coord(ly) + "\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"1.5\"/>\n";
    out += "<text x=\"" + format_coord(kMarginLeft + plot_w - 114) +
           "\" y=\"" + format_coord(ly + 4) +
           "\" font-family=\"monospace\" font-size=\"12\">" + s.label +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

bool starts_with(const std::string& s, const char* prefix) {
  return s.rfind(prefix, 0) == 0;
}

}  // namespace

std::string csv_document::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_real(row[i]);
    }
    out += '\n';
  }
  return out;
}

csv_document csv_document::parse(const std::string& text) {
  std::vector<std::string> lines;
  for (const std::string& raw : split(text, '\n')) {
    if (!raw.empty()) lines.push_back(raw);
  }
  if (lines.empty()) throw config_error("malformed CSV: empty document");
  csv_document doc;
  doc.columns = split(lines[0], ',');
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::vector<std::string> cells = split(lines[li], ',');
    if (cells.size() != doc.columns.size()) {
      throw config_error("malformed CSV: row " + std::to_string(li) +
                         " has " + std::to_string(cells.size()) +
                         " cells, expected " +
                         std::to_string(doc.columns.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const std::string& cell : cells) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        throw config_error("malformed CSV: bad number '" + cell + "'");
      }
      row.push_back(v);
    }
    doc.rows.push_back(std::move(row));
  }
  if (doc.rows.empty()) throw config_error("no data rows");
  return doc;
}

int csv_document::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::string render_value_panel(const csv_document& doc) {
  if (doc.rows.empty()) throw config_error("no data rows");
  const int tcol = doc.column("t");
  if (tcol < 0) throw config_error("malformed CSV: no t column");
  panel_data p;
  p.title = "values";
  p.y_label = "derivative";
  for (const auto& row : doc.rows) p.t.push_back(row[tcol]);
  for (std::size_t c = 0; c < doc.columns.size(); ++c) {
    const std::string& name = doc.columns[c];
    if (name != "exact" && name != "oracle" && !starts_with(name, "approx_N")) {
      continue;
    }
    series s;
    s.label = name;
    for (const auto& row : doc.rows) s.y.push_back(row[c]);
    p.curves.push_back(std::move(s));
  }
  if (p.curves.empty()) {
    throw config_error("malformed CSV: no value columns to plot");
  }
  return render_panel(p);
}

std::string render_error_panel(const csv_document& doc) {
  if (doc.rows.empty()) throw config_error("no data rows");
  const int tcol = doc.column("t");
  if (tcol < 0) throw config_error("malformed CSV: no t column");
  panel_data p;
  p.title = "log10 observed error";
  p.y_label = "log10 |approx - reference|";
  for (const auto& row : doc.rows) p.t.push_back(row[tcol]);
  for (std::size_t c = 0; c < doc.columns.size(); ++c) {
    const std::string& name = doc.columns[c];
    if (!starts_with(name, "err_N")) continue;
    series s;
    s.label = name;
    for (const auto& row : doc.rows) {
      s.y.push_back(std::log10(std::fmax(row[c], 1e-18)));
    }
    p.curves.push_back(std::move(s));
  }
  if (p.curves.empty()) {
    throw config_error("malformed CSV: no err_N columns to plot");
  }
  return render_panel(p);
}

}  // namespace vohd::report
