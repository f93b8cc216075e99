#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hbb/experiments.hpp"
#include "hbb/io.hpp"
#include "hbb/spectrum.hpp"

namespace hbb {

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  }
  int require(const std::string& name) const {
    const int c = col(name);
    if (c < 0) throw input_error("plot: CSV lacks column '" + name + "'");
    return c;
  }
  std::vector<double> column(int c) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[static_cast<std::size_t>(c)]);
    return out;
  }
};

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size())
      throw input_error("plot: line " + std::to_string(line_no) +
                        " does not match the header width");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const std::string& cell : cells) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size())
        throw input_error("plot: non-numeric cell '" + cell + "' on line " +
                          std::to_string(line_no));
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw input_error("plot: CSV is empty");
  if (t.rows.empty()) throw input_error("plot: CSV has no data rows");
  return t;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#555555"};
constexpr int kPaletteSize = 6;

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> sd;  // empty means no error bars
  const char* color = kPalette[0];
  bool dashed = false;
  bool line = true;
  bool markers = true;
};

struct Panel {
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
  std::optional<double> hline;
  std::string hline_label;
};

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct AxisScale {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;
  double p0 = 0.0;
  double p1 = 1.0;

  double map(double v) const {
    const double t = log ? (std::log10(v) - std::log10(lo)) /
                               (std::log10(hi) - std::log10(lo))
                         : (v - lo) / (hi - lo);
    return p0 + t * (p1 - p0);
  }
};

std::vector<double> linear_ticks(double lo, double hi) {
  const double raw = (hi - lo) / 4.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = 10.0 * mag;
  for (const double m : {1.0, 2.0, 5.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9;
       t += step)
    ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
  std::vector<double> ticks;
  const int e0 = static_cast<int>(std::floor(std::log10(lo) - 1e-9));
  const int e1 = static_cast<int>(std::ceil(std::log10(hi) + 1e-9));
  const bool decades_only = e1 - e0 > 3;
  for (int e = e0; e <= e1; ++e) {
    for (const double m : {1.0, 2.0, 5.0}) {
      if (decades_only && m != 1.0) continue;
      const double v = m * std::pow(10.0, e);
      if (v >= lo * (1.0 - 1e-12) && v <= hi * (1.0 + 1e-12))
        ticks.push_back(v);
    }
  }
  return ticks;
}

void svg_line(std::string& s, double x1, double y1, double x2, double y2,
              const char* color, double width, bool dashed = false) {
  s += "<line x1=\"" + px(x1) + "\" y1=\"" + px(y1) + "\" x2=\"" + px(x2) +
       "\" y2=\"" + px(y2) + "\" stroke=\"" + color + "\" stroke-width=\"" +
       px(width) + "\"";
  if (dashed) s += " stroke-dasharray=\"6 4\"";
  s += "/>\n";
}

void svg_circle(std::string& s, double x, double y, double r,
                const char* color) {
  s += "<circle cx=\"" + px(x) + "\" cy=\"" + px(y) + "\" r=\"" + px(r) +
       "\" fill=\"" + color + "\"/>\n";
}

void svg_text(std::string& s, double x, double y, const std::string& text,
              double size, const char* anchor, double rotate = 0.0) {
  s += "<text x=\"" + px(x) + "\" y=\"" + px(y) + "\" font-size=\"" +
       px(size) + "\" font-family=\"sans-serif\" fill=\"#222\" text-anchor=\"";
  s += anchor;
  s += "\"";
  if (rotate != 0.0)
    s += " transform=\"rotate(" + px(rotate) + " " + px(x) + " " + px(y) +
         ")\"";
  s += ">" + text + "</text>\n";
}

void render_panel(std::string& svg, const Panel& panel, double slot_y,
                  double width, double slot_h) {
  const double x0 = 70.0;
  const double y0 = slot_y + 18.0;
  const double w = width - x0 - 24.0;
  const double h = slot_h - 18.0 - 42.0;

  double xlo = std::numeric_limits<double>::infinity();
  double xhi = -xlo;
  double ylo = xlo;
  double yhi = -xlo;
  for (const Series& s : panel.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      const double sd = i < s.sd.size() ? s.sd[i] : 0.0;
      ylo = std::min(ylo, s.y[i] - sd);
      yhi = std::max(yhi, s.y[i] + sd);
    }
  }
  if (panel.hline) {
    ylo = std::min(ylo, *panel.hline);
    yhi = std::max(yhi, *panel.hline);
  }

  const bool log_x = panel.log_x && xlo > 0.0;
  const bool log_y = panel.log_y && ylo > 0.0;
  if (log_x) {
    xlo /= 1.25;
    xhi *= 1.25;
  } else {
    double pad = (xhi - xlo) * 0.06;
    if (pad == 0.0) pad = xlo == 0.0 ? 1.0 : std::abs(xlo) * 0.1;
    xlo -= pad;
    xhi += pad;
  }
  if (log_y) {
    ylo /= 1.4;
    yhi *= 1.4;
  } else {
    double pad = (yhi - ylo) * 0.08;
    if (pad == 0.0) pad = ylo == 0.0 ? 1.0 : std::abs(ylo) * 0.1;
    ylo -= pad;
    yhi += pad;
  }

  const AxisScale xs{xlo, xhi, log_x, x0, x0 + w};
  const AxisScale ys{ylo, yhi, log_y, y0 + h, y0};

  svg += "<rect x=\"" + px(x0) + "\" y=\"" + px(y0) + "\" width=\"" + px(w) +
         "\" height=\"" + px(h) +
         "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";

  const auto xticks = log_x ? log_ticks(xlo, xhi) : linear_ticks(xlo, xhi);
  for (const double t : xticks) {
    const double p = xs.map(t);
    svg_line(svg, p, y0, p, y0 + h, "#dddddd", 0.7);
    svg_line(svg, p, y0 + h, p, y0 + h + 4.0, "#444444", 1.0);
    svg_text(svg, p, y0 + h + 16.0, tick_label(t), 11.0, "middle");
  }
  const auto yticks = log_y ? log_ticks(ylo, yhi) : linear_ticks(ylo, yhi);
  for (const double t : yticks) {
    const double p = ys.map(t);
    svg_line(svg, x0, p, x0 + w, p, "#dddddd", 0.7);
    svg_line(svg, x0 - 4.0, p, x0, p, "#444444", 1.0);
    svg_text(svg, x0 - 7.0, p + 3.5, tick_label(t), 11.0, "end");
  }
  svg_text(svg, x0 + w / 2.0, y0 + h + 32.0, panel.x_label, 12.0, "middle");
  svg_text(svg, x0 - 52.0, y0 + h / 2.0, panel.y_label, 12.0, "middle",
           -90.0);

  if (panel.hline) {
    const double p = ys.map(*panel.hline);
    svg_line(svg, x0, p, x0 + w, p, "#555555", 1.2, true);
  }

  for (const Series& s : panel.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double cx = xs.map(s.x[i]);
      const double cy = ys.map(s.y[i]);
      if (i < s.sd.size() && s.sd[i] > 0.0) {
        double top = s.y[i] + s.sd[i];
        double bot = s.y[i] - s.sd[i];
        if (log_y) bot = std::max(bot, ylo);  // keep bars on the canvas
        const double pt = ys.map(top);
        const double pb = ys.map(bot);
        svg_line(svg, cx, pt, cx, pb, s.color, 1.0);
        svg_line(svg, cx - 3.0, pt, cx + 3.0, pt, s.color, 1.0);
        svg_line(svg, cx - 3.0, pb, cx + 3.0, pb, s.color, 1.0);
      }
      if (s.line && i + 1 < s.x.size())
        svg_line(svg, cx, cy, xs.map(s.x[i + 1]), ys.map(s.y[i + 1]), s.color,
                 1.6, s.dashed);
      if (s.markers) svg_circle(svg, cx, cy, 2.6, s.color);
    }
  }

  double ly = y0 + 14.0;
  const double lx = x0 + w - 160.0;
  for (const Series& s : panel.series) {
    svg_line(svg, lx, ly - 4.0, lx + 22.0, ly - 4.0, s.color, 1.8, s.dashed);
    svg_text(svg, lx + 28.0, ly, s.label, 11.0, "start");
    ly += 15.0;
  }
  if (panel.hline) {
    svg_line(svg, lx, ly - 4.0, lx + 22.0, ly - 4.0, "#555555", 1.2, true);
    svg_text(svg, lx + 28.0, ly, panel.hline_label, 11.0, "start");
  }
}

std::string render(const std::vector<Panel>& panels) {
  const double width = 680.0;
  const double slot_h = 250.0;
  const double height = 16.0 + slot_h * static_cast<double>(panels.size());
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(width) +
         "\" height=\"" + px(height) + "\" viewBox=\"0 0 " + px(width) + " " +
         px(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i)
    render_panel(svg, panels[i], 8.0 + slot_h * static_cast<double>(i), width,
                 slot_h);
  svg += "</svg>\n";
  return svg;
}

// Metric CSV layout: leading axis columns, then <stem>_mean/<stem>_var
// pairs, optionally mirrored as baseline_<stem>_*.
std::vector<Panel> metric_panels(const Table& t) {
  std::vector<Panel> panels;
  const std::vector<double> x = t.column(0);
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    const std::string& name = t.header[c];
    if (name.size() < 6 || name.substr(name.size() - 5) != "_mean") continue;
    if (name.rfind("baseline_", 0) == 0) continue;
    const std::string stem = name.substr(0, name.size() - 5);

    Panel p;
    p.x_label = t.header[0];
    p.y_label = stem;
    Series main;
    main.label = "hybrid";
    main.x = x;
    main.y = t.column(static_cast<int>(c));
    main.color = kPalette[0];
    if (const int vc = t.col(stem + "_var"); vc >= 0) {
      for (const double v : t.column(vc))
        main.sd.push_back(std::sqrt(std::max(0.0, v)));
    }
    p.series.push_back(std::move(main));

    if (const int bc = t.col("baseline_" + stem + "_mean"); bc >= 0) {
      Series base;
      base.label = "random baseline";
      base.x = x;
      base.y = t.column(bc);
      base.color = kPalette[1];
      base.dashed = true;
      if (const int vc = t.col("baseline_" + stem + "_var"); vc >= 0) {
        for (const double v : t.column(vc))
          base.sd.push_back(std::sqrt(std::max(0.0, v)));
      }
      p.series.push_back(std::move(base));
    }
    panels.push_back(std::move(p));
  }
  if (panels.empty())
    throw input_error("plot: CSV has no *_mean columns to draw");
  return panels;
}

std::vector<Panel> calls_panels(const Table& t) {
  const std::vector<double> x = t.column(t.require("budget"));
  Panel p;
  p.x_label = "qubit budget";
  p.y_label = "calls";
  p.log_y = true;
  Series classical;
  classical.label = "classical calls";
  classical.x = x;
  classical.y = t.column(t.require("classical_calls"));
  classical.color = kPalette[0];
  Series quantum;
  quantum.label = "quantum calls";
  quantum.x = x;
  quantum.y = t.column(t.require("quantum_calls"));
  quantum.color = kPalette[1];
  p.series = {std::move(classical), std::move(quantum)};
  p.hline = t.rows.front()[static_cast<std::size_t>(t.require("kp_bb_calls"))];
  p.hline_label = "full classical bb";
  return {std::move(p)};
}

std::vector<Panel> gap_panels(const Table& t) {
  const std::vector<double> m = t.column(t.require("m"));
  const std::vector<double> gap = t.column(t.require("min_gap"));
  Panel p;
  p.x_label = "qubits";
  p.y_label = "min gap";
  p.log_x = true;
  p.log_y = true;
  Series pts;
  pts.label = "scans";
  pts.x = m;
  pts.y = gap;
  pts.color = kPalette[0];
  pts.line = false;
  p.series.push_back(std::move(pts));

  std::vector<std::pair<double, double>> xy;
  for (std::size_t i = 0; i < m.size(); ++i) xy.emplace_back(m[i], gap[i]);
  const PowerLawFit fit = fit_power_law(xy);
  const auto [mn, mx] = std::minmax_element(m.begin(), m.end());
  Series line;
  line.label = "power-law fit";
  line.x = {*mn, *mx};
  line.y = {fit.prefactor * std::pow(*mn, fit.exponent),
            fit.prefactor * std::pow(*mx, fit.exponent)};
  line.color = kPalette[1];
  line.markers = false;
  line.dashed = true;
  p.series.push_back(std::move(line));
  return {std::move(p)};
}

std::vector<Panel> sweeps_panels(const Table& t) {
  const int nc = t.require("n");
  const int sc = t.require("sweeps");
  std::vector<double> sizes;
  for (const auto& row : t.rows) {
    const double n = row[static_cast<std::size_t>(nc)];
    if (std::find(sizes.begin(), sizes.end(), n) == sizes.end())
      sizes.push_back(n);
  }
  const auto panel_for = [&](const char* stem) {
    Panel p;
    p.x_label = "sweeps";
    p.y_label = stem;
    p.log_x = true;
    const int mc = t.require(std::string(stem) + "_mean");
    const int vc = t.require(std::string(stem) + "_var");
    int color = 0;
    for (const double n : sizes) {
      Series s;
      s.label = "n=" + tick_label(n);
      s.color = kPalette[color++ % kPaletteSize];
      for (const auto& row : t.rows) {
        if (row[static_cast<std::size_t>(nc)] != n) continue;
        s.x.push_back(row[static_cast<std::size_t>(sc)]);
        s.y.push_back(row[static_cast<std::size_t>(mc)]);
        s.sd.push_back(
            std::sqrt(std::max(0.0, row[static_cast<std::size_t>(vc)])));
      }
      p.series.push_back(std::move(s));
    }
    return p;
  };
  return {panel_for("p0"), panel_for("min_energy")};
}

}  // namespace

const char* plot_kind_name(PlotKind kind) {
  switch (kind) {
    case PlotKind::kCalls:
      return "calls";
    case PlotKind::kKpMetrics:
      return "kp-metrics";
    case PlotKind::kTspMetrics:
      return "tsp-metrics";
    case PlotKind::kGap:
      return "gap";
    case PlotKind::kSweeps:
      return "sweeps";
  }
  return "calls";
}

PlotKind plot_kind_from_name(const std::string& name) {
  if (name == "calls") return PlotKind::kCalls;
  if (name == "kp-metrics") return PlotKind::kKpMetrics;
  if (name == "tsp-metrics") return PlotKind::kTspMetrics;
  if (name == "gap") return PlotKind::kGap;
  if (name == "sweeps") return PlotKind::kSweeps;
  throw input_error("plot: unknown kind '" + name + "'");
}

std::filesystem::path emit_plot(const std::filesystem::path& csv_path,
                                PlotKind kind,
                                const std::filesystem::path& out_svg) {
  const Table t = parse_csv(read_text_file(csv_path));
  std::vector<Panel> panels;
  switch (kind) {
    case PlotKind::kCalls:
      panels = calls_panels(t);
      break;
    case PlotKind::kKpMetrics:
    case PlotKind::kTspMetrics:
      panels = metric_panels(t);
      break;
    case PlotKind::kGap:
      panels = gap_panels(t);
      break;
    case PlotKind::kSweeps:
      panels = sweeps_panels(t);
      break;
  }
  write_text_file(out_svg, render(panels));
  return out_svg;
}

}  // namespace hbb
