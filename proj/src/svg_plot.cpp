#include "sqz/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "sqz/csv.hpp"

namespace sqz {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c; break;
    }
  }
  return out;
}

// round limits outward to a tidy step
void nice_limits(double lo, double hi, double& out_lo, double& out_hi,
                 double& out_step) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  out_lo = std::floor(lo / step) * step;
  out_hi = std::ceil(hi / step) * step;
  out_step = step;
}

}  // namespace

std::string render_svg_plot(const std::string& csv_text,
                            const PlotOptions& options) {
  const CsvTable table = parse_csv(csv_text);
  if (table.rows.empty()) throw ParseError("no data rows", 2);

  auto pick_column = [&](const std::string& wanted,
                         std::initializer_list<const char*> fallbacks) {
    if (!wanted.empty()) return table.column_index(wanted);
    for (const char* name : fallbacks) {
      for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (table.columns[i] == name) return i;
      }
    }
    throw MissingColumnError(*fallbacks.begin());
  };
  const std::size_t cx = pick_column(options.x_column, {"value", "phi_rad"});
  const std::size_t cy =
      pick_column(options.y_column, {"min_db", "variance_snu"});

  std::vector<double> xs, ys;
  xs.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    // rows with a nonempty error cell are skipped, not plotted
    if (!options.y_column.empty() || true) {
      bool bad = false;
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (table.columns[c] == "error" && !table.rows[r][c].empty()) {
          bad = true;
        }
      }
      if (bad) continue;
    }
    xs.push_back(table.number_at(r, cx));
    ys.push_back(table.number_at(r, cy));
  }
  if (xs.empty()) throw ParseError("no plottable rows", 2);

  double x_lo, x_hi, x_step, y_lo, y_hi, y_step;
  nice_limits(*std::min_element(xs.begin(), xs.end()),
              *std::max_element(xs.begin(), xs.end()), x_lo, x_hi, x_step);
  double y_min = *std::min_element(ys.begin(), ys.end());
  double y_max = *std::max_element(ys.begin(), ys.end());
  if (options.zero_db_line) {
    y_min = std::min(y_min, 0.0);
    y_max = std::max(y_max, 0.0);
  }
  nice_limits(y_min, y_max, y_lo, y_hi, y_step);

  const double margin_l = 64, margin_r = 16, margin_t = 32, margin_b = 44;
  const double plot_w = options.width - margin_l - margin_r;
  const double plot_h = options.height - margin_t - margin_b;
  auto px = [&](double x) {
    return margin_l + (x - x_lo) / (x_hi - x_lo) * plot_w;
  };
  auto py = [&](double y) {
    return margin_t + (y_hi - y) / (y_hi - y_lo) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" viewBox=\"0 0 "
      << options.width << ' ' << options.height << "\">\n";
  svg << "<rect width=\"" << options.width << "\" height=\"" << options.height
      << "\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << fmt(margin_l + plot_w / 2)
        << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" "
           "text-anchor=\"middle\">"
        << xml_escape(options.title) << "</text>\n";
  }
  svg << "<rect x=\"" << fmt(margin_l) << "\" y=\"" << fmt(margin_t)
      << "\" width=\"" << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  // ticks
  for (double x = x_lo; x <= x_hi + 0.5 * x_step; x += x_step) {
    svg << "<line x1=\"" << fmt(px(x)) << "\" y1=\"" << fmt(margin_t + plot_h)
        << "\" x2=\"" << fmt(px(x)) << "\" y2=\""
        << fmt(margin_t + plot_h + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(px(x)) << "\" y=\""
        << fmt(margin_t + plot_h + 18)
        << "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"middle\">"
        << fmt(x) << "</text>\n";
  }
  for (double y = y_lo; y <= y_hi + 0.5 * y_step; y += y_step) {
    svg << "<line x1=\"" << fmt(margin_l - 5) << "\" y1=\"" << fmt(py(y))
        << "\" x2=\"" << fmt(margin_l) << "\" y2=\"" << fmt(py(y))
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(margin_l - 8) << "\" y=\"" << fmt(py(y) + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"end\">"
        << fmt(y) << "</text>\n";
  }
  // axis labels
  svg << "<text x=\"" << fmt(margin_l + plot_w / 2) << "\" y=\""
      << fmt(options.height - 8)
      << "\" font-family=\"sans-serif\" font-size=\"12\" "
         "text-anchor=\"middle\">"
      << xml_escape(table.columns[cx]) << "</text>\n";
  svg << "<text x=\"14\" y=\"" << fmt(margin_t + plot_h / 2)
      << "\" font-family=\"sans-serif\" font-size=\"12\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << fmt(margin_t + plot_h / 2) << ")\">" << xml_escape(table.columns[cy])
      << "</text>\n";

  if (options.zero_db_line && 0.0 >= y_lo && 0.0 <= y_hi) {
    svg << "<line x1=\"" << fmt(margin_l) << "\" y1=\"" << fmt(py(0.0))
        << "\" x2=\"" << fmt(margin_l + plot_w) << "\" y2=\"" << fmt(py(0.0))
        << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  }

  svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" "
         "points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) svg << ' ';
    svg << fmt(px(xs[i])) << ',' << fmt(py(ys[i]));
  }
  svg << "\"/>\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    svg << "<circle cx=\"" << fmt(px(xs[i])) << "\" cy=\"" << fmt(py(ys[i]))
        << "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace sqz
