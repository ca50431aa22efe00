#pragma once

#include <string>

namespace sqz {

struct PlotOptions {
  std::string x_column;      // defaults: "value" then "phi_rad"
  std::string y_column;      // defaults: "min_db" then "variance_snu"
  std::string title;
  int width = 640;
  int height = 420;
  bool zero_db_line = true;  // horizontal reference at y = 0
};

// Render a line/scatter plot of two CSV columns as a self-contained SVG.
// Output bytes depend only on the inputs. Throws ParseError /
// MissingColumnError on malformed input.
std::string render_svg_plot(const std::string& csv_text,
                            const PlotOptions& options);

}  // namespace sqz
