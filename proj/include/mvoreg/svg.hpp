#pragma once

#include <string>
#include <vector>

namespace mvoreg::svg {

struct Series {
  enum class Style { points, line };

  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  Style style = Style::line;
  std::string color = "#1f77b4";
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  /// Logarithmic y axis; non-positive values are dropped.
  bool log_y = false;
  int width = 720;
  int height = 420;
};

/// Self-contained SVG document. Non-finite points are skipped; output is a
/// pure function of the inputs.
std::string render(const Plot& plot, const std::vector<Series>& series);

}  // namespace mvoreg::svg
