#pragma once

#include <string>
#include <vector>

namespace hlq::svg {

struct Series {
  std::string color = "#1f77b4";
  std::string label;
  bool markers = false;  // dots instead of a polyline
  std::vector<double> x{};
  std::vector<double> y{};
};

struct Axes {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

std::string line_plot(const Axes& axes, const std::vector<Series>& series);

/// Equal-width bins over [min, max] of values; `marker` draws a vertical
/// reference line when finite.
std::string histogram(const Axes& axes, const std::vector<double>& values, int bins, double marker);

}  // namespace hlq::svg
