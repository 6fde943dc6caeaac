#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hlq/error.hpp"

namespace hlq::svg {
namespace {

constexpr double kWidth = 720, kHeight = 450;
constexpr double kLeft = 80, kRight = 20, kTop = 40, kBottom = 60;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Scale {
  double lo, hi;
  bool log;
  double px_lo, px_hi;

  double map(double v) const {
    const double a = log ? std::log10(v) : v;
    const double b = log ? std::log10(lo) : lo;
    const double c = log ? std::log10(hi) : hi;
    return px_lo + (a - b) / (c - b) * (px_hi - px_lo);
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double e = std::floor(std::log10(lo)); e <= std::ceil(std::log10(hi)); e += 1.0) {
        const double v = std::pow(10.0, e);
        if (v >= lo * (1 - 1e-12) && v <= hi * (1 + 1e-12)) out.push_back(v);
      }
      if (out.size() < 2) out = {lo, hi};
      return out;
    }
    for (int i = 0; i <= 5; ++i) out.push_back(lo + (hi - lo) * i / 5.0);
    return out;
  }
};

Scale make_scale(double lo, double hi, bool log, double px_lo, double px_hi) {
  if (!(lo < hi)) {
    const double pad = lo == 0 ? 1.0 : std::abs(lo) * 0.05;
    lo -= log ? lo * 0.5 : pad;
    hi += log ? hi : pad;
  } else if (!log) {
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  return {lo, hi, log, px_lo, px_hi};
}

std::string frame(const Axes& axes, const Scale& sx, const Scale& sy) {
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
       "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
       escape(axes.title) + "</text>\n";
  s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(kWidth - kLeft - kRight) +
       "\" height=\"" + num(kHeight - kTop - kBottom) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double v : sx.ticks()) {
    const double x = sx.map(v);
    s += "<line x1=\"" + num(x) + "\" y1=\"" + num(kHeight - kBottom) + "\" x2=\"" + num(x) + "\" y2=\"" +
         num(kHeight - kBottom + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(x) + "\" y=\"" + num(kHeight - kBottom + 18) + "\" text-anchor=\"middle\">" +
         tick_label(v) + "</text>\n";
  }
  for (double v : sy.ticks()) {
    const double y = sy.map(v);
    s += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(y) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" + tick_label(v) +
         "</text>\n";
  }
  s += "<text x=\"" + num(kWidth / 2) + "\" y=\"" + num(kHeight - 15) + "\" text-anchor=\"middle\">" +
       escape(axes.x_label) + "</text>\n";
  s += "<text x=\"18\" y=\"" + num(kHeight / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       num(kHeight / 2) + ")\">" + escape(axes.y_label) + "</text>\n";
  return s;
}

}  // namespace

std::string line_plot(const Axes& axes, const std::vector<Series>& series) {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& ser : series) {
    if (ser.x.size() != ser.y.size()) fail(ErrorKind::precondition, "series x/y length mismatch");
    for (std::size_t i = 0; i < ser.x.size(); ++i) {
      if ((axes.log_x && !(ser.x[i] > 0)) || (axes.log_y && !(ser.y[i] > 0))) continue;
      x_lo = std::min(x_lo, ser.x[i]);
      x_hi = std::max(x_hi, ser.x[i]);
      y_lo = std::min(y_lo, ser.y[i]);
      y_hi = std::max(y_hi, ser.y[i]);
    }
  }
  if (!std::isfinite(x_lo) || !std::isfinite(y_lo)) fail(ErrorKind::precondition, "nothing to plot");
  const Scale sx = make_scale(x_lo, x_hi, axes.log_x, kLeft, kWidth - kRight);
  const Scale sy = make_scale(y_lo, y_hi, axes.log_y, kHeight - kBottom, kTop);

  std::string s = frame(axes, sx, sy);
  double legend_y = kTop + 16;
  for (const auto& ser : series) {
    std::string pts;
    for (std::size_t i = 0; i < ser.x.size(); ++i) {
      if ((axes.log_x && !(ser.x[i] > 0)) || (axes.log_y && !(ser.y[i] > 0))) continue;
      const double x = sx.map(ser.x[i]), y = sy.map(ser.y[i]);
      if (ser.markers) {
        s += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"2\" fill=\"" + ser.color + "\"/>\n";
      } else {
        if (!pts.empty()) pts += ' ';
        pts += num(x) + ',' + num(y);
      }
    }
    if (!ser.markers && !pts.empty())
      s += "<polyline fill=\"none\" stroke=\"" + ser.color + "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    if (!ser.label.empty()) {
      s += "<rect x=\"" + num(kWidth - kRight - 190) + "\" y=\"" + num(legend_y - 9) +
           "\" width=\"10\" height=\"10\" fill=\"" + ser.color + "\"/>\n";
      s += "<text x=\"" + num(kWidth - kRight - 175) + "\" y=\"" + num(legend_y) + "\">" + escape(ser.label) +
           "</text>\n";
      legend_y += 16;
    }
  }
  s += "</svg>\n";
  return s;
}

std::string histogram(const Axes& axes, const std::vector<double>& values, int bins, double marker) {
  if (values.empty() || bins < 1) fail(ErrorKind::precondition, "histogram needs values and bins >= 1");
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  double lo = *mn, hi = *mx;
  if (std::isfinite(marker)) {
    lo = std::min(lo, marker);
    hi = std::max(hi, marker);
  }
  if (!(lo < hi)) {
    lo -= 0.5;
    hi += 0.5;
  }
  std::vector<int> counts(bins, 0);
  for (double v : values) {
    int b = static_cast<int>((v - lo) / (hi - lo) * bins);
    counts[std::clamp(b, 0, bins - 1)]++;
  }
  const int peak = *std::max_element(counts.begin(), counts.end());
  const Scale sx{lo, hi, false, kLeft, kWidth - kRight};
  const Scale sy{0.0, peak * 1.05, false, kHeight - kBottom, kTop};

  std::string s = frame(axes, sx, sy);
  const double w = (hi - lo) / bins;
  for (int b = 0; b < bins; ++b) {
    if (counts[b] == 0) continue;
    const double x0 = sx.map(lo + b * w), x1 = sx.map(lo + (b + 1) * w);
    const double y = sy.map(counts[b]);
    s += "<rect x=\"" + num(x0) + "\" y=\"" + num(y) + "\" width=\"" + num(x1 - x0) + "\" height=\"" +
         num(kHeight - kBottom - y) + "\" fill=\"#4c72b0\" stroke=\"white\"/>\n";
  }
  if (std::isfinite(marker)) {
    const double x = sx.map(marker);
    s += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x) + "\" y2=\"" +
         num(kHeight - kBottom) + "\" stroke=\"#d62728\" stroke-dasharray=\"6 4\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace hlq::svg
