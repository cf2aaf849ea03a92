// Copyright 2026 The SoftModes Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "softmodes/error.hpp"
#include "softmodes/harness.hpp"

namespace softmodes {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 400;
constexpr double kLeft = 60;
constexpr double kRight = 150;
constexpr double kTop = 40;
constexpr double kBottom = 50;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, std::round(v * 100.0) / 100.0);
  return std::string(buf, res.ptr);
}

std::string label_num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 4);
  return std::string(buf, res.ptr);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Range {
  double lo;
  double hi;
  double map(double v, double from, double to) const {
    return from + (v - lo) / (hi - lo) * (to - from);
  }
};

Range padded(double lo, double hi) {
  if (!(hi > lo)) return {lo - 0.5, hi + 0.5};
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

void check_series(std::span<const PlotSeries> series) {
  if (series.empty()) throw DomainError("plot needs at least one series");
  for (const PlotSeries& s : series) {
    if (s.x.empty()) throw DomainError("plot series '" + s.name + "' is empty");
    if (s.mean.size() != s.x.size() || s.stddev.size() != s.x.size()) {
      throw DomainError("plot series '" + s.name + "' has ragged columns");
    }
  }
}

}  // namespace

std::string render_svg(std::span<const PlotSeries> series, PlotKind kind,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label) {
  check_series(series);
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  std::vector<double> categories;
  for (const PlotSeries& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.mean[i] - s.stddev[i]);
      yhi = std::max(yhi, s.mean[i] + s.stddev[i]);
      categories.push_back(s.x[i]);
    }
  }
  std::sort(categories.begin(), categories.end());
  categories.erase(std::unique(categories.begin(), categories.end()), categories.end());
  if (kind == PlotKind::kBar) ylo = std::min(ylo, 0.0);
  const Range xr = padded(xlo, xhi);
  const Range yr = padded(ylo, yhi);
  const double plot_x0 = kLeft, plot_x1 = kWidth - kRight;
  const double plot_y0 = kHeight - kBottom, plot_y1 = kTop;
  auto px = [&](double v) { return xr.map(v, plot_x0, plot_x1); };
  auto py = [&](double v) { return yr.map(v, plot_y0, plot_y1); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
         "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " +
         fmt(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fmt(kWidth) + "\" height=\"" + fmt(kHeight) +
         "\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"20\" text-anchor=\"middle\">" +
         escape(title) + "</text>\n";
  // Axes with min / max tick labels.
  svg += "<line x1=\"" + fmt(plot_x0) + "\" y1=\"" + fmt(plot_y0) + "\" x2=\"" +
         fmt(plot_x1) + "\" y2=\"" + fmt(plot_y0) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt(plot_x0) + "\" y1=\"" + fmt(plot_y0) + "\" x2=\"" +
         fmt(plot_x0) + "\" y2=\"" + fmt(plot_y1) + "\" stroke=\"black\"/>\n";
  for (double yv : {ylo, yhi}) {
    svg += "<text x=\"" + fmt(plot_x0 - 5) + "\" y=\"" + fmt(py(yv) + 4) +
           "\" text-anchor=\"end\">" + label_num(yv) + "</text>\n";
  }
  svg += "<text x=\"" + fmt((plot_x0 + plot_x1) / 2) + "\" y=\"" + fmt(kHeight - 10) +
         "\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";
  svg += "<text x=\"15\" y=\"" + fmt((plot_y0 + plot_y1) / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 15 " +
         fmt((plot_y0 + plot_y1) / 2) + ")\">" + escape(y_label) + "</text>\n";

  auto error_bar = [&](double x, double mean, double sd, const char* color) {
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(py(mean - sd)) + "\" x2=\"" + fmt(x) +
           "\" y2=\"" + fmt(py(mean + sd)) + "\" stroke=\"" + color + "\"/>\n";
  };

  if (kind == PlotKind::kLine) {
    for (double c : categories) {
      svg += "<text x=\"" + fmt(px(c)) + "\" y=\"" + fmt(plot_y0 + 15) +
             "\" text-anchor=\"middle\">" + label_num(c) + "</text>\n";
    }
    for (std::size_t s = 0; s < series.size(); ++s) {
      const char* color = kPalette[s % std::size(kPalette)];
      std::string points;
      for (std::size_t i = 0; i < series[s].x.size(); ++i) {
        if (i) points.push_back(' ');
        points += fmt(px(series[s].x[i])) + "," + fmt(py(series[s].mean[i]));
      }
      svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
      for (std::size_t i = 0; i < series[s].x.size(); ++i) {
        error_bar(px(series[s].x[i]), series[s].mean[i], series[s].stddev[i], color);
      }
    }
  } else {
    const double slot = (plot_x1 - plot_x0) / static_cast<double>(categories.size());
    const double bar = 0.8 * slot / static_cast<double>(series.size());
    for (std::size_t c = 0; c < categories.size(); ++c) {
      const double x0 = plot_x0 + slot * static_cast<double>(c) + 0.1 * slot;
      svg += "<text x=\"" + fmt(x0 + 0.4 * slot) + "\" y=\"" + fmt(plot_y0 + 15) +
             "\" text-anchor=\"middle\">" + label_num(categories[c]) + "</text>\n";
      for (std::size_t s = 0; s < series.size(); ++s) {
        const PlotSeries& ser = series[s];
        const auto it = std::find(ser.x.begin(), ser.x.end(), categories[c]);
        if (it == ser.x.end()) continue;
        const auto i = static_cast<std::size_t>(it - ser.x.begin());
        const char* color = kPalette[s % std::size(kPalette)];
        const double left = x0 + bar * static_cast<double>(s);
        const double top = py(std::max(ser.mean[i], 0.0));
        const double base = py(std::max(yr.lo, 0.0));
        svg += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(bar) +
               "\" height=\"" + fmt(std::max(base - top, 0.0)) + "\" fill=\"" + color +
               "\"/>\n";
        error_bar(left + bar / 2, ser.mean[i], ser.stddev[i], "black");
      }
    }
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double y = kTop + 18.0 * static_cast<double>(s);
    svg += "<rect x=\"" + fmt(plot_x1 + 15) + "\" y=\"" + fmt(y) +
           "\" width=\"12\" height=\"12\" fill=\"" + kPalette[s % std::size(kPalette)] +
           "\"/>\n";
    svg += "<text x=\"" + fmt(plot_x1 + 32) + "\" y=\"" + fmt(y + 10) + "\">" +
           escape(series[s].name) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void emit_plot(std::span<const PlotSeries> series, PlotKind kind,
               const std::filesystem::path& path, const std::string& title,
               const std::string& x_label, const std::string& y_label) {
  const std::string svg = render_svg(series, kind, title, x_label, y_label);
  std::string csv = "series,x,mean,std\n";
  for (const PlotSeries& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      char buf[3][64];
      auto a = std::to_chars(buf[0], buf[0] + 64, s.x[i]);
      auto b = std::to_chars(buf[1], buf[1] + 64, s.mean[i]);
      auto c = std::to_chars(buf[2], buf[2] + 64, s.stddev[i]);
      csv += s.name + "," + std::string(buf[0], a.ptr) + "," + std::string(buf[1], b.ptr) +
             "," + std::string(buf[2], c.ptr) + "\n";
    }
  }
  auto write = [](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot write " + p.string());
    out << text;
    if (!out) throw IoError("write failed for " + p.string());
  };
  write(path, svg);
  std::filesystem::path csv_path = path;
  csv_path.replace_extension(".csv");
  write(csv_path, csv);
}

}  // namespace softmodes
