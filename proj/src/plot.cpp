#include "zospg/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "zospg/experiment.hpp"

namespace zospg {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

bool usable(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

PlotSeries PlotSeries::from_curve(const AggregateCurve& curve) {
  PlotSeries s;
  s.label = curve.label.empty() ? curve.key : curve.label;
  for (std::size_t i = 0; i < curve.iterations.size(); ++i) {
    s.x.push_back(static_cast<double>(curve.iterations[i]));
    s.y.push_back(curve.mean[i]);
  }
  const bool band = std::any_of(curve.half_width.begin(), curve.half_width.end(),
                                [](double h) { return std::isfinite(h); });
  if (band) {
    for (std::size_t i = 0; i < curve.mean.size(); ++i) {
      s.low.push_back(curve.mean[i] - curve.half_width[i]);
      s.high.push_back(curve.mean[i] + curve.half_width[i]);
    }
  }
  return s;
}

PlotSeries PlotSeries::overlay(std::string label, std::vector<double> x, std::vector<double> y) {
  PlotSeries s;
  s.label = std::move(label);
  s.x = std::move(x);
  s.y = std::move(y);
  s.dashed = true;
  return s;
}

RenderedPlot render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options) {
  if (series.empty()) throw std::invalid_argument("plot: no series to draw");
  RenderedPlot out;

  double xmin = std::numeric_limits<double>::infinity(), xmax = 0.0;
  double ymin = std::numeric_limits<double>::infinity(), ymax = 0.0;
  for (const auto& s : series) {
    if (s.x.empty()) throw std::invalid_argument(fmt::format("plot: series '{}' is empty", s.label));
    if (s.x.size() != s.y.size()) {
      throw std::invalid_argument(fmt::format("plot: series '{}' has mismatched x/y", s.label));
    }
    if (!s.low.empty() && (s.low.size() != s.x.size() || s.high.size() != s.x.size())) {
      throw std::invalid_argument(fmt::format("plot: series '{}' has a mismatched band", s.label));
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!usable(s.x[i])) {
        throw std::invalid_argument(fmt::format("plot: series '{}' has a non-positive x", s.label));
      }
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      if (usable(s.y[i])) {
        ymin = std::min(ymin, s.y[i]);
        ymax = std::max(ymax, s.y[i]);
      }
      if (!s.high.empty() && usable(s.high[i])) ymax = std::max(ymax, s.high[i]);
    }
  }
  if (!(ymax > 0.0)) {
    ymin = 1e-3;
    ymax = 1.0;
  }
  double lx0 = std::floor(std::log10(xmin)), lx1 = std::ceil(std::log10(xmax));
  double ly0 = std::floor(std::log10(ymin)), ly1 = std::ceil(std::log10(ymax));
  if (lx1 <= lx0) lx1 = lx0 + 1;
  if (ly1 <= ly0) ly1 = ly0 + 1;
  const double floor_value = std::pow(10.0, ly0);

  const double W = options.width, H = options.height;
  const double left = 80, right = 220, top = 50, bottom = 80;
  const double pw = W - left - right, ph = H - top - bottom;
  const auto px = [&](double x) { return left + (std::log10(x) - lx0) / (lx1 - lx0) * pw; };
  const auto py = [&](double y) {
    return top + (ly1 - std::log10(std::max(y, floor_value))) / (ly1 - ly0) * ph;
  };

  std::string svg;
  svg += fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      W, H);
  svg += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", W, H);
  if (!options.title.empty()) {
    svg += fmt::format("<text x=\"{}\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                       left + pw / 2, escape(options.title));
  }

  svg += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (double d = lx0; d <= lx1; d += 1) {
    svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\"/>\n",
                       px(std::pow(10.0, d)), top, top + ph);
  }
  for (double d = ly0; d <= ly1; d += 1) {
    svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\"/>\n", left,
                       py(std::pow(10.0, d)), left + pw);
  }
  svg += "</g>\n";
  svg += fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"black\"/>\n",
      left, top, pw, ph);
  for (double d = lx0; d <= lx1; d += 1) {
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">1e{}</text>\n",
                       px(std::pow(10.0, d)), top + ph + 18, static_cast<int>(d));
  }
  for (double d = ly0; d <= ly1; d += 1) {
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">1e{}</text>\n", left - 6,
                       py(std::pow(10.0, d)) + 4, static_cast<int>(d));
  }
  svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                     left + pw / 2, top + ph + 40, escape(options.x_label));
  svg += fmt::format(
      "<text x=\"20\" y=\"{0:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {0:.2f})\">{1}</text>\n",
      top + ph / 2, escape(options.y_label));

  svg += fmt::format("<clipPath id=\"plotarea\"><rect x=\"{}\" y=\"{}\" width=\"{:.2f}\" height=\"{:.2f}\"/></clipPath>\n",
                     left, top, pw, ph);
  svg += "<g clip-path=\"url(#plotarea)\">\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    std::size_t clipped = 0;
    for (double y : s.y) clipped += usable(y) ? 0 : 1;
    if (clipped > 0) {
      out.warnings.push_back(fmt::format(
          "plot: series '{}': {} non-positive value(s) clipped to the plot floor {:g}", s.label,
          clipped, floor_value));
    }
    if (!s.low.empty()) {
      std::string pts;
      for (std::size_t j = 0; j < s.x.size(); ++j) {
        pts += fmt::format("{:.2f},{:.2f} ", px(s.x[j]), py(s.high[j]));
      }
      for (std::size_t j = s.x.size(); j-- > 0;) {
        pts += fmt::format("{:.2f},{:.2f} ", px(s.x[j]), py(s.low[j]));
      }
      svg += fmt::format("<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.2\" stroke=\"none\"/>\n",
                         pts, color);
    }
    std::string pts;
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      pts += fmt::format("{:.2f},{:.2f} ", px(s.x[j]), py(s.y[j]));
    }
    svg += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.6\"{}/>\n",
                       pts, color, s.dashed ? " stroke-dasharray=\"6,4\"" : "");
  }
  svg += "</g>\n";

  svg += "<g class=\"legend\">\n";
  const double lx = left + pw + 14;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double ly = top + 14 + 20.0 * static_cast<double>(i);
    svg += fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" stroke-width=\"2\"{}/>\n",
        lx, ly, lx + 24, ly, kPalette[i % std::size(kPalette)],
        series[i].dashed ? " stroke-dasharray=\"6,4\"" : "");
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", lx + 30, ly + 4,
                       escape(series[i].label));
    ++out.legend_entries;
  }
  svg += "</g>\n";
  if (!options.caption.empty()) {
    svg += fmt::format("<text x=\"{}\" y=\"{:.2f}\" font-size=\"11\" fill=\"#444444\">{}</text>\n",
                       left, H - 12, escape(options.caption));
  }
  svg += "</svg>\n";
  out.svg = std::move(svg);
  return out;
}

std::vector<std::string> write_svg(const std::filesystem::path& path,
                                   const std::vector<PlotSeries>& series,
                                   const PlotOptions& options) {
  RenderedPlot plot = render_svg(series, options);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << plot.svg;
  return plot.warnings;
}

}  // namespace zospg
