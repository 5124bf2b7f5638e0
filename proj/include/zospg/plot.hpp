#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace zospg {

struct AggregateCurve;

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> low;   ///< CI band, empty for none
  std::vector<double> high;
  bool dashed = false;       ///< bound overlays

  static PlotSeries from_curve(const AggregateCurve& curve);
  static PlotSeries overlay(std::string label, std::vector<double> x, std::vector<double> y);
};

struct PlotOptions {
  std::string title;
  std::string caption;
  std::string x_label = "iteration k";
  std::string y_label = "f(x_k) - f*";
  int width = 800;
  int height = 560;
};

struct RenderedPlot {
  std::string svg;
  std::vector<std::string> warnings;
  std::size_t legend_entries = 0;
};

/// Standalone SVG 1.1 log-log plot. Non-positive values are clipped to the
/// plot floor with a warning. Throws std::invalid_argument on empty input.
RenderedPlot render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options = {});

/// render_svg + write; returns the warnings.
std::vector<std::string> write_svg(const std::filesystem::path& path,
                                   const std::vector<PlotSeries>& series,
                                   const PlotOptions& options = {});

}  // namespace zospg
