#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corrtwo/dataset.hpp"

namespace corrtwo {

using Range = std::pair<double, double>;

struct Color {
  std::uint8_t r = 0, g = 0, b = 0;
  bool transparent = true;

  static Color rgb(std::uint8_t r, std::uint8_t g, std::uint8_t b) { return {r, g, b, false}; }
  /// "#rrggbb", or "none" when transparent.
  std::string hex() const;
  friend bool operator==(const Color&, const Color&) = default;
};

/// Threshold levels with their colors.
///
/// `levels` is the full symmetric scale on [-max|zlim|, max|zlim|] and
/// always has odd length; colors are assigned on it. The thresholds lying
/// inside zlim form the retained range [first, first + count). Drawing uses
/// `drawn_levels`, `count` thresholds spread evenly over zlim, each with the
/// color of the matching retained threshold.
struct LevelScale {
  std::vector<double> levels;
  std::vector<Color> colors;
  std::size_t first = 0;
  std::size_t count = 0;
  Range zlim{0.0, 0.0};
  std::vector<double> drawn_levels;

  std::size_t center() const { return levels.size() / 2; }
  std::vector<Color> drawn_colors() const;
};

/// Colors of the two ramps, sampled at n evenly spaced positions.
/// Cold: darkblue -> cyan. Warm: yellow -> red -> darkred.
std::vector<Color> cold_ramp(std::size_t n);
std::vector<Color> warm_ramp(std::size_t n);

/// `zlim` defaults to the value range of `z`. An even N is raised by one.
/// Without a cutout negative thresholds take the cold ramp and positive ones
/// the warm ramp; with a cutout (lo, hi) only thresholds <= lo and >= hi are
/// colored. The central threshold is always transparent.
LevelScale compute_levels(const Matrix& z, std::optional<Range> zlim, int level_count,
                          std::optional<Range> cutout = std::nullopt);

enum class PlotKind { Sync, Async };
enum class PlotMode { Contour, Image };

struct PlotSpec {
  PlotKind which = PlotKind::Sync;
  PlotMode mode = PlotMode::Contour;
  int level_count = 20;
  std::optional<Range> xlim, ylim, zlim, cutout;
  bool legend = true;
  /// Spectra drawn above and to the left; the stored references by default.
  /// Either may be disabled by `show_marginal_*`.
  std::optional<std::vector<double>> marginal_x, marginal_y;
  bool show_marginal_x = true, show_marginal_y = true;
  /// Defaults to true for homo spectra.
  std::optional<bool> diagonal;
  std::string xlab = "nu1", ylab = "nu2";

  void validate() const;
};

struct AxisWindow {
  std::size_t begin = 0, end = 0;  // half-open
  std::size_t size() const { return end - begin; }
};

/// Indices with lo < axis < hi (open window; full axis when absent).
AxisWindow window_axis(const std::vector<double>& axis, std::optional<Range> lim);
std::pair<AxisWindow, AxisWindow> window_axes(const CorrelationSpectra& corr,
                                              std::optional<Range> xlim,
                                              std::optional<Range> ylim);

/// R-style (type 7) sample quantile of sorted or unsorted values.
double quantile(std::vector<double> values, double p);

/// SVG document for one plot; identical inputs give identical bytes.
std::string render_plot(const CorrelationSpectra& corr, const PlotSpec& spec, unsigned workers = 1);

}  // namespace corrtwo
