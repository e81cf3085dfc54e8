#pragma once

#include <span>
#include <vector>

#include "corrtwo/matrix.hpp"

namespace corrtwo {

struct Point {
  double x = 0.0, y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Polyline {
  std::vector<Point> points;
  bool closed = false;
};

/// Iso-lines of z at `level` by marching squares. z(i, j) sits at
/// (x[i], y[j]). A corner counts as inside when z > level. Crossings are
/// linearly interpolated along each grid edge, always from the lower to the
/// higher grid index. Saddle cells are split according to the mean of their
/// four corners. Segments are chained into polylines in a fixed order.
std::vector<Polyline> contour_lines(const Matrix& z, std::span<const double> x,
                                    std::span<const double> y, double level);

/// Unordered segments (one per crossed cell, two for saddles) before chaining.
std::vector<std::pair<Point, Point>> contour_segments(const Matrix& z, std::span<const double> x,
                                                      std::span<const double> y, double level);

}  // namespace corrtwo
