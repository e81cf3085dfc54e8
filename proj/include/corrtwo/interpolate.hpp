#pragma once

#include <span>
#include <vector>

namespace corrtwo {

/// Piecewise-linear interpolant through (x, y) with strictly increasing x.
class LinearInterpolant {
public:
  LinearInterpolant(std::span<const double> x, std::span<const double> y);
  double operator()(double at) const;

private:
  std::vector<double> x_, y_;
};

/// Natural cubic spline (zero second derivative at both ends) through
/// (x, y) with strictly increasing x. With two nodes it degenerates to the
/// straight line.
class NaturalCubicSpline {
public:
  NaturalCubicSpline(std::span<const double> x, std::span<const double> y);
  double operator()(double at) const;

  /// Second derivatives at the nodes.
  const std::vector<double>& curvatures() const noexcept { return m_; }

private:
  std::vector<double> x_, y_, m_;
};

}  // namespace corrtwo
