#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "corrtwo/dataset.hpp"

namespace corrtwo {

enum class Direction { None, Same, Opposite };
enum class Order { None, Nu1Before, Nu1After };

/// Combined reading of one (Phi, Psi) pair under the Noda sign rules.
struct Verdict {
  Direction direction = Direction::None;
  Order order = Order::None;

  bool indeterminate() const noexcept {
    return direction == Direction::None && order == Order::None;
  }
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

std::string_view to_string(Direction d) noexcept;
std::string_view to_string(Order o) noexcept;
std::string to_string(const Verdict& v);

/// Values with magnitude <= eps count as zero.
///  - phi > 0: same direction; phi < 0: opposite direction
///  - psi > 0: nu1 changes before nu2; psi < 0: after
///  - the order is reversed when phi < 0
/// When only phi clears the dead-band, only the direction is reported.
Verdict classify_cross_peak(double phi, double psi, double eps);

struct AutoPeak {
  double nu = 0.0;
  std::size_t index = 0;
  double sync = 0.0;
};

struct CrossPeak {
  double nu1 = 0.0, nu2 = 0.0;
  std::size_t index1 = 0, index2 = 0;
  double sync = 0.0, async = 0.0;
  Verdict verdict;
};

struct PeakReport {
  std::vector<AutoPeak> auto_peaks;
  std::vector<CrossPeak> cross_peaks;
  double eps = 0.0;
};

/// 1e-3 * max(max|Phi|, max|Psi|).
double default_dead_band(const CorrelationSpectra& corr);

/// Local extrema of |Phi| and of |Psi| (8-neighbourhood) above
/// threshold_fraction times the respective maximum. For homo results the
/// diagonal extrema of Phi become auto peaks and only cross peaks with
/// nu1 index < nu2 index are listed (the rest mirror them). Every cross peak
/// is classified with the given dead-band (default_dead_band when eps <= 0).
PeakReport find_peaks(const CorrelationSpectra& corr, double threshold_fraction, double eps = 0.0);

/// Verdict at the grid points closest to (nu1, nu2).
CrossPeak classify_at(const CorrelationSpectra& corr, double nu1, double nu2, double eps);

/// Aligned plain-text table.
std::string format_report(const PeakReport& report);

/// "kind,nu1,nu2,sync,async,direction,order" rows.
std::string report_long_form(const PeakReport& report);

}  // namespace corrtwo
