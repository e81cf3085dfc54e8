#include "corrtwo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <map>
#include <utility>

#include "corrtwo/error.hpp"
#include "corrtwo/numfmt.hpp"

namespace corrtwo {

std::string_view to_string(Direction d) noexcept {
  switch (d) {
    case Direction::Same: return "same-direction";
    case Direction::Opposite: return "opposite-direction";
    case Direction::None: break;
  }
  return "none";
}

std::string_view to_string(Order o) noexcept {
  switch (o) {
    case Order::Nu1Before: return "nu1-before-nu2";
    case Order::Nu1After: return "nu1-after-nu2";
    case Order::None: break;
  }
  return "none";
}

std::string to_string(const Verdict& v) {
  if (v.indeterminate()) return "indeterminate";
  return std::string(to_string(v.direction)) + "/" + std::string(to_string(v.order));
}

Verdict classify_cross_peak(double phi, double psi, double eps) {
  if (!(eps > 0.0)) throw UsageError("dead-band eps must be positive");
  Verdict v;
  if (phi > eps) v.direction = Direction::Same;
  else if (phi < -eps) v.direction = Direction::Opposite;
  if (psi > eps) v.order = Order::Nu1Before;
  else if (psi < -eps) v.order = Order::Nu1After;
  if (v.direction == Direction::Opposite && v.order != Order::None)
    v.order = v.order == Order::Nu1Before ? Order::Nu1After : Order::Nu1Before;
  return v;
}

double default_dead_band(const CorrelationSpectra& corr) {
  return 1e-3 * std::max(max_abs(corr.sync), max_abs(corr.async));
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> local_extrema(const Matrix& z, double fraction) {
  std::vector<std::pair<std::size_t, std::size_t>> found;
  const double top = max_abs(z);
  if (top == 0.0) return found;
  const double threshold = fraction * top;
  const std::size_t rows = z.rows(), cols = z.cols();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = std::abs(z(i, j));
      if (!(v > threshold)) continue;
      bool peak = true;
      for (int di = -1; di <= 1 && peak; ++di) {
        for (int dj = -1; dj <= 1 && peak; ++dj) {
          if (di == 0 && dj == 0) continue;
          const auto ni = static_cast<std::ptrdiff_t>(i) + di;
          const auto nj = static_cast<std::ptrdiff_t>(j) + dj;
          if (ni < 0 || nj < 0 || ni >= static_cast<std::ptrdiff_t>(rows) ||
              nj >= static_cast<std::ptrdiff_t>(cols))
            continue;
          const double w = std::abs(z(static_cast<std::size_t>(ni), static_cast<std::size_t>(nj)));
          // Plateaus resolve to their first element in scan order.
          const bool earlier = di < 0 || (di == 0 && dj < 0);
          peak = earlier ? v > w : v >= w;
        }
      }
      if (peak) found.emplace_back(i, j);
    }
  }
  return found;
}

std::size_t nearest(const std::vector<double>& axis, double value) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < axis.size(); ++k)
    if (std::abs(axis[k] - value) < std::abs(axis[best] - value)) best = k;
  return best;
}

}  // namespace

PeakReport find_peaks(const CorrelationSpectra& corr, double threshold_fraction, double eps) {
  if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0))
    throw UsageError("peak threshold fraction must lie in (0, 1)");
  PeakReport report;
  report.eps = eps > 0.0 ? eps : default_dead_band(corr);
  if (report.eps == 0.0) return report;  // all-zero matrices

  std::map<std::pair<std::size_t, std::size_t>, bool> cross;
  for (auto [i, j] : local_extrema(corr.sync, threshold_fraction)) {
    if (corr.is_homo && i == j) {
      report.auto_peaks.push_back({corr.axis1[i], i, corr.sync(i, i)});
      continue;
    }
    if (corr.is_homo && i > j) continue;
    cross[{i, j}] = true;
  }
  for (auto [i, j] : local_extrema(corr.async, threshold_fraction)) {
    if (corr.is_homo && i >= j) continue;
    cross[{i, j}] = true;
  }
  for (const auto& [ij, unused] : cross) {
    const auto [i, j] = ij;
    CrossPeak p{corr.axis1[i], corr.axis2[j], i, j, corr.sync(i, j), corr.async(i, j), {}};
    p.verdict = classify_cross_peak(p.sync, p.async, report.eps);
    report.cross_peaks.push_back(p);
  }
  return report;
}

CrossPeak classify_at(const CorrelationSpectra& corr, double nu1, double nu2, double eps) {
  const std::size_t i = nearest(corr.axis1, nu1), j = nearest(corr.axis2, nu2);
  CrossPeak p{corr.axis1[i], corr.axis2[j], i, j, corr.sync(i, j), corr.async(i, j), {}};
  p.verdict = classify_cross_peak(p.sync, p.async, eps);
  return p;
}

std::string format_report(const PeakReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "dead-band eps: %.3e\n", report.eps);
  out += line;
  out += "auto peaks: " + std::to_string(report.auto_peaks.size()) + "\n";
  if (!report.auto_peaks.empty()) {
    std::snprintf(line, sizeof line, "  %14s %14s\n", "nu", "sync");
    out += line;
    for (const AutoPeak& p : report.auto_peaks) {
      std::snprintf(line, sizeof line, "  %14.6g %14.6e\n", p.nu, p.sync);
      out += line;
    }
  }
  out += "cross peaks: " + std::to_string(report.cross_peaks.size()) + "\n";
  if (!report.cross_peaks.empty()) {
    std::snprintf(line, sizeof line, "  %14s %14s %14s %14s  %s\n", "nu1", "nu2", "sync", "async", "verdict");
    out += line;
    for (const CrossPeak& p : report.cross_peaks) {
      std::snprintf(line, sizeof line, "  %14.6g %14.6g %14.6e %14.6e  %s\n", p.nu1, p.nu2, p.sync,
                    p.async, to_string(p.verdict).c_str());
      out += line;
    }
  }
  return out;
}

std::string report_long_form(const PeakReport& report) {
  std::string out = "kind,nu1,nu2,sync,async,direction,order\n";
  for (const AutoPeak& p : report.auto_peaks) {
    out += "auto," + format_roundtrip(p.nu) + "," + format_roundtrip(p.nu) + "," +
           format_roundtrip(p.sync) + ",0,none,none\n";
  }
  for (const CrossPeak& p : report.cross_peaks) {
    out += "cross," + format_roundtrip(p.nu1) + "," + format_roundtrip(p.nu2) + "," +
           format_roundtrip(p.sync) + "," + format_roundtrip(p.async) + "," +
           std::string(to_string(p.verdict.direction)) + "," +
           std::string(to_string(p.verdict.order)) + "\n";
  }
  return out;
}

}  // namespace corrtwo
