#include "corrtwo/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "corrtwo/contour.hpp"
#include "corrtwo/error.hpp"
#include "corrtwo/interpolate.hpp"
#include "corrtwo/numfmt.hpp"
#include "corrtwo/parallel.hpp"

namespace corrtwo {

std::string Color::hex() const {
  if (transparent) return "none";
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

std::vector<Color> LevelScale::drawn_colors() const {
  return {colors.begin() + static_cast<std::ptrdiff_t>(first),
          colors.begin() + static_cast<std::ptrdiff_t>(first + count)};
}

namespace {

/// Samples a ramp through equally spaced anchor colors with a natural cubic
/// spline per channel, clipped to [0, 255].
std::vector<Color> ramp(const std::vector<Color>& anchors, std::size_t n) {
  std::vector<Color> out;
  if (n == 0) return out;
  std::vector<double> at(anchors.size());
  for (std::size_t k = 0; k < anchors.size(); ++k)
    at[k] = static_cast<double>(k) / static_cast<double>(anchors.size() - 1);
  std::vector<double> r, g, b;
  for (const Color& c : anchors) {
    r.push_back(c.r / 255.0);
    g.push_back(c.g / 255.0);
    b.push_back(c.b / 255.0);
  }
  const NaturalCubicSpline sr(at, r), sg(at, g), sb(at, b);
  auto channel = [](double v) {
    v = std::clamp(v, 0.0, 1.0);
    return static_cast<std::uint8_t>(std::floor(v * 255.0 + 0.5));
  };
  for (std::size_t k = 0; k < n; ++k) {
    const double u = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
    out.push_back(Color::rgb(channel(sr(u)), channel(sg(u)), channel(sb(u))));
  }
  return out;
}

const Color kDarkBlue = Color::rgb(0x00, 0x00, 0x8b);
const Color kCyan = Color::rgb(0x00, 0xff, 0xff);
const Color kYellow = Color::rgb(0xff, 0xff, 0x00);
const Color kRed = Color::rgb(0xff, 0x00, 0x00);
const Color kDarkRed = Color::rgb(0x8b, 0x00, 0x00);

Range data_range(const Matrix& z) {
  const auto& v = z.values();
  if (v.empty()) throw DataError("cannot plot an empty matrix");
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {*lo, *hi};
}

}  // namespace

std::vector<Color> cold_ramp(std::size_t n) { return ramp({kDarkBlue, kCyan}, n); }
std::vector<Color> warm_ramp(std::size_t n) { return ramp({kYellow, kRed, kDarkRed}, n); }

LevelScale compute_levels(const Matrix& z, std::optional<Range> zlim, int level_count,
                          std::optional<Range> cutout) {
  if (level_count < 2) throw UsageError("level count must be at least 2");
  if (cutout && !(cutout->first <= 0.0 && 0.0 <= cutout->second))
    throw UsageError("cutout must satisfy lo <= 0 <= hi");
  Range window;
  if (zlim) {
    if (!(zlim->first < zlim->second))
      throw UsageError(zlim->first == zlim->second ? "zlim is degenerate (lo == hi)"
                                                   : "zlim must be ordered (lo < hi)");
    window = *zlim;
  } else {
    window = data_range(z);
    if (window.first == window.second) {
      // Constant data: open a window around it so the scale is defined.
      const double pad = window.first == 0.0 ? 1.0 : std::abs(window.first);
      window = {window.first - pad, window.second + pad};
    }
  }

  const std::size_t n = static_cast<std::size_t>(level_count % 2 == 0 ? level_count + 1 : level_count);
  const std::size_t half = n / 2;
  const double extreme = std::max(std::abs(window.first), std::abs(window.second));

  LevelScale s;
  s.zlim = window;
  s.levels.assign(n, 0.0);
  const double step = extreme / static_cast<double>(half);
  for (std::size_t k = 1; k <= half; ++k) {
    const double v = k == half ? extreme : step * static_cast<double>(k);
    s.levels[half + k] = v;
    s.levels[half - k] = -v;
  }

  std::vector<std::size_t> cold, warm;
  for (std::size_t k = 0; k < n; ++k) {
    const double v = s.levels[k];
    if (cutout ? v <= cutout->first : v < 0.0) cold.push_back(k);
    if (cutout ? v >= cutout->second : v > 0.0) warm.push_back(k);
  }
  s.colors.assign(n, Color{});
  const auto cold_colors = cold_ramp(cold.size());
  const auto warm_colors = warm_ramp(warm.size());
  for (std::size_t k = 0; k < cold.size(); ++k) s.colors[cold[k]] = cold_colors[k];
  for (std::size_t k = 0; k < warm.size(); ++k) s.colors[warm[k]] = warm_colors[k];
  s.colors[half] = Color{};

  // Thresholds on the zlim bounds themselves count as inside.
  const double tol = 1e-12 * extreme;
  std::size_t first = n, last = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (s.levels[k] >= window.first - tol && s.levels[k] <= window.second + tol) {
      first = std::min(first, k);
      last = k;
    }
  }
  if (first == n)
    throw UsageError("zlim window contains no level; raise the level count");
  s.first = first;
  s.count = last - first + 1;
  s.drawn_levels.resize(s.count);
  if (s.count == 1) {
    s.drawn_levels[0] = window.first;
  } else {
    const double h = (window.second - window.first) / static_cast<double>(s.count - 1);
    for (std::size_t k = 0; k < s.count; ++k)
      s.drawn_levels[k] = window.first + h * static_cast<double>(k);
    s.drawn_levels.back() = window.second;
  }
  return s;
}

void PlotSpec::validate() const {
  if (level_count < 2) throw UsageError("level count must be at least 2");
  for (const auto* lim : {&xlim, &ylim, &zlim})
    if (*lim && !((*lim)->first < (*lim)->second)) throw UsageError("plot windows must be ordered (lo < hi)");
  if (cutout && !(cutout->first <= 0.0 && 0.0 <= cutout->second))
    throw UsageError("cutout must satisfy lo <= 0 <= hi");
}

AxisWindow window_axis(const std::vector<double>& axis, std::optional<Range> lim) {
  if (!lim) return {0, axis.size()};
  AxisWindow w{axis.size(), axis.size()};
  bool found = false;
  for (std::size_t k = 0; k < axis.size(); ++k) {
    if (lim->first < axis[k] && axis[k] < lim->second) {
      if (!found) w.begin = k;
      w.end = k + 1;
      found = true;
    }
  }
  if (!found) throw UsageError("plot window selects no axis points");
  return w;
}

std::pair<AxisWindow, AxisWindow> window_axes(const CorrelationSpectra& corr, std::optional<Range> xlim,
                                              std::optional<Range> ylim) {
  return {window_axis(corr.axis1, xlim), window_axis(corr.axis2, ylim)};
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw UsageError("quantile of an empty set");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

namespace {

constexpr double kWidth = 720.0, kHeight = 720.0;
constexpr double kSide = 130.0;  // marginal and margin bands
constexpr double kMainLo = kSide, kMainHi = kWidth - kSide;

struct Scale {
  double d0, d1, p0, p1;
  double operator()(double v) const { return d0 == d1 ? (p0 + p1) / 2 : p0 + (v - d0) / (d1 - d0) * (p1 - p0); }
};

std::string fx(double v) { return format_fixed6(v); }

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

std::vector<double> nice_ticks(double lo, double hi) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  const double step = (r < 1.5 ? 1.0 : r < 3.0 ? 2.0 : r < 7.0 ? 5.0 : 10.0) * mag;
  std::vector<double> ticks;
  for (auto k = static_cast<long long>(std::ceil(lo / step - 1e-9));
       static_cast<double>(k) * step <= hi + 1e-9 * step; ++k)
    ticks.push_back(static_cast<double>(k) * step);
  return ticks;
}

std::string tick_text(double v) {
  if (std::abs(v) < 1e-300) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::vector<double> marginal(const std::optional<std::vector<double>>& given, const std::vector<double>& stored,
                             std::size_t axis_size, AxisWindow w, const char* which) {
  const std::vector<double>& spec = given ? *given : stored;
  if (spec.size() == axis_size)
    return {spec.begin() + static_cast<std::ptrdiff_t>(w.begin), spec.begin() + static_cast<std::ptrdiff_t>(w.end)};
  if (spec.size() == w.size()) return spec;
  throw DataError(std::string("marginal spectrum ") + which + " has length " + std::to_string(spec.size()) +
                  ", expected " + std::to_string(axis_size) + " or the window length " +
                  std::to_string(w.size()));
}

void polyline_path(std::string& out, const std::vector<double>& xs, const std::vector<double>& ys) {
  out += "<path fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\" d=\"";
  for (std::size_t k = 0; k < xs.size(); ++k) {
    out += k == 0 ? "M" : " L";
    out += fx(xs[k]) + "," + fx(ys[k]);
  }
  out += "\"/>\n";
}

}  // namespace

std::string render_plot(const CorrelationSpectra& corr, const PlotSpec& spec, unsigned workers) {
  spec.validate();
  const auto [wx, wy] = window_axes(corr, spec.xlim, spec.ylim);
  if (wx.size() < 2 || wy.size() < 2) throw UsageError("plot window must select at least two points per axis");

  const Matrix& full = spec.which == PlotKind::Sync ? corr.sync : corr.async;
  Matrix z(wx.size(), wy.size());
  for (std::size_t i = 0; i < wx.size(); ++i)
    for (std::size_t j = 0; j < wy.size(); ++j) z(i, j) = full(wx.begin + i, wy.begin + j);
  const std::vector<double> xs(corr.axis1.begin() + static_cast<std::ptrdiff_t>(wx.begin),
                               corr.axis1.begin() + static_cast<std::ptrdiff_t>(wx.end));
  const std::vector<double> ys(corr.axis2.begin() + static_cast<std::ptrdiff_t>(wy.begin),
                               corr.axis2.begin() + static_cast<std::ptrdiff_t>(wy.end));

  std::vector<double> mx, my;
  if (spec.show_marginal_x) mx = marginal(spec.marginal_x, corr.ref1, corr.axis1.size(), wx, "x");
  if (spec.show_marginal_y) my = marginal(spec.marginal_y, corr.ref2, corr.axis2.size(), wy, "y");

  const LevelScale scale = compute_levels(z, spec.zlim, spec.level_count, spec.cutout);
  const auto drawn_colors = scale.drawn_colors();

  const auto [xmin, xmax] = std::minmax(xs.front(), xs.back());
  const auto [ymin, ymax] = std::minmax(ys.front(), ys.back());
  const Scale px{xmin, xmax, kMainLo, kMainHi};
  const Scale py{ymin, ymax, kMainHi, kMainLo};

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fx(kWidth) + "\" height=\"" + fx(kHeight) +
         "\" viewBox=\"0 0 " + fx(kWidth) + " " + fx(kHeight) + "\">\n";
  svg += "<defs><clipPath id=\"main-clip\"><rect x=\"" + fx(kMainLo) + "\" y=\"" + fx(kMainLo) + "\" width=\"" +
         fx(kMainHi - kMainLo) + "\" height=\"" + fx(kMainHi - kMainLo) + "\"/></clipPath></defs>\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fx(kWidth) + "\" height=\"" + fx(kHeight) + "\" fill=\"#ffffff\"/>\n";

  // Screen 1: y marginal, rotated so that intensity grows to the left.
  svg += "<g id=\"screen1\" class=\"marginal-y\">\n";
  if (!my.empty()) {
    const double top = *std::max_element(my.begin(), my.end());
    std::vector<double> flipped(my.size());
    for (std::size_t k = 0; k < my.size(); ++k) flipped[k] = top - my[k];
    const auto [lo, hi] = std::minmax_element(flipped.begin(), flipped.end());
    const Scale sx{*lo, *hi, 8.0, kSide - 8.0};
    std::vector<double> a(my.size()), b(my.size());
    for (std::size_t k = 0; k < my.size(); ++k) {
      a[k] = sx(flipped[k]);
      b[k] = py(ys[k]);
    }
    polyline_path(svg, a, b);
  }
  svg += "</g>\n";

  // Screen 2: x marginal.
  svg += "<g id=\"screen2\" class=\"marginal-x\">\n";
  if (!mx.empty()) {
    const auto [lo, hi] = std::minmax_element(mx.begin(), mx.end());
    const Scale sy{*lo, *hi, kSide - 8.0, 8.0};
    std::vector<double> a(mx.size()), b(mx.size());
    for (std::size_t k = 0; k < mx.size(); ++k) {
      a[k] = px(xs[k]);
      b[k] = sy(mx[k]);
    }
    polyline_path(svg, a, b);
  }
  svg += "</g>\n";

  // Screen 3: the correlation map.
  svg += "<g id=\"screen3\" class=\"main\">\n<g clip-path=\"url(#main-clip)\">\n";
  if (spec.mode == PlotMode::Contour) {
    std::vector<std::vector<Polyline>> per_level(scale.count);
    for_each_block(scale.count, workers, [&](Block block) {
      for (std::size_t k = block.begin; k < block.end; ++k)
        if (!drawn_colors[k].transparent) per_level[k] = contour_lines(z, xs, ys, scale.drawn_levels[k]);
    });
    for (std::size_t k = 0; k < scale.count; ++k) {
      for (const Polyline& line : per_level[k]) {
        // A line through a single extreme grid value has no extent.
        const Point& p0 = line.points.front();
        if (std::all_of(line.points.begin(), line.points.end(), [&](const Point& q) { return q == p0; })) continue;
        svg += "<path class=\"contour\" data-level=\"" + format_roundtrip(scale.drawn_levels[k]) +
               "\" fill=\"none\" stroke=\"" + drawn_colors[k].hex() + "\" stroke-width=\"1\" d=\"";
        for (std::size_t p = 0; p < line.points.size(); ++p) {
          svg += p == 0 ? "M" : " L";
          svg += fx(px(line.points[p].x)) + "," + fx(py(line.points[p].y));
        }
        if (line.closed) svg += " Z";
        svg += "\"/>\n";
      }
    }
  } else {
    // Equal-width bins over zlim, one per drawn color; upper bounds inclusive.
    const double lo = scale.zlim.first, hi = scale.zlim.second;
    const std::size_t bins = scale.count;
    auto edges = [](const std::vector<double>& axis, std::size_t k) {
      const double left = k == 0 ? axis[0] : (axis[k - 1] + axis[k]) / 2;
      const double right = k + 1 == axis.size() ? axis[k] : (axis[k] + axis[k + 1]) / 2;
      return Range{left, right};
    };
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const Range ex = edges(xs, i);
      for (std::size_t j = 0; j < ys.size(); ++j) {
        const double v = z(i, j);
        if (v < lo || v > hi) continue;
        auto bin = static_cast<std::ptrdiff_t>(std::ceil((v - lo) / (hi - lo) * static_cast<double>(bins))) - 1;
        bin = std::clamp<std::ptrdiff_t>(bin, 0, static_cast<std::ptrdiff_t>(bins) - 1);
        const Color& c = drawn_colors[static_cast<std::size_t>(bin)];
        if (c.transparent) continue;
        const Range ey = edges(ys, j);
        const double x0 = std::min(px(ex.first), px(ex.second)), x1 = std::max(px(ex.first), px(ex.second));
        const double y0 = std::min(py(ey.first), py(ey.second)), y1 = std::max(py(ey.first), py(ey.second));
        svg += "<rect class=\"cell\" x=\"" + fx(x0) + "\" y=\"" + fx(y0) + "\" width=\"" + fx(x1 - x0) +
               "\" height=\"" + fx(y1 - y0) + "\" fill=\"" + c.hex() + "\"/>\n";
      }
    }
  }
  const bool diagonal = spec.diagonal.value_or(corr.is_homo);
  if (diagonal) {
    const double lo = std::max(xmin, ymin), hi = std::min(xmax, ymax);
    if (lo < hi) {
      svg += "<line class=\"diagonal\" x1=\"" + fx(px(lo)) + "\" y1=\"" + fx(py(lo)) + "\" x2=\"" + fx(px(hi)) +
             "\" y2=\"" + fx(py(hi)) + "\" stroke=\"#ffffff\" stroke-opacity=\"0.5\" stroke-width=\"1\"/>\n";
    }
  }
  svg += "</g>\n";
  svg += "<rect class=\"box\" x=\"" + fx(kMainLo) + "\" y=\"" + fx(kMainLo) + "\" width=\"" + fx(kMainHi - kMainLo) +
         "\" height=\"" + fx(kMainHi - kMainLo) + "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  // x axis below, y axis on the right.
  for (double t : nice_ticks(xmin, xmax)) {
    const double x = px(t);
    svg += "<line class=\"tick\" x1=\"" + fx(x) + "\" y1=\"" + fx(kMainHi) + "\" x2=\"" + fx(x) + "\" y2=\"" +
           fx(kMainHi + 6.0) + "\" stroke=\"#000000\"/>\n";
    svg += "<text class=\"tick-label\" x=\"" + fx(x) + "\" y=\"" + fx(kMainHi + 20.0) +
           "\" font-size=\"11\" text-anchor=\"middle\">" + tick_text(t) + "</text>\n";
  }
  for (double t : nice_ticks(ymin, ymax)) {
    const double y = py(t);
    svg += "<line class=\"tick\" x1=\"" + fx(kMainHi) + "\" y1=\"" + fx(y) + "\" x2=\"" + fx(kMainHi + 6.0) +
           "\" y2=\"" + fx(y) + "\" stroke=\"#000000\"/>\n";
    svg += "<text class=\"tick-label\" x=\"" + fx(kMainHi + 9.0) + "\" y=\"" + fx(y + 4.0) +
           "\" font-size=\"11\" text-anchor=\"start\">" + tick_text(t) + "</text>\n";
  }
  svg += "<text class=\"axis-label\" x=\"" + fx((kMainLo + kMainHi) / 2) + "\" y=\"" + fx(kMainHi + 48.0) +
         "\" font-size=\"14\" text-anchor=\"middle\">" + escape(spec.xlab) + "</text>\n";
  svg += "<text class=\"axis-label\" x=\"" + fx(kMainHi + 64.0) + "\" y=\"" + fx((kMainLo + kMainHi) / 2) +
         "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(90 " + fx(kMainHi + 64.0) + " " +
         fx((kMainLo + kMainHi) / 2) + ")\">" + escape(spec.ylab) + "</text>\n";
  svg += "</g>\n";

  // Screens 4 to 6 are reserved and left empty.
  svg += "<g id=\"screen4\"/>\n<g id=\"screen5\"/>\n<g id=\"screen6\"/>\n";

  // Screen 7: color bar.
  svg += "<g id=\"screen7\" class=\"legend\">\n";
  if (spec.legend) {
    const double bx = kMainHi + 0.15 * kSide, bw = 0.15 * kSide;
    const double b0 = 0.8 * kSide, b1 = 0.2 * kSide;  // bottom and top of the bar
    const Scale bar{scale.zlim.first, scale.zlim.second, b0, b1};
    const double cell = (b0 - b1) / static_cast<double>(scale.count);
    for (std::size_t k = 0; k < scale.count; ++k) {
      const double top = b0 - cell * static_cast<double>(k + 1);
      svg += "<rect class=\"legend-cell\" x=\"" + fx(bx) + "\" y=\"" + fx(top) + "\" width=\"" + fx(bw) +
             "\" height=\"" + fx(cell) + "\" fill=\"" + drawn_colors[k].hex() + "\"/>\n";
    }
    svg += "<rect x=\"" + fx(bx) + "\" y=\"" + fx(b1) + "\" width=\"" + fx(bw) + "\" height=\"" + fx(b0 - b1) +
           "\" fill=\"none\" stroke=\"#000000\"/>\n";
    for (double p : {0.1, 0.9}) {
      const double q = quantile(scale.drawn_levels, p);
      char label[32];
      std::snprintf(label, sizeof label, "%.1e", q);
      const double y = bar(q);
      svg += "<line x1=\"" + fx(bx + bw) + "\" y1=\"" + fx(y) + "\" x2=\"" + fx(bx + bw + 4.0) + "\" y2=\"" + fx(y) +
             "\" stroke=\"#000000\"/>\n";
      svg += "<text class=\"legend-label\" data-quantile=\"" + format_roundtrip(p) + "\" x=\"" +
             fx(bx + bw + 6.0) + "\" y=\"" + fx(y + 4.0) + "\" font-size=\"10\">" + label + "</text>\n";
    }
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace corrtwo
