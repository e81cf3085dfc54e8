#include "corrtwo/contour.hpp"

#include <array>
#include <limits>
#include <utility>

#include "corrtwo/error.hpp"

namespace corrtwo {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

/// Grid edges are numbered: edges along x first (i, j) -> (i+1, j), then
/// edges along y (i, j) -> (i, j+1).
class Grid {
public:
  Grid(const Matrix& z, std::span<const double> x, std::span<const double> y, double level)
      : z_(z), x_(x), y_(y), level_(level), nx_(z.rows()), ny_(z.cols()) {
    if (x.size() != nx_ || y.size() != ny_)
      throw DataError("contour axes do not match the matrix dimensions");
  }

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t edge_count() const { return (nx_ - 1) * ny_ + nx_ * (ny_ - 1); }

  bool inside(std::size_t i, std::size_t j) const { return z_(i, j) > level_; }

  std::size_t x_edge(std::size_t i, std::size_t j) const { return i * ny_ + j; }
  std::size_t y_edge(std::size_t i, std::size_t j) const {
    return (nx_ - 1) * ny_ + i * (ny_ - 1) + j;
  }

  Point crossing(std::size_t edge) const {
    std::size_t i0, j0, i1, j1;
    const std::size_t nxe = (nx_ - 1) * ny_;
    if (edge < nxe) {
      i0 = edge / ny_;
      j0 = edge % ny_;
      i1 = i0 + 1;
      j1 = j0;
    } else {
      const std::size_t e = edge - nxe;
      i0 = e / (ny_ - 1);
      j0 = e % (ny_ - 1);
      i1 = i0;
      j1 = j0 + 1;
    }
    const double z0 = z_(i0, j0), z1 = z_(i1, j1);
    const double t = (level_ - z0) / (z1 - z0);
    if (i1 != i0) return {x_[i0] + t * (x_[i1] - x_[i0]), y_[j0]};
    return {x_[i0], y_[j0] + t * (y_[j1] - y_[j0])};
  }

  /// Appends the edge pairs crossed in cell (i, j).
  void cell_segments(std::size_t i, std::size_t j,
                     std::vector<std::pair<std::size_t, std::size_t>>& out) const {
    // Corners counter-clockwise from (i, j); edge k joins corner k and k+1.
    const std::array<bool, 4> in{inside(i, j), inside(i + 1, j), inside(i + 1, j + 1),
                                 inside(i, j + 1)};
    const std::array<std::size_t, 4> edge{x_edge(i, j), y_edge(i + 1, j), x_edge(i, j + 1),
                                          y_edge(i, j)};
    std::array<std::size_t, 4> crossed{};
    std::size_t count = 0;
    for (std::size_t k = 0; k < 4; ++k)
      if (in[k] != in[(k + 1) % 4]) crossed[count++] = k;
    if (count == 2) {
      out.emplace_back(edge[crossed[0]], edge[crossed[1]]);
      return;
    }
    if (count != 4) return;
    const double mean = (z_(i, j) + z_(i + 1, j) + z_(i + 1, j + 1) + z_(i, j + 1)) / 4.0;
    // Cut off the corners on the side the centre does not belong to.
    const bool centre_in = mean > level_;
    for (std::size_t k = 0; k < 4; ++k)
      if (in[k] != centre_in) out.emplace_back(edge[(k + 3) % 4], edge[k]);
  }

private:
  const Matrix& z_;
  std::span<const double> x_, y_;
  double level_;
  std::size_t nx_, ny_;
};

std::vector<std::pair<std::size_t, std::size_t>> all_segments(const Grid& g) {
  std::vector<std::pair<std::size_t, std::size_t>> segs;
  for (std::size_t i = 0; i + 1 < g.nx(); ++i)
    for (std::size_t j = 0; j + 1 < g.ny(); ++j) g.cell_segments(i, j, segs);
  return segs;
}

}  // namespace

std::vector<std::pair<Point, Point>> contour_segments(const Matrix& z, std::span<const double> x,
                                                      std::span<const double> y, double level) {
  std::vector<std::pair<Point, Point>> out;
  if (z.rows() < 2 || z.cols() < 2) return out;
  const Grid g(z, x, y, level);
  for (auto [a, b] : all_segments(g)) out.emplace_back(g.crossing(a), g.crossing(b));
  return out;
}

std::vector<Polyline> contour_lines(const Matrix& z, std::span<const double> x,
                                    std::span<const double> y, double level) {
  std::vector<Polyline> lines;
  if (z.rows() < 2 || z.cols() < 2) return lines;
  const Grid g(z, x, y, level);
  const auto segs = all_segments(g);

  // Each crossed edge belongs to at most two cells, hence two segments.
  std::vector<std::array<std::size_t, 2>> link(g.edge_count(), {kNone, kNone});
  for (std::size_t s = 0; s < segs.size(); ++s) {
    for (std::size_t e : {segs[s].first, segs[s].second}) {
      auto& slot = link[e];
      (slot[0] == kNone ? slot[0] : slot[1]) = s;
    }
  }
  std::vector<bool> used(segs.size(), false);

  auto walk = [&](std::size_t start_edge) {
    Polyline line;
    line.points.push_back(g.crossing(start_edge));
    std::size_t edge = start_edge;
    for (;;) {
      std::size_t next_seg = kNone;
      for (std::size_t s : link[edge])
        if (s != kNone && !used[s]) {
          next_seg = s;
          break;
        }
      if (next_seg == kNone) break;
      used[next_seg] = true;
      edge = segs[next_seg].first == edge ? segs[next_seg].second : segs[next_seg].first;
      if (edge == start_edge) {
        line.closed = true;
        break;
      }
      line.points.push_back(g.crossing(edge));
    }
    return line;
  };

  // Open lines start at boundary edges (one segment), then the closed loops.
  for (std::size_t e = 0; e < link.size(); ++e) {
    const auto& slot = link[e];
    if (slot[0] != kNone && slot[1] == kNone && !used[slot[0]]) lines.push_back(walk(e));
  }
  for (std::size_t e = 0; e < link.size(); ++e) {
    const auto& slot = link[e];
    if (slot[0] != kNone && (!used[slot[0]] || (slot[1] != kNone && !used[slot[1]])))
      lines.push_back(walk(e));
  }
  return lines;
}

}  // namespace corrtwo
