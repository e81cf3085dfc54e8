#include "corrtwo/interpolate.hpp"

#include <algorithm>

#include "corrtwo/error.hpp"

namespace corrtwo {

namespace {

void check_nodes(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("interpolation nodes and values differ in length");
  if (x.size() < 2) throw DataError("interpolation needs at least two nodes");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw DataError("interpolation nodes must be strictly increasing");
}

// Index k of the interval [x[k], x[k+1]] used for `at`; ends extrapolate.
std::size_t interval(const std::vector<double>& x, double at) {
  auto it = std::upper_bound(x.begin(), x.end(), at);
  std::size_t k = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
  return std::min(k, x.size() - 2);
}

}  // namespace

LinearInterpolant::LinearInterpolant(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
  check_nodes(x, y);
}

double LinearInterpolant::operator()(double at) const {
  const std::size_t k = interval(x_, at);
  if (at == x_[k]) return y_[k];
  if (at == x_[k + 1]) return y_[k + 1];
  const double t = (at - x_[k]) / (x_[k + 1] - x_[k]);
  return y_[k] + t * (y_[k + 1] - y_[k]);
}

NaturalCubicSpline::NaturalCubicSpline(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), m_(x.size(), 0.0) {
  check_nodes(x, y);
  const std::size_t n = x.size();
  if (n == 2) return;
  // Thomas algorithm on the interior rows
  //   h[i-1] M[i-1] + 2 (h[i-1] + h[i]) M[i] + h[i] M[i+1] = 6 (s[i] - s[i-1])
  // with M[0] = M[n-1] = 0.
  const std::size_t inner = n - 2;
  std::vector<double> diag(inner), upper(inner), rhs(inner);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
    diag[i - 1] = 2.0 * (h0 + h1);
    upper[i - 1] = h1;
    rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  for (std::size_t k = 1; k < inner; ++k) {
    const double lower = x_[k + 1] - x_[k];  // h[k] couples M[k] into row k+1
    const double f = lower / diag[k - 1];
    diag[k] -= f * upper[k - 1];
    rhs[k] -= f * rhs[k - 1];
  }
  m_[inner] = rhs[inner - 1] / diag[inner - 1];
  for (std::size_t k = inner - 1; k-- > 0;) m_[k + 1] = (rhs[k] - upper[k] * m_[k + 2]) / diag[k];
}

double NaturalCubicSpline::operator()(double at) const {
  const std::size_t k = interval(x_, at);
  if (at == x_[k]) return y_[k];
  if (at == x_[k + 1]) return y_[k + 1];
  const double h = x_[k + 1] - x_[k];
  const double a = (x_[k + 1] - at) / h, b = (at - x_[k]) / h;
  return a * y_[k] + b * y_[k + 1] +
         ((a * a * a - a) * m_[k] + (b * b * b - b) * m_[k + 1]) * h * h / 6.0;
}

}  // namespace corrtwo
