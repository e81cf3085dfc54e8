#include "corrtwo/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace corrtwo {

double max_abs(const Matrix& m) noexcept {
  double best = 0.0;
  for (double v : m.values()) best = std::max(best, std::abs(v));
  return best;
}

double frobenius(const Matrix& m) noexcept {
  double sum = 0.0;
  for (double v : m.values()) sum += v * v;
  return std::sqrt(sum);
}

}  // namespace corrtwo
