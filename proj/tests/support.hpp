#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "corrtwo/dataset.hpp"
#include "corrtwo/preprocess.hpp"

namespace support {

using namespace corrtwo;

inline std::vector<double> iota_axis(std::size_t n, double start = 0.0, double step = 1.0) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = start + step * static_cast<double>(k);
  return v;
}

inline SpectralDataset dataset(const Matrix& y) {
  SpectralDataset ds;
  ds.perturbation_axis = iota_axis(y.rows());
  ds.spectral_axis = iota_axis(y.cols(), 1000.0, 2.0);
  ds.intensities = y;
  return ds;
}

/// Mean-referenced dynamic spectra of y.
inline DynamicSpectra dyn(const Matrix& y) { return dynamic_spectra(dataset(y), PerturbationMean{}); }

/// Dynamic spectra taken as they are (zero reference).
inline DynamicSpectra raw_dyn(const Matrix& y) {
  return dynamic_spectra(dataset(y), ProvidedReference{std::vector<double>(y.cols(), 0.0)});
}

/// Columns sin(2 pi j / m + phase_c) over one full period.
inline Matrix sinusoids(std::size_t m, const std::vector<double>& phases) {
  Matrix y(m, phases.size());
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t c = 0; c < phases.size(); ++c)
      y(j, c) = std::sin(2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m) + phases[c]);
  return y;
}

}  // namespace support
