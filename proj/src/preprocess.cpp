#include "corrtwo/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "corrtwo/error.hpp"
#include "corrtwo/interpolate.hpp"
#include "corrtwo/numfmt.hpp"

namespace corrtwo {

std::vector<double> mean_reference(const SpectralDataset& ds) {
  const std::size_t m = ds.intensities.rows(), n = ds.intensities.cols();
  std::vector<double> mean(n, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    auto row = ds.intensities.row(j);
    for (std::size_t i = 0; i < n; ++i) mean[i] += row[i];
  }
  for (double& v : mean) v /= static_cast<double>(m);
  return mean;
}

std::vector<double> resolve_reference(const SpectralDataset& ds, const ReferenceSpec& ref) {
  if (std::holds_alternative<PerturbationMean>(ref)) return mean_reference(ds);
  const auto& spectrum = std::get<ProvidedReference>(ref).spectrum;
  if (spectrum.size() != ds.n()) {
    throw DataError("reference spectrum has " + std::to_string(spectrum.size()) +
                    " values but the dataset has " + std::to_string(ds.n()) + " spectral positions");
  }
  for (double v : spectrum)
    if (!std::isfinite(v)) throw DataError("reference spectrum holds a non-finite value");
  return spectrum;
}

DynamicSpectra dynamic_spectra(const SpectralDataset& ds, const ReferenceSpec& ref) {
  DynamicSpectra dyn;
  dyn.reference_used = resolve_reference(ds, ref);
  dyn.mean_reference = std::holds_alternative<PerturbationMean>(ref);
  dyn.spectral_axis = ds.spectral_axis;
  dyn.perturbation_axis = ds.perturbation_axis;
  dyn.values = ds.intensities;
  for (std::size_t j = 0; j < dyn.values.rows(); ++j) {
    auto row = dyn.values.row(j);
    for (std::size_t i = 0; i < row.size(); ++i) row[i] -= dyn.reference_used[i];
  }
  return dyn;
}

std::size_t default_target_count(std::size_t m) {
  std::size_t target = 4;
  while (target < m) target *= 2;
  return target;
}

std::vector<double> equidistant_grid(double lo, double hi, std::size_t count) {
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) grid[k] = lo + step * static_cast<double>(k);
  grid.back() = hi;
  return grid;
}

SpectralDataset resample_onto(const SpectralDataset& ds, const std::vector<double>& grid,
                              InterpolantKind kind) {
  validate(ds);
  if (grid.size() < 2) throw DataError("resampling grid needs at least two points");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw DataError("resampling grid must be strictly increasing");
  if (grid.front() < ds.perturbation_axis.front() || grid.back() > ds.perturbation_axis.back())
    throw DataError("resampling grid leaves the measured perturbation range");

  SpectralDataset out;
  out.spectral_axis = ds.spectral_axis;
  out.perturbation_axis = grid;
  out.spectral_label = ds.spectral_label;
  out.perturbation_label = ds.perturbation_label;
  out.intensities = Matrix(grid.size(), ds.n());
  for (std::size_t i = 0; i < ds.n(); ++i) {
    const std::vector<double> column = ds.intensities.column(i);
    auto fill = [&](const auto& f) {
      for (std::size_t k = 0; k < grid.size(); ++k) out.intensities(k, i) = f(grid[k]);
    };
    if (kind == InterpolantKind::Linear) fill(LinearInterpolant(ds.perturbation_axis, column));
    else fill(NaturalCubicSpline(ds.perturbation_axis, column));
  }
  return out;
}

SpectralDataset resample_equidistant(const SpectralDataset& ds, std::size_t target_count,
                                     InterpolantKind kind) {
  if (target_count < 4)
    throw DataError("resampling target count must be at least 4, got " + std::to_string(target_count));
  if (ds.m() < 2) throw DataError("resampling needs at least two spectra (m < 2)");
  return resample_onto(
      ds, equidistant_grid(ds.perturbation_axis.front(), ds.perturbation_axis.back(), target_count),
      kind);
}

std::vector<double> stddev_spectrum(const SpectralDataset& ds, const ReferenceSpec& ref) {
  const std::size_t m = ds.intensities.rows(), n = ds.intensities.cols();
  if (m < 2) throw DataError("standard deviation needs at least two spectra (m < 2)");
  const std::vector<double> reference = resolve_reference(ds, ref);
  std::vector<double> sum(n, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    auto row = ds.intensities.row(j);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = row[i] - reference[i];
      sum[i] += d * d;
    }
  }
  for (double& s : sum) s = std::sqrt(s / static_cast<double>(m - 1));
  return sum;
}

DynamicSpectra apply_scaling(const DynamicSpectra& dyn, const std::vector<double>& sigma,
                             double alpha, ZeroVariancePolicy policy) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DataError("scaling exponent must lie in [0, 1], got " + format_roundtrip(alpha));
  if (dyn.scaling_exponent != 0.0) throw DataError("dynamic spectra are already scaled");
  if (sigma.size() != dyn.n()) {
    throw DataError("sigma has " + std::to_string(sigma.size()) + " values but the spectra have " +
                    std::to_string(dyn.n()) + " channels");
  }
  if (alpha == 0.0) return dyn;
  DynamicSpectra out = dyn;
  out.sigma = sigma;

  std::vector<double> divisor(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (!std::isfinite(sigma[i]) || sigma[i] < 0.0)
      throw NumericError("invalid sigma at spectral position " + format_roundtrip(dyn.spectral_axis[i]));
    // Constant columns leave rounding residue, so "zero" is relative to the
    // channel's magnitude.
    double scale = std::abs(dyn.reference_used.empty() ? 0.0 : dyn.reference_used[i]);
    for (std::size_t j = 0; j < dyn.values.rows(); ++j) scale = std::max(scale, std::abs(dyn.values(j, i)));
    if (sigma[i] <= 1e-13 * scale || sigma[i] == 0.0) {
      if (policy == ZeroVariancePolicy::Reject) {
        throw NumericError("zero-variance channel at spectral position " +
                           format_roundtrip(dyn.spectral_axis[i]) + " cannot be scaled");
      }
      out.substituted_channels.push_back(i);
      divisor[i] = 1.0;
    } else {
      divisor[i] = std::pow(sigma[i], alpha);
    }
  }
  for (std::size_t j = 0; j < out.values.rows(); ++j) {
    auto row = out.values.row(j);
    for (std::size_t i = 0; i < row.size(); ++i) row[i] /= divisor[i];
  }
  out.scaling_exponent = alpha;
  return out;
}

DynamicSpectra preprocess(const SpectralDataset& raw, const PreprocessSpec& spec) {
  validate(raw);
  if (!(spec.scaling_exponent >= 0.0 && spec.scaling_exponent <= 1.0))
    throw DataError("scaling exponent must lie in [0, 1]");
  const SpectralDataset resampled =
      spec.resample ? resample_equidistant(raw, spec.resample->target_count, spec.resample->interpolant)
                    : raw;
  DynamicSpectra dyn = dynamic_spectra(resampled, spec.reference);
  if (spec.scaling_exponent == 0.0) return dyn;
  return apply_scaling(dyn, stddev_spectrum(resampled, spec.reference), spec.scaling_exponent,
                       spec.zero_variance);
}

}  // namespace corrtwo
