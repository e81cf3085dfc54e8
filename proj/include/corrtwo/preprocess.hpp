#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "corrtwo/dataset.hpp"
#include "corrtwo/matrix.hpp"

namespace corrtwo {

struct PerturbationMean {};
struct ProvidedReference {
  std::vector<double> spectrum;
};

/// Reference spectrum subtracted to form the dynamic spectra.
using ReferenceSpec = std::variant<PerturbationMean, ProvidedReference>;

enum class InterpolantKind { Linear, CubicSpline };

struct ResampleSpec {
  std::size_t target_count = 0;
  InterpolantKind interpolant = InterpolantKind::CubicSpline;
};

/// How zero-variance channels are handled when scaling with alpha > 0.
enum class ZeroVariancePolicy { Reject, SubstituteUnit };

struct PreprocessSpec {
  ReferenceSpec reference = PerturbationMean{};
  std::optional<ResampleSpec> resample;
  double scaling_exponent = 0.0;
  ZeroVariancePolicy zero_variance = ZeroVariancePolicy::Reject;
};

/// Reference-subtracted (and optionally scaled) spectra, ready to correlate.
struct DynamicSpectra {
  std::vector<double> spectral_axis;
  std::vector<double> perturbation_axis;
  Matrix values;  // m x n
  std::vector<double> reference_used;
  double scaling_exponent = 0.0;
  std::optional<std::vector<double>> sigma;
  bool mean_reference = true;
  /// Spectral indices whose zero sigma was replaced by 1.
  std::vector<std::size_t> substituted_channels;

  std::size_t m() const noexcept { return perturbation_axis.size(); }
  std::size_t n() const noexcept { return spectral_axis.size(); }

  /// True when scaling was applied against a reference other than the
  /// perturbation mean; such spectra need care when interpreted.
  bool scaled_with_non_mean_reference() const noexcept {
    return scaling_exponent > 0.0 && !mean_reference;
  }

  friend bool operator==(const DynamicSpectra&, const DynamicSpectra&) = default;
};

/// Column means of the intensities.
std::vector<double> mean_reference(const SpectralDataset& ds);

/// Resolves the reference to a concrete spectrum of length n.
std::vector<double> resolve_reference(const SpectralDataset& ds, const ReferenceSpec& ref);

DynamicSpectra dynamic_spectra(const SpectralDataset& ds, const ReferenceSpec& ref);

/// Smallest power of two that is at least max(m, 4).
std::size_t default_target_count(std::size_t m);

/// Interpolates every spectral column onto `grid` (strictly increasing and
/// inside the dataset's perturbation range).
SpectralDataset resample_onto(const SpectralDataset& ds, const std::vector<double>& grid,
                              InterpolantKind kind);

/// `target_count` equidistant perturbation values from min(t) to max(t).
SpectralDataset resample_equidistant(const SpectralDataset& ds, std::size_t target_count,
                                     InterpolantKind kind);

/// `count` equidistant values spanning [lo, hi], endpoints exact.
std::vector<double> equidistant_grid(double lo, double hi, std::size_t count);

/// Per-channel sqrt(sum_j (y - ref)^2 / (m - 1)).
std::vector<double> stddev_spectrum(const SpectralDataset& ds, const ReferenceSpec& ref);

/// Divides column i by sigma[i]^alpha. alpha = 0 returns the input unchanged.
DynamicSpectra apply_scaling(const DynamicSpectra& dyn, const std::vector<double>& sigma,
                             double alpha,
                             ZeroVariancePolicy policy = ZeroVariancePolicy::Reject);

/// Full preprocessing: resample (if requested), subtract the reference,
/// compute sigma on the data actually correlated and scale.
DynamicSpectra preprocess(const SpectralDataset& ds, const PreprocessSpec& spec);

}  // namespace corrtwo
