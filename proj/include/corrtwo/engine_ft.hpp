#pragma once

#include <complex>
#include <vector>

#include "corrtwo/dataset.hpp"
#include "corrtwo/normalization.hpp"
#include "corrtwo/preprocess.hpp"

namespace corrtwo {

/// Retained half of the per-channel DFTs. Row w (w = 0 .. floor(m/2)) holds
/// frequency w for every channel; weight(w) is 1 at w = 0 and at the Nyquist
/// row of even m, 2 elsewhere.
class FourierWorkspace {
public:
  FourierWorkspace(std::size_t m, std::size_t channels);

  std::size_t m() const noexcept { return m_; }
  std::size_t frequencies() const noexcept { return weights_.size(); }
  std::size_t channels() const noexcept { return channels_; }
  double weight(std::size_t w) const noexcept { return weights_[w]; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  std::complex<double>& at(std::size_t w, std::size_t channel) noexcept {
    return spectrum_[w * channels_ + channel];
  }
  const std::complex<double>& at(std::size_t w, std::size_t channel) const noexcept {
    return spectrum_[w * channels_ + channel];
  }

private:
  std::size_t m_;
  std::size_t channels_;
  std::vector<double> weights_;
  std::vector<std::complex<double>> spectrum_;
};

/// FFT of every spectral channel along the perturbation axis, keeping the
/// non-redundant half. Channels are split across `workers`.
FourierWorkspace dft_channels(const DynamicSpectra& dyn, unsigned workers = 1);

/// C = Norm * sum_w weight(w) Y1(nu1, w) conj(Y2(nu2, w)); sync = Re C,
/// async = Im C. Output rows are split across workers; every element is
/// accumulated in ascending frequency order, so results do not depend on the
/// worker count.
CorrelationSpectra correlate_ft(const DynamicSpectra& dyn1, const DynamicSpectra& dyn2,
                                const NormalizationSpec& norm = NormalizationSpec::noda(),
                                unsigned workers = 1);

/// Homo correlation of `dyn` with itself.
CorrelationSpectra correlate_ft(const DynamicSpectra& dyn,
                                const NormalizationSpec& norm = NormalizationSpec::noda(),
                                unsigned workers = 1);

}  // namespace corrtwo
