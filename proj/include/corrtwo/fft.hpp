#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace corrtwo {

/// Forward discrete Fourier transform of a fixed length,
///   X[k] = sum_j x[j] exp(-2 pi i j k / n).
///
/// Powers of two use an iterative radix-2 transform; every other length goes
/// through Bluestein's chirp-z algorithm on a power-of-two convolution. A
/// plan is immutable after construction and may be shared across threads.
class FftPlan {
public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;

  std::size_t size() const noexcept { return n_; }

  /// In-place transform; `data.size()` must equal size().
  void forward(std::span<std::complex<double>> data) const;

  /// Transform of real input into `out` (resized to size()).
  void forward_real(std::span<const double> in, std::vector<std::complex<double>>& out) const;

private:
  struct Radix2;
  std::size_t n_;
  std::unique_ptr<Radix2> direct_;     // used when n is a power of two
  std::unique_ptr<Radix2> conv_;       // Bluestein convolution length
  std::vector<std::complex<double>> chirp_;       // exp(-i pi k^2 / n)
  std::vector<std::complex<double>> chirp_fft_;   // FFT of the conjugate chirp filter
};

bool is_power_of_two(std::size_t n) noexcept;

}  // namespace corrtwo
