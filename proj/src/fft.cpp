#include "corrtwo/fft.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

#include "corrtwo/error.hpp"

namespace corrtwo {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

struct FftPlan::Radix2 {
  std::size_t n;
  std::vector<std::size_t> reversed;
  std::vector<std::complex<double>> twiddle;  // exp(-2 pi i k / n), k < n/2

  explicit Radix2(std::size_t size) : n(size), reversed(size), twiddle(size / 2) {
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b)
        if (k & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
      reversed[k] = r;
    }
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      twiddle[k] = {std::cos(angle), std::sin(angle)};
    }
  }

  void run(std::complex<double>* x) const {
    for (std::size_t k = 0; k < n; ++k)
      if (k < reversed[k]) std::swap(x[k], x[reversed[k]]);
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const std::size_t half = len / 2, stride = n / len;
      for (std::size_t start = 0; start < n; start += len) {
        for (std::size_t k = 0; k < half; ++k) {
          const std::complex<double> w = twiddle[k * stride];
          const std::complex<double> a = x[start + k];
          const std::complex<double> b = x[start + k + half];
          const std::complex<double> t{w.real() * b.real() - w.imag() * b.imag(),
                                       w.real() * b.imag() + w.imag() * b.real()};
          x[start + k] = a + t;
          x[start + k + half] = a - t;
        }
      }
    }
  }
};

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw DataError("FFT length must be positive");
  if (is_power_of_two(n)) {
    direct_ = std::make_unique<Radix2>(n);
    return;
  }
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;
  conv_ = std::make_unique<Radix2>(m);
  chirp_.resize(n);
  const std::uint64_t period = 2 * static_cast<std::uint64_t>(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the angle small and exact.
    const std::uint64_t kk = (static_cast<std::uint64_t>(k) * k) % period;
    const double angle = -std::numbers::pi * static_cast<double>(kk) / static_cast<double>(n);
    chirp_[k] = {std::cos(angle), std::sin(angle)};
  }
  chirp_fft_.assign(m, {0.0, 0.0});
  chirp_fft_[0] = std::conj(chirp_[0]);
  for (std::size_t k = 1; k < n; ++k) {
    chirp_fft_[k] = std::conj(chirp_[k]);
    chirp_fft_[m - k] = std::conj(chirp_[k]);
  }
  conv_->run(chirp_fft_.data());
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

void FftPlan::forward(std::span<std::complex<double>> data) const {
  if (data.size() != n_) throw DataError("FFT input length does not match the plan");
  if (direct_) {
    direct_->run(data.data());
    return;
  }
  const std::size_t m = conv_->n;
  std::vector<std::complex<double>> work(m, {0.0, 0.0});
  for (std::size_t k = 0; k < n_; ++k) work[k] = data[k] * chirp_[k];
  conv_->run(work.data());
  for (std::size_t k = 0; k < m; ++k) work[k] = std::conj(work[k] * chirp_fft_[k]);
  conv_->run(work.data());  // conj(FFT(conj(z))) / m is the inverse transform
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n_; ++k) data[k] = std::conj(work[k]) * scale * chirp_[k];
}

void FftPlan::forward_real(std::span<const double> in, std::vector<std::complex<double>>& out) const {
  if (in.size() != n_) throw DataError("FFT input length does not match the plan");
  out.resize(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = {in[k], 0.0};
  forward(out);
}

}  // namespace corrtwo
