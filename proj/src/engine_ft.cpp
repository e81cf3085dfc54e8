#include "corrtwo/engine_ft.hpp"

#include <cmath>

#include "corrtwo/correlation.hpp"
#include "corrtwo/error.hpp"
#include "corrtwo/fft.hpp"
#include "corrtwo/parallel.hpp"
#include "correlation_detail.hpp"

namespace corrtwo {

FourierWorkspace::FourierWorkspace(std::size_t m, std::size_t channels)
    : m_(m), channels_(channels), weights_(m / 2 + 1, 2.0), spectrum_((m / 2 + 1) * channels) {
  weights_.front() = 1.0;
  if (m % 2 == 0) weights_.back() = 1.0;
}

FourierWorkspace dft_channels(const DynamicSpectra& dyn, unsigned workers) {
  const std::size_t m = dyn.values.rows(), n = dyn.values.cols();
  if (m < 2) throw DataError("Fourier transform needs m >= 2 perturbation values");
  for (double v : dyn.values.values())
    if (!std::isfinite(v)) throw NumericError("dynamic spectra hold a non-finite value");

  FourierWorkspace ws(m, n);
  const FftPlan plan(m);
  const std::size_t kept = ws.frequencies();
  for_each_block(n, workers, [&](Block block) {
    std::vector<double> column(m);
    std::vector<std::complex<double>> spectrum;
    for (std::size_t i = block.begin; i < block.end; ++i) {
      for (std::size_t j = 0; j < m; ++j) column[j] = dyn.values(j, i);
      plan.forward_real(column, spectrum);
      for (std::size_t w = 0; w < kept; ++w) ws.at(w, i) = spectrum[w];
      // Zero frequency (and Nyquist for even m) of real data is real.
      ws.at(0, i).imag(0.0);
      if (m % 2 == 0) ws.at(kept - 1, i).imag(0.0);
    }
  });
  return ws;
}

namespace {

struct SplitSpectrum {
  std::vector<double> re, im;  // frequencies x channels
};

SplitSpectrum split(const FourierWorkspace& ws, bool weighted) {
  SplitSpectrum s;
  const std::size_t total = ws.frequencies() * ws.channels();
  s.re.resize(total);
  s.im.resize(total);
  for (std::size_t w = 0; w < ws.frequencies(); ++w) {
    // weights are 1 or 2, so premultiplying is exact.
    const double scale = weighted ? ws.weight(w) : 1.0;
    for (std::size_t c = 0; c < ws.channels(); ++c) {
      s.re[w * ws.channels() + c] = scale * ws.at(w, c).real();
      s.im[w * ws.channels() + c] = scale * ws.at(w, c).imag();
    }
  }
  return s;
}

CorrelationSpectra assemble(const DynamicSpectra& dyn1, const DynamicSpectra& dyn2,
                            const FourierWorkspace& ws1, const FourierWorkspace& ws2,
                            const NormalizationSpec& norm, unsigned workers, bool homo) {
  const std::size_t n1 = ws1.channels(), n2 = ws2.channels(), kept = ws1.frequencies();
  CorrelationSpectra out = detail::allocate_result(dyn1, dyn2, Engine::Fourier, homo);
  out.normalization = norm.constant(ws1.m());
  const SplitSpectrum left = split(ws1, true);
  const SplitSpectrum right = split(ws2, false);
  const double scale = out.normalization;

  for_each_block(n1, workers, [&](Block block) {
    for (std::size_t i = block.begin; i < block.end; ++i) {
      double* re = out.sync.row(i).data();
      double* im = out.async.row(i).data();
      for (std::size_t w = 0; w < kept; ++w) {
        const double ar = left.re[w * n1 + i], ai = left.im[w * n1 + i];
        const double* br = right.re.data() + w * n2;
        const double* bi = right.im.data() + w * n2;
        for (std::size_t j = 0; j < n2; ++j) {
          re[j] += ar * br[j] + ai * bi[j];
          im[j] += ai * br[j] - ar * bi[j];
        }
      }
      for (std::size_t j = 0; j < n2; ++j) {
        re[j] *= scale;
        im[j] *= scale;
      }
    }
  });
  return out;
}

}  // namespace

CorrelationSpectra correlate_ft(const DynamicSpectra& dyn1, const DynamicSpectra& dyn2,
                                const NormalizationSpec& norm, unsigned workers) {
  require_compatible(dyn1, dyn2);
  if (same_spectra(dyn1, dyn2)) return correlate_ft(dyn1, norm, workers);
  const FourierWorkspace ws1 = dft_channels(dyn1, workers);
  const FourierWorkspace ws2 = dft_channels(dyn2, workers);
  return assemble(dyn1, dyn2, ws1, ws2, norm, workers, false);
}

CorrelationSpectra correlate_ft(const DynamicSpectra& dyn, const NormalizationSpec& norm,
                                unsigned workers) {
  require_compatible(dyn, dyn);
  const FourierWorkspace ws = dft_channels(dyn, workers);
  return assemble(dyn, dyn, ws, ws, norm, workers, true);
}

}  // namespace corrtwo
