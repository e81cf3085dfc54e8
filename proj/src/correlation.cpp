#include "corrtwo/correlation.hpp"

#include <new>

#include "corrtwo/engine_ft.hpp"
#include "corrtwo/engine_ht.hpp"
#include "corrtwo/error.hpp"
#include "correlation_detail.hpp"

namespace corrtwo {

void require_compatible(const DynamicSpectra& a, const DynamicSpectra& b) {
  if (a.m() < 2) throw DataError("correlation needs m >= 2 perturbation values");
  if (a.values.rows() != a.m() || a.values.cols() != a.n() || b.values.rows() != b.m() ||
      b.values.cols() != b.n())
    throw DataError("dynamic spectra dimensions do not match their axes");
  if (a.perturbation_axis != b.perturbation_axis) {
    throw DataError("perturbation axis mismatch: the two inputs must share the same perturbation "
                    "values (resample both onto a common grid first)");
  }
  if (a.scaling_exponent != b.scaling_exponent)
    throw DataError("the two inputs were scaled with different exponents");
}

bool same_spectra(const DynamicSpectra& a, const DynamicSpectra& b) {
  return &a == &b || a == b;
}

NormalizationSpec default_normalization(Engine engine) {
  return engine == Engine::Fourier ? NormalizationSpec::noda() : NormalizationSpec::unit();
}

CorrelationSpectra correlate(Engine engine, const DynamicSpectra& dyn1, const DynamicSpectra& dyn2,
                             const NormalizationSpec& norm, unsigned workers) {
  return engine == Engine::Fourier ? correlate_ft(dyn1, dyn2, norm, workers)
                                   : correlate_ht(dyn1, dyn2, norm, workers);
}

namespace detail {

CorrelationSpectra allocate_result(const DynamicSpectra& dyn1, const DynamicSpectra& dyn2,
                                   Engine engine, bool homo) {
  CorrelationSpectra out;
  const std::size_t n1 = dyn1.n(), n2 = dyn2.n();
  try {
    out.sync = Matrix(n1, n2);
    out.async = Matrix(n1, n2);
  } catch (const std::bad_alloc&) {
    const double gib = 16.0 * static_cast<double>(n1) * static_cast<double>(n2) / (1024.0 * 1024 * 1024);
    throw NumericError("out of memory allocating a " + std::to_string(n1) + "x" +
                       std::to_string(n2) + " correlation result (needs 16*n1*n2 bytes, about " +
                       std::to_string(gib) + " GiB); reduce the spectral range");
  }
  out.axis1 = dyn1.spectral_axis;
  out.axis2 = dyn2.spectral_axis;
  out.ref1 = dyn1.reference_used;
  out.ref2 = dyn2.reference_used;
  out.engine = engine;
  out.is_homo = homo;
  out.scaling_exponent = dyn1.scaling_exponent;
  return out;
}

}  // namespace detail

}  // namespace corrtwo
