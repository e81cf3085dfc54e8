#include "corrtwo/engine_ht.hpp"

#include <numbers>

#include "corrtwo/correlation.hpp"
#include "corrtwo/error.hpp"
#include "corrtwo/parallel.hpp"
#include "correlation_detail.hpp"

namespace corrtwo {

namespace {

double noda_entry(std::ptrdiff_t diff) {
  return 1.0 / (std::numbers::pi * static_cast<double>(diff));
}

}  // namespace

HilbertNodaMatrix hilbert_noda_matrix(std::size_t m) {
  if (m < 2) throw DataError("Hilbert-Noda matrix needs m >= 2");
  HilbertNodaMatrix h{Matrix(m, m)};
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k)
      if (j != k)
        h.values(j, k) = noda_entry(static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(j));
  return h;
}

Matrix hilbert_transform(const DynamicSpectra& dyn, unsigned workers) {
  const std::size_t m = dyn.values.rows(), n = dyn.values.cols();
  if (m < 2) throw DataError("Hilbert transform needs m >= 2 perturbation values");
  // The matrix is constant along diagonals, so one kernel row of length m
  // stands in for it: N[j][k] = kernel[k - j] for k > j and -kernel[j - k]
  // below the diagonal (bitwise the same values as the materialized matrix).
  std::vector<double> kernel(m, 0.0);
  for (std::size_t d = 1; d < m; ++d) kernel[d] = noda_entry(static_cast<std::ptrdiff_t>(d));

  Matrix z(m, n);
  for_each_block(n, workers, [&](Block block) {
    for (std::size_t j = 0; j < m; ++j) {
      double* out = z.row(j).data();
      for (std::size_t k = 0; k < m; ++k) {
        if (k == j) continue;
        const double coeff = k > j ? kernel[k - j] : -kernel[j - k];
        const double* y = dyn.values.row(k).data();
        for (std::size_t i = block.begin; i < block.end; ++i) out[i] += coeff * y[i];
      }
    }
  });
  return z;
}

namespace {

/// out(i, j) = scale * sum_t left(t, i) * right(t, j), ascending t.
void cross_products(const Matrix& left, const Matrix& right, double scale, Matrix& out,
                    unsigned workers) {
  const std::size_t m = left.rows(), n2 = right.cols();
  for_each_block(left.cols(), workers, [&](Block block) {
    for (std::size_t i = block.begin; i < block.end; ++i) {
      double* acc = out.row(i).data();
      for (std::size_t t = 0; t < m; ++t) {
        const double a = left(t, i);
        const double* b = right.row(t).data();
        for (std::size_t j = 0; j < n2; ++j) acc[j] += a * b[j];
      }
      for (std::size_t j = 0; j < n2; ++j) acc[j] *= scale;
    }
  });
}

}  // namespace

Matrix sync_direct(const DynamicSpectra& dyn1, const DynamicSpectra& dyn2,
                   const NormalizationSpec& norm, unsigned workers) {
  require_compatible(dyn1, dyn2);
  Matrix out(dyn1.n(), dyn2.n());
  cross_products(dyn1.values, dyn2.values, norm.constant(dyn1.m()), out, workers);
  return out;
}

CorrelationSpectra correlate_ht(const DynamicSpectra& dyn1, const DynamicSpectra& dyn2,
                                const NormalizationSpec& norm, unsigned workers) {
  require_compatible(dyn1, dyn2);
  const bool homo = same_spectra(dyn1, dyn2);
  CorrelationSpectra out = detail::allocate_result(dyn1, dyn2, Engine::Hilbert, homo);
  out.normalization = norm.constant(dyn1.m());
  cross_products(dyn1.values, dyn2.values, out.normalization, out.sync, workers);
  const Matrix z2 = hilbert_transform(dyn2, workers);
  cross_products(dyn1.values, z2, out.normalization, out.async, workers);
  if (homo) {
    // Keep only the skew part so that roundoff cannot break the symmetry.
    Matrix& a = out.async;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      a(i, i) = 0.0;
      for (std::size_t j = i + 1; j < a.cols(); ++j) {
        const double v = 0.5 * (a(i, j) - a(j, i));
        a(i, j) = v;
        a(j, i) = -v;
      }
    }
  }
  return out;
}

CorrelationSpectra correlate_ht(const DynamicSpectra& dyn, const NormalizationSpec& norm,
                                unsigned workers) {
  return correlate_ht(dyn, dyn, norm, workers);
}

}  // namespace corrtwo
