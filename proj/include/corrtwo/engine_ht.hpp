#pragma once

#include "corrtwo/dataset.hpp"
#include "corrtwo/matrix.hpp"
#include "corrtwo/normalization.hpp"
#include "corrtwo/preprocess.hpp"

namespace corrtwo {

/// N[j][k] = 0 for j == k, otherwise 1 / (pi (k - j)). Skew-symmetric and
/// constant along diagonals.
struct HilbertNodaMatrix {
  Matrix values;
  std::size_t m() const noexcept { return values.rows(); }
};

HilbertNodaMatrix hilbert_noda_matrix(std::size_t m);

/// Phi = Norm * dyn1^T dyn2 summed over the perturbation axis in ascending
/// order. Default Norm is 1 / (m - 1).
Matrix sync_direct(const DynamicSpectra& dyn1, const DynamicSpectra& dyn2,
                   const NormalizationSpec& norm = NormalizationSpec::unit(), unsigned workers = 1);

/// z = N y for every channel (m x n result).
Matrix hilbert_transform(const DynamicSpectra& dyn, unsigned workers = 1);

/// Direct-summation route: sync as in sync_direct, async
/// Psi(nu1, nu2) = Norm * sum_j y1(nu1, t_j) z2(nu2, t_j) with the transform
/// applied to the second operand.
CorrelationSpectra correlate_ht(const DynamicSpectra& dyn1, const DynamicSpectra& dyn2,
                                const NormalizationSpec& norm = NormalizationSpec::unit(),
                                unsigned workers = 1);

CorrelationSpectra correlate_ht(const DynamicSpectra& dyn,
                                const NormalizationSpec& norm = NormalizationSpec::unit(),
                                unsigned workers = 1);

}  // namespace corrtwo
