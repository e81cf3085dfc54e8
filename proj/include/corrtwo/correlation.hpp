#pragma once

#include "corrtwo/dataset.hpp"
#include "corrtwo/normalization.hpp"
#include "corrtwo/preprocess.hpp"

namespace corrtwo {

/// Throws DataError unless both inputs were sampled on bitwise-identical
/// perturbation axes (m >= 2) under the same scaling exponent.
void require_compatible(const DynamicSpectra& a, const DynamicSpectra& b);

/// True when `a` and `b` are the same object or hold identical values.
bool same_spectra(const DynamicSpectra& a, const DynamicSpectra& b);

/// Default normalization of each engine.
NormalizationSpec default_normalization(Engine engine);

/// Dispatches to correlate_ft or correlate_ht.
CorrelationSpectra correlate(Engine engine, const DynamicSpectra& dyn1, const DynamicSpectra& dyn2,
                             const NormalizationSpec& norm, unsigned workers);

}  // namespace corrtwo
