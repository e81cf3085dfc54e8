#pragma once

#include "corrtwo/dataset.hpp"
#include "corrtwo/preprocess.hpp"

namespace corrtwo::detail {

/// Zeroed result with axes, references and tags filled in; allocation
/// failure becomes a NumericError that states the memory needed.
CorrelationSpectra allocate_result(const DynamicSpectra& dyn1, const DynamicSpectra& dyn2,
                                   Engine engine, bool homo);

}  // namespace corrtwo::detail
