#include "corrtwo/normalization.hpp"

#include <cmath>
#include <numbers>

#include "corrtwo/error.hpp"
#include "corrtwo/numfmt.hpp"

namespace corrtwo {

NormalizationSpec NormalizationSpec::custom(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw UsageError("custom normalization must be a finite positive constant");
  return NormalizationSpec(Kind::Custom, c);
}

NormalizationSpec NormalizationSpec::parse(const std::string& text) {
  if (text == "noda") return noda();
  if (text == "unit") return unit();
  if (text.rfind("custom:", 0) == 0) {
    auto v = parse_real(std::string_view(text).substr(7));
    if (!v) throw UsageError("cannot parse normalization constant in '" + text + "'");
    return custom(*v);
  }
  throw UsageError("unknown normalization '" + text + "' (expected noda, unit or custom:C)");
}

double NormalizationSpec::constant(std::size_t m) const {
  if (kind_ == Kind::Custom) return custom_;
  if (m < 2) throw DataError("normalization needs m >= 2");
  const double dof = static_cast<double>(m - 1);
  return kind_ == Kind::NodaDefault ? 1.0 / (std::numbers::pi * dof) : 1.0 / dof;
}

std::string NormalizationSpec::describe() const {
  switch (kind_) {
    case Kind::NodaDefault: return "noda";
    case Kind::Unit: return "unit";
    case Kind::Custom: return "custom:" + format_roundtrip(custom_);
  }
  return "unit";
}

}  // namespace corrtwo
