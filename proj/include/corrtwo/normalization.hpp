#pragma once

#include <cstddef>
#include <string>

namespace corrtwo {

/// Constant multiplying a correlation sum over m perturbation values.
class NormalizationSpec {
public:
  enum class Kind { NodaDefault, Unit, Custom };

  /// 1 / (pi (m - 1)), the Fourier route's default.
  static NormalizationSpec noda() { return NormalizationSpec(Kind::NodaDefault, 0.0); }
  /// 1 / (m - 1), the direct-summation default.
  static NormalizationSpec unit() { return NormalizationSpec(Kind::Unit, 0.0); }
  /// A fixed positive constant, independent of m.
  static NormalizationSpec custom(double c);

  /// Parses "noda", "unit" or "custom:C".
  static NormalizationSpec parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  double constant(std::size_t m) const;
  std::string describe() const;

private:
  NormalizationSpec(Kind k, double c) : kind_(k), custom_(c) {}
  Kind kind_;
  double custom_;
};

}  // namespace corrtwo
