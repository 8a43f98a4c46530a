#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace orlicz {

/// Value returned by ψ when the result exceeds the double range. Constraint
/// sums that contain a saturated addend are saturated as well.
inline constexpr double kSaturated = std::numeric_limits<double>::infinity();

/// One of the two built-in Orlicz function families:
///   ExponentialAlpha: ψ(x) = exp(x^α) − 1
///   Power:            ψ(x) = x^p
///
/// ψ is convex for α ≥ 1 and p ≥ 1. Shapes α ∈ (0, 1) are accepted for the
/// exponential family (ψ is then increasing but concave near 0, and the norm
/// is still defined as the root of the constraint); see is_convex().
class OrliczFunction {
 public:
  enum class Kind { ExponentialAlpha, Power };

  /// ψ_α. Throws InvalidArgument unless α > 0 and finite.
  static OrliczFunction exponential(double alpha);
  /// x^p. Throws InvalidArgument unless p ≥ 1 and finite.
  static OrliczFunction power(double p);
  /// Parses "exp:ALPHA" or "power:P".
  static OrliczFunction parse(std::string_view spec);

  Kind kind() const noexcept { return kind_; }
  double shape() const noexcept { return shape_; }
  bool is_convex() const noexcept { return shape_ >= 1.0; }

  double eval(double x) const noexcept;
  double operator()(double x) const noexcept { return eval(x); }
  double derivative(double x) const noexcept;
  double inverse(double y) const noexcept;

  /// log ψ(x) without forming ψ(x); −∞ at x = 0.
  double log_eval(double x) const noexcept;
  /// log ψ′(x) without forming ψ′(x).
  double log_derivative(double x) const noexcept;

  /// "exp:2", "power:1.5".
  std::string to_string() const;

  friend bool operator==(const OrliczFunction&, const OrliczFunction&) = default;

 private:
  OrliczFunction(Kind kind, double shape) : kind_(kind), shape_(shape) {}

  Kind kind_;
  double shape_;
};

}  // namespace orlicz
