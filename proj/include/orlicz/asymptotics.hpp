#pragma once

#include <string>

#include "orlicz/distributions.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/stable.hpp"

namespace orlicz {

/// r_n = n^{n_power} · (log n)^{log_power}.
struct RateExponents {
  double n_power = 0.5;
  double log_power = 0.0;

  double at(double n) const;

  friend bool operator==(const RateExponents&, const RateExponents&) = default;
};

/// Limit of r_n(σ̂ − σ_ψ): centered Gaussian or a stable law.
struct LimitLaw {
  enum class Kind { Gaussian, Stable };

  Kind kind = Kind::Gaussian;
  double variance = 1.0;  // Gaussian
  StableParams stable;    // Stable
  RateExponents rate;

  static LimitLaw gaussian(double variance, RateExponents rate);
  static LimitLaw stable_law(const StableParams& params, RateExponents rate);

  /// Throws InvalidArgument on a nonpositive variance, bad stable
  /// parameters or non-finite rate exponents.
  void validate() const;
  std::string describe() const;

  friend bool operator==(const LimitLaw&, const LimitLaw&) = default;
};

/// (E ψ(|X|/σ)² − 1) / [E (|X|/σ²) ψ′(|X|/σ)]², both by quadrature. Throws
/// MomentDivergence if either expectation diverges.
double clt_variance(const Distribution& dist, const OrliczFunction& psi, double sigma_psi);

/// Exp(1) under ψ₁: N(0, 1/2) at rate √(n / log n).
LimitLaw exp_limit_law();

/// Weibull(γ) under ψ_γ: N(0, 4^{1/γ}/(8γ²)) at rate √(n / log n).
LimitLaw weibull_limit_law(double gamma);

/// −G′(√(8/3)) for N(0, 1) under ψ₂, equal to √(27/2).
double gaussian_derivative_constant();

/// √(2 / (27 π^{3/4})), the factor in front of Y − 4.
double gaussian_limit_scale();

/// N(0, 1) under ψ₂: k(Y − 4) with k = gaussian_limit_scale(), at rate
/// n^{1/4} (log n)^{−3/8}. Y is the calibrated 4/3-stable law, so the result
/// is stable with scale k·s_Y and location k(δ_Y − 4).
LimitLaw gaussian_limit_law();

/// Rate n^{1 − 1/γ} of the adversarial law with tail index γ.
RateExponents adversarial_rate(double gamma);

/// a_n and b_n for Z = ψ₂(X/√(8/3)) − 1 = e^{3X²/8} − 2, X ~ N(0, 1):
///   a_n = inf{x : P(|Z| > x) ≤ 1/n},   b_n = n E[Z 1{|Z| ≤ a_n}].
/// For n ≥ 12 the infimum is e^{3c_n²/8} − 2 with c_n = Φ⁻¹(1 − 1/(2n)); for
/// smaller n that expression is below 1 (negative for n ≤ 5) and the
/// infimum is solved for directly. b_n is integrated numerically; the
/// asymptotic proxy −4a_n is reported alongside.
struct NormingSequences {
  double n = 0.0;
  double a_n = 0.0;
  double b_n = 0.0;
  double b_n_proxy = 0.0;
};

NormingSequences gaussian_norming(double n);

/// √(log(1/q²) − log log(1/q) + log(1/(4π))), the leading-order form of
/// Φ⁻¹(1 − q). Throws DomainError for q outside (0, 0.02] or a nonpositive
/// radicand.
double gaussian_quantile_expansion(double q);

}  // namespace orlicz
