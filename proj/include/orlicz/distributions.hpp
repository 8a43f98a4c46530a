#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "orlicz/empirical_norm.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/rng.hpp"

namespace orlicz {

/// The parametric laws used throughout the library.
///
///   Exponential          Exp(1)
///   Weibull(γ)           P(X > x) = exp(−x^γ)
///   StdGaussian          N(0, 1)
///   Adversarial(γ, ψ)    P(X > z) = min[1, (ψ(z)·γ/(γ − 1))^{−γ}], γ ∈ (1, 2);
///                        has ‖X‖_ψ = 1 and a regularly varying ψ(X)-tail
///   CenteredExponential  Exp(1) − 1, a centered error law for the regression
///                        models
class Distribution {
 public:
  enum class Kind { Exponential, Weibull, StdGaussian, Adversarial, CenteredExponential };

  static Distribution exponential();
  static Distribution weibull(double shape);
  static Distribution std_gaussian();
  /// ψ must be of the exponential family (the construction is for ψ_α).
  static Distribution adversarial(double gamma, const OrliczFunction& psi);
  static Distribution centered_exponential();

  Kind kind() const noexcept { return kind_; }
  /// γ for Weibull and Adversarial, 1 otherwise.
  double shape() const noexcept { return shape_; }
  /// The Orlicz function an Adversarial law is built from.
  const std::optional<OrliczFunction>& psi() const noexcept { return psi_; }

  double survival(double z) const;
  /// Upper quantile: the z with survival(z) = u, for u ∈ (0, 1).
  double quantile(double u) const;
  double density(double z) const;
  double log_density(double z) const;
  /// Left end of the support.
  double support_lower() const;

  /// One draw.
  double draw(Rng& rng) const;

  /// "exponential", "weibull(2)", "adversarial(1.5,exp:1)", ...
  std::string name() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  Distribution(Kind kind, double shape, std::optional<OrliczFunction> psi)
      : kind_(kind), shape_(shape), psi_(std::move(psi)) {}

  Kind kind_;
  double shape_;
  std::optional<OrliczFunction> psi_;
};

/// Φ⁻¹(1 − q) for q ∈ (0, 1).
double std_normal_upper_quantile(double q);

/// n iid draws, reproducible from (dist, n, seed).
Sample sample(const Distribution& dist, std::size_t n, std::uint64_t seed);

struct PopulationNorm {
  enum class Method { Analytic, Quadrature };
  double sigma_psi = 0.0;
  Method method = Method::Analytic;
  double quadrature_error_estimate = 0.0;
};

/// E h(|X|) for h supplied through its logarithm, log_h(z) = log h(z).
/// Working in logs keeps integrands like ψ(z/σ)·density(z) finite when ψ
/// alone overflows. A Divergent status carries value = +∞.
TailQuadratureResult expectation_abs(const Distribution& dist,
                                     const std::function<double(double)>& log_h,
                                     const QuadratureOptions& options = {});

/// Functionals of ψ integrated against the law of |X| at scale σ.
enum class PsiMoment {
  Value,             ///< E ψ(|X|/σ)
  Square,            ///< E ψ(|X|/σ)²
  ScaledDerivative,  ///< E (|X|/σ²) ψ′(|X|/σ)
};

/// expectation_abs specialised to a ψ functional. For Weibull laws under an
/// exponential ψ the exponent c·(z/σ)^α − z^γ is formed as one product, so
/// the divergence boundary (e.g. σ = 1 for Weibull γ under ψ_γ) is classified
/// as Divergent rather than lost to cancellation.
TailQuadratureResult expectation_psi(const Distribution& dist, const OrliczFunction& psi,
                                     double sigma, PsiMoment moment,
                                     const QuadratureOptions& options = {});

/// Closed form ‖X‖_ψ for (Exponential, ψ₁), (Weibull γ, ψ_γ),
/// (StdGaussian, ψ₂) and (Adversarial(γ, ψ), ψ). Throws UnsupportedPair
/// otherwise.
PopulationNorm population_norm_analytic(const Distribution& dist, const OrliczFunction& psi);

/// G(σ) = E ψ(|X|/σ) by adaptive quadrature; kSaturated when the integral
/// diverges. Throws QuadratureFailure when it neither converges nor diverges.
double population_constraint(const Distribution& dist, const OrliczFunction& psi,
                             double sigma, const QuadratureOptions& options = {});

/// G′(σ) = −E (|X|/σ²) ψ′(|X|/σ) by adaptive quadrature; −∞ on divergence.
double population_constraint_derivative(const Distribution& dist, const OrliczFunction& psi,
                                        double sigma, const QuadratureOptions& options = {});

/// Root of G(σ) = 1 by bracketing and bisection over the quadrature oracle.
/// The bracket search spans σ ∈ [1e-8, 1e8]; BracketFailure outside it.
PopulationNorm population_norm_quadrature(const Distribution& dist, const OrliczFunction& psi,
                                          double tol = 1e-10);

/// Analytic value when the pair is covered, quadrature otherwise.
PopulationNorm population_norm(const Distribution& dist, const OrliczFunction& psi);

}  // namespace orlicz
