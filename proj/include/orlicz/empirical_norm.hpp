#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "orlicz/orlicz_function.hpp"

namespace orlicz {

/// A finite, nonempty vector of finite observations.
class Sample {
 public:
  /// Throws InvalidArgument on an empty vector or a non-finite entry.
  explicit Sample(std::vector<double> values, std::string source = {});

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double max_abs() const noexcept { return max_abs_; }
  /// Free-form provenance ("csv:data.csv#x", "exponential seed=7", ...).
  const std::string& source() const noexcept { return source_; }

 private:
  std::vector<double> values_;
  double max_abs_ = 0.0;
  std::string source_;
};

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 200;
};

struct NormEstimate {
  double sigma_hat = 0.0;
  /// G_n(sigma_hat) − 1; −1 for an all-zero sample.
  double constraint_residual = 0.0;
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;

  friend bool operator==(const NormEstimate&, const NormEstimate&) = default;
};

/// G_n(σ) = (1/n) Σ ψ(|X_i|/σ). Saturated if any addend saturates.
double empirical_constraint(const Sample& sample, const OrliczFunction& psi, double sigma);

/// G_n′(σ) = −(1/n) Σ (|X_i|/σ²) ψ′(|X_i|/σ).
double empirical_constraint_derivative(const Sample& sample, const OrliczFunction& psi,
                                       double sigma);

/// Empirical Orlicz norm inf{σ > 0 : G_n(σ) ≤ 1}.
///
/// For a sample with max|X_i| = m > 0 this is the unique root of G_n(σ) = 1.
/// The root is bracketed by [m/ψ⁻¹(n), m/ψ⁻¹(1/n)] (the largest addend alone
/// reaches n at the left end, every addend is at most 1/n at the right end),
/// and refined by bisection until hi − lo ≤ tol·(1 + hi). An all-zero sample
/// has norm 0.
///
/// Throws BracketFailure if the bracket does not hold and NonConvergence when
/// max_iter is exhausted.
NormEstimate empirical_norm(const Sample& sample, const OrliczFunction& psi,
                            const SolverOptions& options = {});

/// Bound on |G_n(σ̂) − 1| implied by the final bracket: G_n is decreasing and
/// convex in σ, so |G_n′| is largest at the left end. Includes a
/// summation-rounding allowance.
double residual_bound(const Sample& sample, const OrliczFunction& psi,
                      const NormEstimate& estimate);

}  // namespace orlicz
