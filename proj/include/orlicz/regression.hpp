#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "orlicz/distributions.hpp"
#include "orlicz/empirical_norm.hpp"
#include "orlicz/orlicz_function.hpp"

namespace orlicz {

/// Responses y (length n) and covariates Z (n × d) of Y_i = βᵀZ_i + ε_i.
class LinearModelData {
 public:
  /// Throws InvalidArgument unless n > d ≥ 1, the shapes agree and every
  /// entry is finite. Column rank is checked by ols_fit.
  LinearModelData(Eigen::VectorXd y, Eigen::MatrixXd z);

  const Eigen::VectorXd& y() const noexcept { return y_; }
  const Eigen::MatrixXd& z() const noexcept { return z_; }
  Eigen::Index n() const noexcept { return z_.rows(); }
  Eigen::Index d() const noexcept { return z_.cols(); }

 private:
  Eigen::VectorXd y_;
  Eigen::MatrixXd z_;
};

/// Design points μ_1..μ_n of Y_i = μ_i + ε_i.
class SignalPath {
 public:
  /// Throws InvalidArgument on a non-finite entry.
  explicit SignalPath(std::vector<double> mu);

  std::span<const double> mu() const noexcept { return mu_; }
  std::size_t size() const noexcept { return mu_.size(); }

 private:
  std::vector<double> mu_;
};

/// Least-squares β̂ by column-pivoted Householder QR. Throws RankDeficient
/// when the factorization finds rank < d.
Eigen::VectorXd ols_fit(const LinearModelData& data);

/// y − Zβ.
Eigen::VectorXd residuals(const LinearModelData& data, const Eigen::VectorXd& beta);

/// Empirical norm of the OLS residuals.
NormEstimate lm_orlicz_estimator(const LinearModelData& data, const OrliczFunction& psi,
                                 const SolverOptions& options = {});

/// Empirical norm of y − Zβ for a given β.
NormEstimate lm_orlicz_estimator(const LinearModelData& data, const Eigen::VectorXd& beta,
                                 const OrliczFunction& psi, const SolverOptions& options = {});

/// E_n(μ, r) = #{i ≥ 2 : |μ_i − μ_{i−1}| > r}. Throws InvalidArgument if
/// r ≤ 0 or n < 2.
std::size_t exceedance_count(const SignalPath& mu, double r);

/// Y_2 − Y_1, …, Y_n − Y_{n−1}. Throws InvalidArgument if n < 2.
Sample first_differences(const Sample& y);

/// Empirical norm of the n − 1 first differences.
NormEstimate np_diff_estimator(const Sample& y, const OrliczFunction& psi,
                               const SolverOptions& options = {});

/// ‖ε₂ − ε₁‖_ψ for iid errors from dist, the target of np_diff_estimator.
/// Gaussian errors: √2‖ε‖_ψ. Exponential and centered exponential errors:
/// the difference is Laplace(1), so its absolute value is Exp(1). Throws
/// UnsupportedPair for other laws.
PopulationNorm difference_norm(const Distribution& dist, const OrliczFunction& psi);

}  // namespace orlicz
