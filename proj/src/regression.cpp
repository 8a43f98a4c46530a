#include "orlicz/regression.hpp"

#include <cmath>
#include <string>

#include "orlicz/errors.hpp"

namespace orlicz {

LinearModelData::LinearModelData(Eigen::VectorXd y, Eigen::MatrixXd z)
    : y_(std::move(y)), z_(std::move(z)) {
  if (z_.cols() < 1) throw InvalidArgument("linear model: need at least one covariate");
  if (y_.size() != z_.rows()) {
    throw InvalidArgument("linear model: " + std::to_string(y_.size()) + " responses but " +
                          std::to_string(z_.rows()) + " covariate rows");
  }
  if (z_.rows() <= z_.cols()) {
    throw InvalidArgument("linear model: need n > d, got n=" + std::to_string(z_.rows()) +
                          ", d=" + std::to_string(z_.cols()));
  }
  if (!y_.allFinite() || !z_.allFinite()) {
    throw InvalidArgument("linear model: non-finite entry");
  }
}

SignalPath::SignalPath(std::vector<double> mu) : mu_(std::move(mu)) {
  for (std::size_t i = 0; i < mu_.size(); ++i) {
    if (!std::isfinite(mu_[i])) {
      throw InvalidArgument("signal path: non-finite entry at index " + std::to_string(i));
    }
  }
}

Eigen::VectorXd ols_fit(const LinearModelData& data) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(data.z());
  qr.setThreshold(1e-10);
  if (qr.rank() < data.d()) {
    throw RankDeficient("ols: covariate matrix has rank " + std::to_string(qr.rank()) +
                        " < d=" + std::to_string(data.d()));
  }
  return qr.solve(data.y());
}

Eigen::VectorXd residuals(const LinearModelData& data, const Eigen::VectorXd& beta) {
  if (beta.size() != data.d()) throw InvalidArgument("residuals: beta has wrong length");
  return data.y() - data.z() * beta;
}

NormEstimate lm_orlicz_estimator(const LinearModelData& data, const Eigen::VectorXd& beta,
                                 const OrliczFunction& psi, const SolverOptions& options) {
  const Eigen::VectorXd r = residuals(data, beta);
  return empirical_norm(Sample(std::vector<double>(r.begin(), r.end()), "residuals"), psi,
                        options);
}

NormEstimate lm_orlicz_estimator(const LinearModelData& data, const OrliczFunction& psi,
                                 const SolverOptions& options) {
  return lm_orlicz_estimator(data, ols_fit(data), psi, options);
}

std::size_t exceedance_count(const SignalPath& mu, double r) {
  if (!(r > 0.0)) throw InvalidArgument("exceedance_count: r must be positive");
  if (mu.size() < 2) throw InvalidArgument("exceedance_count: need n >= 2");
  const auto m = mu.mu();
  std::size_t count = 0;
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (std::abs(m[i] - m[i - 1]) > r) ++count;
  }
  return count;
}

Sample first_differences(const Sample& y) {
  if (y.size() < 2) throw InvalidArgument("first differences: need n >= 2");
  std::vector<double> d(y.size() - 1);
  for (std::size_t i = 1; i < y.size(); ++i) d[i - 1] = y[i] - y[i - 1];
  return Sample(std::move(d), "diff(" + y.source() + ")");
}

NormEstimate np_diff_estimator(const Sample& y, const OrliczFunction& psi,
                               const SolverOptions& options) {
  return empirical_norm(first_differences(y), psi, options);
}

PopulationNorm difference_norm(const Distribution& dist, const OrliczFunction& psi) {
  switch (dist.kind()) {
    case Distribution::Kind::StdGaussian: {
      auto base = population_norm(dist, psi);
      base.sigma_psi *= std::sqrt(2.0);
      base.quadrature_error_estimate *= std::sqrt(2.0);
      return base;
    }
    case Distribution::Kind::Exponential:
    case Distribution::Kind::CenteredExponential:
      return population_norm(Distribution::exponential(), psi);
    default:
      throw UnsupportedPair("difference_norm: no reference for " + dist.name());
  }
}

}  // namespace orlicz
