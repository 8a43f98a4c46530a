#include "orlicz/empirical_norm.hpp"

#include <cmath>
#include <limits>

#include "orlicz/bisection.hpp"
#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

// Relative widening of the analytic bracket; far above summation rounding,
// far below any tolerance of interest.
constexpr double kBracketSlack = 1e-9;

}  // namespace

Sample::Sample(std::vector<double> values, std::string source)
    : values_(std::move(values)), source_(std::move(source)) {
  if (values_.empty()) throw InvalidArgument("sample must be nonempty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InvalidArgument("sample entry " + std::to_string(i) + " is not finite");
    }
    max_abs_ = std::max(max_abs_, std::abs(values_[i]));
  }
}

double empirical_constraint(const Sample& sample, const OrliczFunction& psi, double sigma) {
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  double sum = 0.0;
  for (const double x : sample.values()) {
    const double term = psi(std::abs(x) / sigma);
    if (term == kSaturated) return kSaturated;
    sum += term;
  }
  return sum / static_cast<double>(sample.size());
}

double empirical_constraint_derivative(const Sample& sample, const OrliczFunction& psi,
                                       double sigma) {
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  double sum = 0.0;
  for (const double x : sample.values()) {
    const double a = std::abs(x);
    if (a == 0.0) continue;
    sum += a / (sigma * sigma) * psi.derivative(a / sigma);
  }
  return -sum / static_cast<double>(sample.size());
}

NormEstimate empirical_norm(const Sample& sample, const OrliczFunction& psi,
                            const SolverOptions& options) {
  if (!(options.tol > 0.0)) throw InvalidArgument("solver tolerance must be positive");
  NormEstimate estimate;
  const double m = sample.max_abs();
  if (m == 0.0) {
    estimate.constraint_residual = -1.0;
    return estimate;
  }

  const double n = static_cast<double>(sample.size());
  const double lo = m / psi.inverse(n) * (1.0 - kBracketSlack);
  const double hi = m / psi.inverse(1.0 / n) * (1.0 + kBracketSlack);

  const auto constraint = [&](double sigma) { return empirical_constraint(sample, psi, sigma); };
  const BisectionResult root =
      bisect_decreasing(constraint, lo, hi, 1.0, options.tol, options.max_iter);

  estimate.sigma_hat = root.root;
  estimate.iterations = root.iterations;
  estimate.bracket_lo = root.lo;
  estimate.bracket_hi = root.hi;
  estimate.constraint_residual = constraint(root.root) - 1.0;
  return estimate;
}

double residual_bound(const Sample& sample, const OrliczFunction& psi,
                      const NormEstimate& estimate) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double rounding = 1e-12 + static_cast<double>(sample.size()) * kEps;
  if (estimate.sigma_hat == 0.0) return rounding;
  const double slope = std::abs(empirical_constraint_derivative(sample, psi, estimate.bracket_lo));
  return slope * (estimate.bracket_hi - estimate.bracket_lo) + rounding;
}

}  // namespace orlicz
