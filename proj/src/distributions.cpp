#include "orlicz/distributions.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "orlicz/bisection.hpp"
#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

const double kLogSqrtTwoPi = 0.5 * std::log(2.0 * std::numbers::pi);

bool same_shape(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, b); }

bool is_exponential_psi(const OrliczFunction& psi, double alpha) {
  return psi.kind() == OrliczFunction::Kind::ExponentialAlpha && same_shape(psi.shape(), alpha);
}

void check_adversarial_psi(const Distribution& dist, const OrliczFunction& psi) {
  if (dist.kind() == Distribution::Kind::Adversarial && !(*dist.psi() == psi)) {
    throw InvalidArgument(dist.name() + " is tied to its own psi; got " + psi.to_string());
  }
}

// (γ − 1)/γ, the value of ψ at the left end of the adversarial support.
double adversarial_floor(double gamma) { return (gamma - 1.0) / gamma; }

TailQuadratureResult combine(const QuadratureResult& head, TailQuadratureResult tail,
                             double tail_weight) {
  if (!head.finite) {
    tail.value = std::numeric_limits<double>::infinity();
    tail.status = TailStatus::Divergent;
    return tail;
  }
  if (tail.status == TailStatus::Divergent) return tail;
  tail.value = head.value + tail_weight * tail.value;
  tail.error = head.error + tail_weight * tail.error;
  if (!head.converged) tail.status = TailStatus::Failed;
  return tail;
}

}  // namespace

Distribution Distribution::exponential() { return {Kind::Exponential, 1.0, std::nullopt}; }

Distribution Distribution::weibull(double shape) {
  if (!std::isfinite(shape) || shape <= 0.0) {
    throw InvalidArgument("Weibull shape must be positive");
  }
  return {Kind::Weibull, shape, std::nullopt};
}

Distribution Distribution::std_gaussian() { return {Kind::StdGaussian, 1.0, std::nullopt}; }

Distribution Distribution::adversarial(double gamma, const OrliczFunction& psi) {
  if (!(gamma > 1.0 && gamma < 2.0)) {
    throw InvalidArgument("adversarial gamma must lie in (1, 2)");
  }
  if (psi.kind() != OrliczFunction::Kind::ExponentialAlpha) {
    throw InvalidArgument("adversarial law is defined for exponential psi only");
  }
  return {Kind::Adversarial, gamma, psi};
}

Distribution Distribution::centered_exponential() {
  return {Kind::CenteredExponential, 1.0, std::nullopt};
}

double Distribution::support_lower() const {
  switch (kind_) {
    case Kind::Exponential:
    case Kind::Weibull:
      return 0.0;
    case Kind::StdGaussian:
      return -std::numeric_limits<double>::infinity();
    case Kind::Adversarial:
      return psi_->inverse(adversarial_floor(shape_));
    case Kind::CenteredExponential:
      return -1.0;
  }
  return 0.0;
}

double Distribution::survival(double z) const {
  switch (kind_) {
    case Kind::Exponential:
      return z <= 0.0 ? 1.0 : std::exp(-z);
    case Kind::Weibull:
      return z <= 0.0 ? 1.0 : std::exp(-std::pow(z, shape_));
    case Kind::StdGaussian:
      return 0.5 * std::erfc(z / std::numbers::sqrt2);
    case Kind::Adversarial: {
      if (z <= support_lower()) return 1.0;
      const double log_ratio = psi_->log_eval(z) - std::log(adversarial_floor(shape_));
      return std::min(1.0, std::exp(-shape_ * log_ratio));
    }
    case Kind::CenteredExponential:
      return z <= -1.0 ? 1.0 : std::exp(-(z + 1.0));
  }
  return 0.0;
}

double Distribution::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw InvalidArgument("quantile level must lie in (0, 1)");
  switch (kind_) {
    case Kind::Exponential:
      return -std::log(u);
    case Kind::Weibull:
      return std::pow(-std::log(u), 1.0 / shape_);
    case Kind::StdGaussian:
      return std_normal_upper_quantile(u);
    case Kind::Adversarial:
      return psi_->inverse(adversarial_floor(shape_) * std::pow(u, -1.0 / shape_));
    case Kind::CenteredExponential:
      return -std::log(u) - 1.0;
  }
  return 0.0;
}

double Distribution::log_density(double z) const {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  switch (kind_) {
    case Kind::Exponential:
      return z < 0.0 ? kNegInf : -z;
    case Kind::Weibull:
      if (z < 0.0) return kNegInf;
      if (z == 0.0) return std::log(density(0.0));
      return std::log(shape_) + (shape_ - 1.0) * std::log(z) - std::pow(z, shape_);
    case Kind::StdGaussian:
      return -0.5 * z * z - kLogSqrtTwoPi;
    case Kind::Adversarial: {
      if (z < support_lower()) return kNegInf;
      const double log_psi = psi_->log_eval(z);
      return std::log(shape_) - shape_ * (log_psi - std::log(adversarial_floor(shape_))) +
             psi_->log_derivative(z) - log_psi;
    }
    case Kind::CenteredExponential:
      return z < -1.0 ? kNegInf : -(z + 1.0);
  }
  return kNegInf;
}

double Distribution::density(double z) const {
  if (kind_ == Kind::Weibull && z == 0.0) {
    if (shape_ == 1.0) return 1.0;
    return shape_ > 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::exp(log_density(z));
}

double Distribution::draw(Rng& rng) const {
  switch (kind_) {
    case Kind::StdGaussian:
      return rng.normal();
    case Kind::Exponential:
      return rng.exponential();
    case Kind::CenteredExponential:
      return rng.exponential() - 1.0;
    default:
      return quantile(rng.uniform());
  }
}

std::string Distribution::name() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Exponential:
      os << "exponential";
      break;
    case Kind::Weibull:
      os << "weibull(" << shape_ << ")";
      break;
    case Kind::StdGaussian:
      os << "gaussian";
      break;
    case Kind::Adversarial:
      os << "adversarial(" << shape_ << "," << psi_->to_string() << ")";
      break;
    case Kind::CenteredExponential:
      os << "centered_exponential";
      break;
  }
  return os.str();
}

double std_normal_upper_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("normal quantile level must lie in (0, 1)");
  return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q);
}

Sample sample(const Distribution& dist, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample size must be at least 1");
  Rng rng(seed);
  std::vector<double> values(n);
  for (double& v : values) v = dist.draw(rng);
  return Sample(std::move(values), dist.name() + " seed=" + std::to_string(seed));
}

TailQuadratureResult expectation_abs(const Distribution& dist,
                                     const std::function<double(double)>& log_h,
                                     const QuadratureOptions& options) {
  switch (dist.kind()) {
    case Distribution::Kind::Exponential:
      return integrate_to_infinity([&](double z) { return std::exp(log_h(z) - z); }, 0.0,
                                   options);
    case Distribution::Kind::Weibull: {
      // X = W^{1/γ} with W ~ Exp(1) removes the density singularity at 0.
      const double inv_shape = 1.0 / dist.shape();
      return integrate_to_infinity(
          [&](double w) { return std::exp(log_h(std::pow(w, inv_shape)) - w); }, 0.0, options);
    }
    case Distribution::Kind::StdGaussian: {
      const double log_two = std::log(2.0);
      return integrate_to_infinity(
          [&](double z) { return std::exp(log_h(z) + log_two - 0.5 * z * z - kLogSqrtTwoPi); },
          0.0, options);
    }
    case Distribution::Kind::Adversarial:
      return integrate_to_infinity(
          [&](double z) { return std::exp(log_h(z) + dist.log_density(z)); },
          dist.support_lower(), options);
    case Distribution::Kind::CenteredExponential: {
      // |W − 1| with W ~ Exp(1): split at W = 1.
      const QuadratureResult head =
          integrate([&](double w) { return std::exp(log_h(1.0 - w) - w); }, 0.0, 1.0, options);
      const TailQuadratureResult tail = integrate_to_infinity(
          [&](double z) { return std::exp(log_h(z) - z); }, 0.0, options);
      return combine(head, tail, std::exp(-1.0));
    }
  }
  return {};
}

TailQuadratureResult expectation_psi(const Distribution& dist, const OrliczFunction& psi,
                                     double sigma, PsiMoment moment,
                                     const QuadratureOptions& options) {
  const double log_sigma = std::log(sigma);
  if (dist.kind() != Distribution::Kind::Weibull ||
      psi.kind() != OrliczFunction::Kind::ExponentialAlpha) {
    switch (moment) {
      case PsiMoment::Value:
        return expectation_abs(dist, [&](double z) { return psi.log_eval(z / sigma); }, options);
      case PsiMoment::Square:
        return expectation_abs(
            dist, [&](double z) { return 2.0 * psi.log_eval(z / sigma); }, options);
      case PsiMoment::ScaledDerivative:
        return expectation_abs(
            dist,
            [&](double z) {
              return std::log(z) - 2.0 * log_sigma + psi.log_derivative(z / sigma);
            },
            options);
    }
  }

  // W = X^γ ~ Exp(1), t = (z/σ)^α. The integrand is exp(c·t − w + rest).
  const double alpha = psi.shape();
  const double gamma = dist.shape();
  const double c = moment == PsiMoment::Square ? 2.0 : 1.0;
  const double log_c = std::log(c);
  const auto integrand = [&](double w) {
    if (!(w > 0.0)) return 0.0;
    const double log_w = std::log(w);
    const double log_t = alpha * (log_w / gamma - log_sigma);
    const double t = std::exp(log_t);
    // c·t − w = w·(c·σ^{−α}·w^{α/γ−1} − 1)
    const double head = w * std::expm1(log_c + log_t - log_w);
    double rest = 0.0;
    switch (moment) {
      case PsiMoment::Value:
        rest = std::log(-std::expm1(-t));
        break;
      case PsiMoment::Square:
        rest = 2.0 * std::log(-std::expm1(-t));
        break;
      case PsiMoment::ScaledDerivative:
        rest = std::log(alpha) + log_t - log_sigma;
        break;
    }
    return std::exp(head + rest);
  };
  return integrate_to_infinity(integrand, 0.0, options);
}

PopulationNorm population_norm_analytic(const Distribution& dist, const OrliczFunction& psi) {
  using Kind = Distribution::Kind;
  PopulationNorm norm;
  norm.method = PopulationNorm::Method::Analytic;
  if (dist.kind() == Kind::Exponential && is_exponential_psi(psi, 1.0)) {
    norm.sigma_psi = 2.0;
  } else if (dist.kind() == Kind::Weibull && is_exponential_psi(psi, dist.shape())) {
    norm.sigma_psi = std::pow(2.0, 1.0 / dist.shape());
  } else if (dist.kind() == Kind::StdGaussian && is_exponential_psi(psi, 2.0)) {
    norm.sigma_psi = std::sqrt(8.0 / 3.0);
  } else if (dist.kind() == Kind::Adversarial && *dist.psi() == psi) {
    norm.sigma_psi = 1.0;
  } else {
    throw UnsupportedPair("no closed-form norm for " + dist.name() + " under " + psi.to_string());
  }
  return norm;
}

double population_constraint(const Distribution& dist, const OrliczFunction& psi, double sigma,
                             const QuadratureOptions& options) {
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  check_adversarial_psi(dist, psi);
  const TailQuadratureResult result =
      expectation_psi(dist, psi, sigma, PsiMoment::Value, options);
  switch (result.status) {
    case TailStatus::Converged:
      return result.value;
    case TailStatus::Divergent:
      return kSaturated;
    case TailStatus::Failed:
      break;
  }
  std::ostringstream os;
  os << "quadrature of E psi(|X|/sigma) failed for " << dist.name() << ", " << psi.to_string()
     << ", sigma = " << sigma << " (error estimate " << result.error << ")";
  throw QuadratureFailure(os.str());
}

double population_constraint_derivative(const Distribution& dist, const OrliczFunction& psi,
                                        double sigma, const QuadratureOptions& options) {
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  check_adversarial_psi(dist, psi);
  const TailQuadratureResult result =
      expectation_psi(dist, psi, sigma, PsiMoment::ScaledDerivative, options);
  switch (result.status) {
    case TailStatus::Converged:
      return -result.value;
    case TailStatus::Divergent:
      return -kSaturated;
    case TailStatus::Failed:
      break;
  }
  std::ostringstream os;
  os << "quadrature of G'(sigma) failed for " << dist.name() << ", " << psi.to_string()
     << ", sigma = " << sigma;
  throw QuadratureFailure(os.str());
}

PopulationNorm population_norm_quadrature(const Distribution& dist, const OrliczFunction& psi,
                                          double tol) {
  constexpr double kMinSigma = 1e-8;
  constexpr double kMaxSigma = 1e8;
  check_adversarial_psi(dist, psi);

  double last_error = 0.0;
  const auto constraint = [&](double sigma) {
    const TailQuadratureResult result = expectation_psi(dist, psi, sigma, PsiMoment::Value);
    if (result.status == TailStatus::Divergent) return kSaturated;
    if (result.status == TailStatus::Failed) {
      std::ostringstream os;
      os << "quadrature failed while solving for the norm of " << dist.name() << " at sigma = "
         << sigma;
      throw QuadratureFailure(os.str());
    }
    last_error = result.error;
    return result.value;
  };

  double lo = 1.0;
  double hi = 1.0;
  if (constraint(1.0) > 1.0) {
    while (constraint(hi) > 1.0) {
      lo = hi;
      hi *= 2.0;
      if (hi > kMaxSigma) throw BracketFailure("no sigma <= 1e8 with E psi(|X|/sigma) <= 1");
    }
  } else {
    while (constraint(lo) < 1.0) {
      hi = lo;
      lo *= 0.5;
      if (lo < kMinSigma) throw BracketFailure("no sigma >= 1e-8 with E psi(|X|/sigma) >= 1");
    }
  }

  const BisectionResult root = bisect_decreasing(constraint, lo, hi, 1.0, tol, 200);
  constraint(root.root);
  const double slope = std::abs(population_constraint_derivative(dist, psi, root.root));

  PopulationNorm norm;
  norm.method = PopulationNorm::Method::Quadrature;
  norm.sigma_psi = root.root;
  norm.quadrature_error_estimate =
      (root.hi - root.lo) + (std::isfinite(slope) && slope > 0.0 ? last_error / slope : 0.0);
  return norm;
}

PopulationNorm population_norm(const Distribution& dist, const OrliczFunction& psi) {
  try {
    return population_norm_analytic(dist, psi);
  } catch (const UnsupportedPair&) {
    return population_norm_quadrature(dist, psi);
  }
}

}  // namespace orlicz
