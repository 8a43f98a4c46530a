#include "orlicz/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "orlicz/bisection.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/quadrature.hpp"

namespace orlicz {

namespace {

constexpr double kPi = std::numbers::pi;

double normal_upper_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double tail_expectation(const Distribution& dist, const OrliczFunction& psi, double sigma,
                        PsiMoment moment, const char* what) {
  const auto r = expectation_psi(dist, psi, sigma, moment);
  if (r.status == TailStatus::Divergent) {
    throw MomentDivergence(std::string("clt_variance: ") + what + " diverges for " + dist.name());
  }
  if (r.status == TailStatus::Failed) {
    throw QuadratureFailure(std::string("clt_variance: quadrature of ") + what + " failed for " +
                            dist.name());
  }
  return r.value;
}

}  // namespace

double RateExponents::at(double n) const {
  return std::pow(n, n_power) * (log_power == 0.0 ? 1.0 : std::pow(std::log(n), log_power));
}

LimitLaw LimitLaw::gaussian(double variance, RateExponents rate) {
  LimitLaw law;
  law.kind = Kind::Gaussian;
  law.variance = variance;
  law.rate = rate;
  law.validate();
  return law;
}

LimitLaw LimitLaw::stable_law(const StableParams& params, RateExponents rate) {
  LimitLaw law;
  law.kind = Kind::Stable;
  law.stable = params;
  law.rate = rate;
  law.validate();
  return law;
}

void LimitLaw::validate() const {
  if (kind == Kind::Gaussian && !(variance > 0.0 && std::isfinite(variance))) {
    throw InvalidArgument("limit law: Gaussian variance must be positive");
  }
  if (kind == Kind::Stable) stable.validate();
  if (!std::isfinite(rate.n_power) || !std::isfinite(rate.log_power)) {
    throw InvalidArgument("limit law: rate exponents must be finite");
  }
}

std::string LimitLaw::describe() const {
  std::ostringstream os;
  os.precision(10);
  if (kind == Kind::Gaussian) {
    os << "N(0, " << variance << ")";
  } else {
    os << "S0(" << stable.index << ", " << stable.skew << ", " << stable.scale << ", "
       << stable.location << ")";
  }
  os << " at n^" << rate.n_power << " log(n)^" << rate.log_power;
  return os.str();
}

double clt_variance(const Distribution& dist, const OrliczFunction& psi, double sigma_psi) {
  if (!(sigma_psi > 0.0)) throw InvalidArgument("clt_variance: sigma must be positive");
  const double second =
      tail_expectation(dist, psi, sigma_psi, PsiMoment::Square, "E psi(|X|/sigma)^2");
  const double slope = tail_expectation(dist, psi, sigma_psi, PsiMoment::ScaledDerivative,
                                        "E (|X|/sigma^2) psi'(|X|/sigma)");
  return (second - 1.0) / (slope * slope);
}

LimitLaw exp_limit_law() { return LimitLaw::gaussian(0.5, {0.5, -0.5}); }

LimitLaw weibull_limit_law(double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("weibull_limit_law: gamma must be positive");
  return LimitLaw::gaussian(std::pow(4.0, 1.0 / gamma) / (8.0 * gamma * gamma), {0.5, -0.5});
}

double gaussian_derivative_constant() { return std::sqrt(27.0 / 2.0); }

double gaussian_limit_scale() { return std::sqrt(2.0 / (27.0 * std::pow(kPi, 0.75))); }

LimitLaw gaussian_limit_law() {
  const StableParams y = calibrate_Y_parameters().params;
  const double k = gaussian_limit_scale();
  StableParams p = y;
  p.scale = k * y.scale;
  p.location = k * (y.location - 4.0);
  return LimitLaw::stable_law(p, {0.25, -0.375});
}

RateExponents adversarial_rate(double gamma) {
  if (!(gamma > 1.0 && gamma < 2.0)) {
    throw InvalidArgument("adversarial_rate: gamma must lie in (1, 2)");
  }
  return {1.0 - 1.0 / gamma, 0.0};
}

NormingSequences gaussian_norming(double n) {
  if (!(n >= 2.0) || !std::isfinite(n)) throw InvalidArgument("gaussian_norming: need n >= 2");
  // |Z| ≤ x  ⇔  z_lo(x) ≤ |X| ≤ z_hi(x)
  auto z_hi = [](double x) { return std::sqrt(8.0 / 3.0 * std::log(2.0 + x)); };
  auto z_lo = [](double x) { return x < 1.0 ? std::sqrt(8.0 / 3.0 * std::log(2.0 - x)) : 0.0; };

  NormingSequences out;
  out.n = n;
  const double c = std_normal_upper_quantile(0.5 / n);
  out.a_n = std::expm1(3.0 * c * c / 8.0) - 1.0;
  if (out.a_n < 1.0) {
    auto exceed = [&](double x) {
      return 2.0 * normal_upper_tail(z_hi(x)) + (1.0 - 2.0 * normal_upper_tail(z_lo(x)));
    };
    out.a_n = bisect_decreasing(exceed, 0.0, 1.0, 1.0 / n, 1e-15, 200).root;
  }
  QuadratureOptions opts;
  opts.abs_tol = 1e-14;
  opts.rel_tol = 1e-13;
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * kPi);
  const auto r = integrate(
      [&](double z) {
        return (std::exp(-z * z / 8.0) - 2.0 * std::exp(-z * z / 2.0)) * inv_sqrt_2pi;
      },
      z_lo(out.a_n), z_hi(out.a_n), opts);
  if (!r.converged) throw QuadratureFailure("gaussian_norming: truncated mean did not converge");
  out.b_n = 2.0 * n * r.value;
  out.b_n_proxy = -4.0 * out.a_n;
  return out;
}

double gaussian_quantile_expansion(double q) {
  if (!(q > 0.0 && q <= 0.02)) {
    throw DomainError("gaussian_quantile_expansion: q must lie in (0, 0.02]");
  }
  const double l = std::log(1.0 / q);
  const double radicand = 2.0 * l - std::log(l) - std::log(4.0 * kPi);
  if (!(radicand > 0.0)) throw DomainError("gaussian_quantile_expansion: radicand is not positive");
  return std::sqrt(radicand);
}

}  // namespace orlicz
