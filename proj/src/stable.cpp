#include "orlicz/stable.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "orlicz/errors.hpp"
#include "orlicz/quadrature.hpp"

namespace orlicz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kIndexY = 4.0 / 3.0;
constexpr double kTailPower = 7.0 / 3.0;

using cplx = std::complex<double>;

// sin y − y without cancellation for small y
double sin_minus_id(double y) {
  if (std::abs(y) < 0.05) {
    const double y2 = y * y;
    return y * y2 * (-1.0 / 6.0 + y2 * (1.0 / 120.0 + y2 * (-1.0 / 5040.0 + y2 / 362880.0)));
  }
  return std::sin(y) - y;
}

cplx integrate_complex(const std::function<cplx(double)>& f, double a, double b,
                       const char* what) {
  QuadratureOptions opts;
  opts.abs_tol = 1e-13;
  opts.rel_tol = 1e-12;
  opts.max_subdivisions = 5000;
  const auto re = integrate([&](double x) { return f(x).real(); }, a, b, opts);
  const auto im = integrate([&](double x) { return f(x).imag(); }, a, b, opts);
  if (!re.converged || !im.converged) {
    std::ostringstream os;
    os << "stable exponent: " << what << " did not converge on [" << a << ", " << b << "]";
    throw QuadratureFailure(os.str());
  }
  return {re.value, im.value};
}

// ∫_X^∞ e^{iλx} x^{−a} dx ≈ −e^{iλX} X^{−a}/(iλ) Σ_k (a)_k (iλX)^{−k}, λX ≥ 50
cplx oscillatory_tail(double lambda, double x0, double a) {
  const cplx ilx(0.0, lambda * x0);
  cplx term(1.0, 0.0), sum(0.0, 0.0);
  double prev = INFINITY;
  for (int k = 0; k < 60; ++k) {
    const double mag = std::abs(term);
    if (mag > prev) break;  // asymptotic series starts to diverge
    sum += term;
    if (mag < 1e-17 * std::abs(sum)) break;
    prev = mag;
    term *= (a + k) / ilx;
  }
  const cplx lead = -std::exp(ilx) * std::pow(x0, -a) / cplx(0.0, lambda);
  return lead * sum;
}

}  // namespace

void StableParams::validate() const {
  if (!(index > 0.0 && index < 2.0) || index == 1.0) {
    throw InvalidArgument("stable: index must lie in (0, 2) and differ from 1");
  }
  if (!(skew >= -1.0 && skew <= 1.0)) throw InvalidArgument("stable: skew must lie in [-1, 1]");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidArgument("stable: scale must be > 0");
  if (!std::isfinite(location)) throw InvalidArgument("stable: location must be finite");
}

std::complex<double> stable_charfun(const StableParams& p, double t) {
  if (t == 0.0) return {1.0, 0.0};
  const double a = p.index;
  const double at = std::abs(t);
  const double sgn = t > 0 ? 1.0 : -1.0;
  const double tan_term = std::tan(kPi * a / 2.0);
  const double sa = std::pow(p.scale * at, a);
  const double re = -sa;
  const double im =
      -sa * p.skew * tan_term * sgn * (std::pow(p.scale * at, 1.0 - a) - 1.0) + p.location * t;
  return std::exp(cplx(re, im));
}

double stable_draw(const StableParams& p, Rng& rng) {
  const double a = p.index;
  const double zeta = p.skew * std::tan(kPi * a / 2.0);
  const double b = std::atan(zeta) / a;
  const double s = std::pow(1.0 + zeta * zeta, 1.0 / (2.0 * a));
  const double v = kPi * (rng.uniform() - 0.5);
  const double w = rng.exponential();
  const double x1 = s * std::sin(a * (v + b)) / std::pow(std::cos(v), 1.0 / a) *
                    std::pow(std::cos(v - a * (v + b)) / w, (1.0 - a) / a);
  // S1 → S0 for unit scale
  return p.scale * (x1 - zeta) + p.location;
}

Sample stable_sample(const StableParams& params, std::size_t n, std::uint64_t seed) {
  params.validate();
  if (n == 0) throw InvalidArgument("stable_sample: n must be positive");
  Rng rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = stable_draw(params, rng);
  std::ostringstream os;
  os << "stable(" << params.index << "," << params.skew << "," << params.scale << ","
     << params.location << ") seed=" << seed;
  return Sample(std::move(x), os.str());
}

std::complex<double> stable_log_charfun_Y(double lambda) {
  if (!std::isfinite(lambda)) throw InvalidArgument("stable_charfun_Y: lambda must be finite");
  if (lambda == 0.0) return {0.0, 0.0};

  // (0, 1), x = t³: 3(e^{iλt³} − 1 − iλt³) t^{−5}
  const cplx head = integrate_complex(
      [&](double t) {
        if (t == 0.0) return cplx(0.0, 0.0);
        const double y = lambda * t * t * t;
        const double half = std::sin(0.5 * y);
        const double t5 = t * t * t * t * t;
        return cplx(-2.0 * half * half, sin_minus_id(y)) * (3.0 / t5);
      },
      0.0, 1.0, "head");

  const double cutoff = std::max(1.0, 50.0 / std::abs(lambda));
  cplx mid(0.0, 0.0);
  if (cutoff > 1.0) {
    mid = integrate_complex(
        [&](double x) {
          const double y = lambda * x;
          const double half = std::sin(0.5 * y);
          return cplx(-2.0 * half * half, std::sin(y)) * std::pow(x, -kTailPower);
        },
        1.0, cutoff, "body");
  }

  const cplx tail = oscillatory_tail(lambda, cutoff, kTailPower) -
                    std::pow(cutoff, 1.0 - kTailPower) / (kTailPower - 1.0);

  return kIndexY * (head + mid + tail);
}

std::complex<double> stable_charfun_Y(double lambda) {
  return std::exp(stable_log_charfun_Y(lambda));
}

namespace {

YCalibration run_calibration() {
  constexpr int kGrid = 201;
  const double tan_term = std::tan(kPi * kIndexY / 2.0);
  std::vector<double> grid(kGrid);
  std::vector<cplx> target(kGrid);
  for (int k = 0; k < kGrid; ++k) {
    grid[k] = -10.0 + 0.1 * k;
    target[k] = stable_log_charfun_Y(grid[k]);
  }
  // log CF = −A|λ|^α + i(A tan(πα/2) sgn λ |λ|^α + Bλ), A = s^α, B = δ − s·tan(πα/2)
  Eigen::MatrixXd m(2 * kGrid, 2);
  Eigen::VectorXd rhs(2 * kGrid);
  for (int k = 0; k < kGrid; ++k) {
    const double l = grid[k];
    const double la = std::pow(std::abs(l), kIndexY);
    const double sgn = l > 0 ? 1.0 : (l < 0 ? -1.0 : 0.0);
    m(2 * k, 0) = -la;
    m(2 * k, 1) = 0.0;
    rhs(2 * k) = target[k].real();
    m(2 * k + 1, 0) = tan_term * sgn * la;
    m(2 * k + 1, 1) = l;
    rhs(2 * k + 1) = target[k].imag();
  }
  const Eigen::Vector2d coef = m.colPivHouseholderQr().solve(rhs);
  YCalibration out;
  out.params.index = kIndexY;
  out.params.skew = 1.0;
  out.params.scale = std::pow(coef(0), 1.0 / kIndexY);
  out.params.location = coef(1) + out.params.scale * tan_term;
  for (int k = 0; k < kGrid; ++k) {
    const double dev =
        std::abs(std::exp(target[k]) - stable_charfun(out.params, grid[k]));
    out.max_deviation = std::max(out.max_deviation, dev);
  }
  if (!(coef(0) > 0.0) || !(out.max_deviation <= 1e-6)) {
    std::ostringstream os;
    os << "calibration of Y: max characteristic-function deviation " << out.max_deviation
       << " exceeds 1e-6";
    throw CalibrationFailure(os.str());
  }
  return out;
}

}  // namespace

const YCalibration& calibrate_Y_parameters() {
  static const YCalibration calibration = run_calibration();
  return calibration;
}

}  // namespace orlicz
