#pragma once

#include <complex>
#include <cstdint>

#include "orlicz/empirical_norm.hpp"
#include "orlicz/rng.hpp"

namespace orlicz {

/// Stable law in Nolan's S0 parametrization, index ≠ 1:
///   log E e^{itX} = −s^α|t|^α [1 + iβ tan(πα/2) sgn(t)(|st|^{1−α} − 1)] + iδt
/// with α = index, β = skew, s = scale, δ = location. Continuous in α and
/// shifts by δ exactly.
struct StableParams {
  double index = 2.0;
  double skew = 0.0;
  double scale = 1.0;
  double location = 0.0;

  /// Throws InvalidArgument unless index ∈ (0, 2) \ {1}, skew ∈ [−1, 1],
  /// scale > 0 and location finite.
  void validate() const;

  friend bool operator==(const StableParams&, const StableParams&) = default;
};

/// Closed-form characteristic function of StableParams.
std::complex<double> stable_charfun(const StableParams& params, double t);

/// One draw by the Chambers–Mallows–Stuck transform of a uniform angle and an
/// Exp(1) variate.
double stable_draw(const StableParams& params, Rng& rng);

/// n iid draws, reproducible from (params, n, seed).
Sample stable_sample(const StableParams& params, std::size_t n, std::uint64_t seed);

/// log E e^{iλY} = (4/3) ∫₀^∞ (e^{iλx} − 1 − iλx·1{x<1}) x^{−7/3} dx, the
/// totally right-skewed 4/3-stable law with Lévy density (4/3)x^{−7/3} on
/// x > 0.
///
/// On (0, 1) the substitution x = t³ makes the integrand smooth; on
/// [1, max(1, 50/|λ|)] the oscillating integrand is integrated adaptively;
/// beyond that the remainder comes from the asymptotic expansion of the
/// incomplete integral ∫_X^∞ e^{iλx}x^{−a}dx. Throws QuadratureFailure if the
/// adaptive pieces do not converge.
std::complex<double> stable_log_charfun_Y(double lambda);

/// exp(stable_log_charfun_Y(λ)).
std::complex<double> stable_charfun_Y(double lambda);

struct YCalibration {
  StableParams params;
  /// max over the calibration grid of |stable_charfun_Y − stable_charfun|.
  double max_deviation = 0.0;
};

/// Scale and location of Y in the S0 parametrization (index 4/3, skew 1
/// fixed), fitted on λ ∈ [−10, 10] (201 points). In S0 the log
/// characteristic function is linear in s^α and δ − βs·tan(πα/2), so the fit
/// is a linear least-squares problem on the numeric exponents.
///
/// Computed once per process. Throws CalibrationFailure if the fitted law
/// deviates by more than 1e-6 anywhere on the grid.
const YCalibration& calibrate_Y_parameters();

}  // namespace orlicz
