#pragma once

#include <functional>

namespace orlicz {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
  /// False when the integrand produced ±∞ or NaN somewhere.
  bool finite = true;
};

/// Globally adaptive 7/15-point Gauss–Kronrod quadrature on [a, b].
/// Bisects the interval with the largest error estimate until the summed
/// estimate is within max(abs_tol, rel_tol·|value|).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

enum class TailStatus { Converged, Divergent, Failed };

struct TailQuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int segments = 0;
  TailStatus status = TailStatus::Failed;
};

/// ∫_a^∞ f(z) dz.
///
/// The half line is mapped by z = a + u/(1 − u) onto (0, 1) and split into
/// the dyadic u-cells [0, 1/2], [1/2, 3/4], [3/4, 7/8], …; cell k is the
/// z-range [a + 2^k − 1, a + 2^{k+1} − 1] and is integrated adaptively in z.
/// The sweep stops as Converged once two consecutive, non-increasing cell
/// contributions fall below tolerance. It reports Divergent when the
/// integrand overflows, when the running sum leaves the double range, or when
/// the contributions are still not decaying at the last cell (z ≈ 10^18).
TailQuadratureResult integrate_to_infinity(const std::function<double(double)>& f,
                                           double a,
                                           const QuadratureOptions& options = {});

}  // namespace orlicz
