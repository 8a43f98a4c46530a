#pragma once

#include <functional>

namespace orlicz {

struct BisectionResult {
  double root = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
};

/// Solves f(x) = target for a nonincreasing f by bisection on [lo, hi].
///
/// Requires f(lo) ≥ target ≥ f(hi); +∞ counts as above the target, which lets
/// saturated constraint values take part in the bracket logic. Stops when
/// hi − lo ≤ tol·(1 + hi) and returns the midpoint of the final bracket.
///
/// Throws BracketFailure if the bracket does not hold, NonConvergence after
/// max_iter halvings, NumericalError if f returns NaN.
BisectionResult bisect_decreasing(const std::function<double(double)>& f,
                                  double lo, double hi, double target,
                                  double tol, int max_iter);

}  // namespace orlicz
