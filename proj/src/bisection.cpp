#include "orlicz/bisection.hpp"

#include <cmath>
#include <sstream>

#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

double checked(const std::function<double(double)>& f, double x) {
  const double value = f(x);
  if (std::isnan(value)) {
    std::ostringstream os;
    os << "bisection target function returned NaN at " << x;
    throw NumericalError(os.str());
  }
  return value;
}

}  // namespace

BisectionResult bisect_decreasing(const std::function<double(double)>& f,
                                  double lo, double hi, double target,
                                  double tol, int max_iter) {
  if (!(lo <= hi) || !(tol > 0.0)) {
    throw InvalidArgument("bisection needs lo <= hi and tol > 0");
  }
  const double f_lo = checked(f, lo);
  const double f_hi = checked(f, hi);
  if (!(f_lo >= target) || !(f_hi <= target)) {
    std::ostringstream os;
    os.precision(17);
    os << "bracket [" << lo << ", " << hi << "] does not enclose the root: f(lo) = "
       << f_lo << ", f(hi) = " << f_hi << ", target = " << target;
    throw BracketFailure(os.str());
  }

  BisectionResult result;
  while (hi - lo > tol * (1.0 + std::abs(hi))) {
    if (result.iterations >= max_iter) {
      std::ostringstream os;
      os.precision(17);
      os << "bisection did not converge in " << max_iter << " iterations; bracket ["
         << lo << ", " << hi << "]";
      throw NonConvergence(os.str());
    }
    ++result.iterations;
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // bracket at double resolution
    const double value = checked(f, mid);
    if (value > target) {
      lo = mid;
    } else if (value < target) {
      hi = mid;
    } else {
      lo = hi = mid;
    }
  }
  result.lo = lo;
  result.hi = hi;
  result.root = lo + 0.5 * (hi - lo);
  return result;
}

}  // namespace orlicz
