#include "orlicz/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace orlicz {

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the centre.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool finite;
};

// QUADPACK qk15 error heuristics.
Panel kronrod15(const std::function<double(double)>& f, double a, double b) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kTiny = std::numeric_limits<double>::min();

  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_centre = f(centre);

  double kronrod = f_centre * kKronrodWeights[7];
  double gauss = f_centre * kGaussWeights[3];
  double abs_sum = std::abs(kronrod);
  std::array<double, 7> left{};
  std::array<double, 7> right{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    left[j] = f(centre - dx);
    right[j] = f(centre + dx);
    const double pair = left[j] + right[j];
    kronrod += kKronrodWeights[j] * pair;
    abs_sum += kKronrodWeights[j] * (std::abs(left[j]) + std::abs(right[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }

  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(f_centre - mean);
  for (int j = 0; j < 7; ++j) {
    asc += kKronrodWeights[j] * (std::abs(left[j] - mean) + std::abs(right[j] - mean));
  }

  const double value = kronrod * half;
  abs_sum *= std::abs(half);
  asc *= std::abs(half);
  double error = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && error != 0.0) {
    error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
  }
  if (abs_sum > kTiny / (50.0 * kEps)) error = std::max(50.0 * kEps * abs_sum, error);

  const bool finite = std::isfinite(value) && std::isfinite(error);
  return {a, b, value, error, finite};
}

bool by_error(const Panel& lhs, const Panel& rhs) { return lhs.error < rhs.error; }

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }

  std::vector<Panel> heap;
  heap.push_back(kronrod15(f, a, b));
  result.evaluations = 15;
  double value = heap.front().value;
  double error = heap.front().error;

  auto done = [&] {
    return error <= std::max(options.abs_tol, options.rel_tol * std::abs(value));
  };

  while (!done()) {
    if (static_cast<int>(heap.size()) >= options.max_subdivisions) break;
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    heap.pop_back();
    if (!worst.finite) {
      heap.push_back(worst);
      break;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), by_error);
      break;
    }
    const Panel lower = kronrod15(f, worst.a, mid);
    const Panel upper = kronrod15(f, mid, worst.b);
    result.evaluations += 30;
    value += lower.value + upper.value - worst.value;
    error += lower.error + upper.error - worst.error;
    heap.push_back(lower);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(upper);
    std::push_heap(heap.begin(), heap.end(), by_error);
  }

  // Re-sum to drop the drift of the running updates.
  value = 0.0;
  error = 0.0;
  for (const Panel& panel : heap) {
    value += panel.value;
    error += panel.error;
    result.finite = result.finite && panel.finite;
  }
  result.value = value;
  result.error = error;
  result.converged = result.finite && done();
  return result;
}

TailQuadratureResult integrate_to_infinity(const std::function<double(double)>& f,
                                           double a, const QuadratureOptions& options) {
  constexpr int kLastCell = 62;
  constexpr double kOverflowGuard = 1e300;

  TailQuadratureResult result;
  double previous = std::numeric_limits<double>::infinity();
  int quiet_cells = 0;
  bool all_cells_converged = true;

  for (int k = 0; k <= kLastCell; ++k) {
    const double lo = a + (std::ldexp(1.0, k) - 1.0);
    const double hi = a + (std::ldexp(1.0, k + 1) - 1.0);
    QuadratureOptions cell = options;
    cell.abs_tol = 0.25 * std::max(options.abs_tol, options.rel_tol * std::abs(result.value));
    const QuadratureResult part = integrate(f, lo, hi, cell);
    result.segments = k + 1;

    if (!part.finite) {
      result.value = std::numeric_limits<double>::infinity();
      result.status = TailStatus::Divergent;
      return result;
    }
    all_cells_converged = all_cells_converged && part.converged;
    result.value += part.value;
    result.error += part.error;
    if (std::abs(result.value) > kOverflowGuard) {
      result.value = std::numeric_limits<double>::infinity();
      result.status = TailStatus::Divergent;
      return result;
    }

    const double contribution = std::abs(part.value);
    const double tolerance =
        std::max(options.abs_tol, options.rel_tol * std::abs(result.value));
    if (contribution <= tolerance && contribution <= previous) {
      ++quiet_cells;
    } else {
      quiet_cells = 0;
    }
    if (k >= 3 && quiet_cells >= 2) {
      result.status = all_cells_converged ? TailStatus::Converged : TailStatus::Failed;
      return result;
    }
    if (k == kLastCell) {
      result.status = contribution >= previous ? TailStatus::Divergent : TailStatus::Failed;
      if (result.status == TailStatus::Divergent) {
        result.value = std::numeric_limits<double>::infinity();
      }
      return result;
    }
    previous = contribution;
  }
  return result;
}

}  // namespace orlicz
