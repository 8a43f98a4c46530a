// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 1 for ctest).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>

#include "orlicz/asymptotics.hpp"
#include "orlicz/distributions.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/regression.hpp"
#include "orlicz/rng.hpp"
#include "orlicz/simulation.hpp"
#include "orlicz/stable.hpp"

using namespace orlicz;

namespace {

// Tolerances, pinned.
constexpr double kNormTol = 1e-6;                  // 1
constexpr double kNormSeconds = 10.0;              // 1
constexpr double kLlnSeconds = 300.0;              // 2
constexpr double kExpVarLo = 0.3, kExpVarHi = 0.8, kExpKs = 0.12;  // 3
constexpr double kWeibullVarLo = 0.06 * 0.5, kWeibullVarHi = 0.06 * 2.2;     // 4
constexpr double kStableKs = 0.15;                  // 5
constexpr double kCltRelVar = 0.35, kCltKs = 0.10;  // 6
constexpr double kRateSlack = 0.18;                // 8
constexpr double kExpansionAbs = 0.02;                 // 9
constexpr double kDerivTol = 1e-8;                 // 10
constexpr double kCalibTol = 1e-6, kCfTol = 0.02;  // 11
constexpr double kLmTol = 0.2, kNpTol = 0.25;      // 12

const OrliczFunction psi1 = OrliczFunction::exponential(1.0);
const OrliczFunction psi2 = OrliczFunction::exponential(2.0);

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

template <class F>
void guarded(int id, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ExperimentConfig iid(const Distribution& d, const OrliczFunction& psi,
                     std::vector<std::size_t> grid, std::size_t reps, std::uint64_t seed) {
  ExperimentConfig c;
  c.distribution = d;
  c.psi = psi;
  c.n_grid = std::move(grid);
  c.replications = reps;
  c.master_seed = seed;
  return c;
}

double upper_quantile_oracle(double q) {
  long double lo = 0.0L, hi = 40.0L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    if (0.5L * std::erfc(mid / std::sqrt(2.0L)) > q) lo = mid;
    else hi = mid;
  }
  return double(0.5L * (lo + hi));
}

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::string where;
  auto check = [&](const Distribution& d, const OrliczFunction& psi, double expected) {
    const double got = population_norm_quadrature(d, psi).sigma_psi;
    const double err = std::abs(got - expected);
    if (err >= worst) {
      worst = err;
      where = d.name() + "/" + psi.to_string();
    }
  };
  check(Distribution::std_gaussian(), psi2, std::sqrt(8.0 / 3.0));
  check(Distribution::exponential(), psi1, 2.0);
  for (const double g : {0.5, 1.0, 2.0, 3.0}) {
    check(Distribution::weibull(g), OrliczFunction::exponential(g), std::pow(2.0, 1.0 / g));
  }
  for (const double g : {1.2, 1.5, 1.8}) check(Distribution::adversarial(g, psi1), psi1, 1.0);
  const double secs = seconds_since(t0);
  report(1, worst <= kNormTol && secs < kNormSeconds,
         fmt("max |quad - closed form| = %.3g at %s (tol %.0e); %.2f s (limit %.0f s)", worst,
             where.c_str(), kNormTol, secs, kNormSeconds));
}

void criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::ostringstream detail;
  const std::vector<std::pair<Distribution, OrliczFunction>> pairs = {
      {Distribution::exponential(), psi1},
      {Distribution::weibull(2.0), psi2},
      {Distribution::std_gaussian(), psi2},
      {Distribution::std_gaussian(), psi1}};
  std::uint64_t seed = 2001;
  for (const auto& [d, psi] : pairs) {
    const auto s = run_experiment(iid(d, psi, {100, 1000, 10000, 100000}, 50, seed++), workers());
    detail << d.name() << "/" << psi.to_string() << " [";
    for (std::size_t l = 0; l < s.levels.size(); ++l) {
      detail << (l ? " " : "") << fmt("%.3g", s.levels[l].median_abs_error);
      if (l > 0 && !(s.levels[l].median_abs_error < s.levels[l - 1].median_abs_error)) ok = false;
    }
    detail << "] ";
  }
  const double secs = seconds_since(t0);
  detail << fmt("%.1f s", secs);
  report(2, ok && secs < kLlnSeconds, "median |error| by n: " + detail.str());
}

void criterion3() {
  auto cfg = iid(Distribution::exponential(), psi1, {10000}, 200, 20240101);
  cfg.limit_law = exp_limit_law();
  const auto s = run_experiment(cfg, workers());
  const auto& l = s.levels[0];
  // diagnostic: distance to N(0, 1)
  const double ks_unit = ks_distance(l.scaled_errors, LimitLaw::gaussian(1.0, {0.5, -0.5}));
  report(3, l.variance >= kExpVarLo && l.variance <= kExpVarHi && *l.ks <= kExpKs,
         fmt("variance %.4f (bracket [%.2f, %.2f]), KS to N(0,0.5) %.4f (<= %.2f); "
             "diagnostic KS to N(0,1) %.4f",
             l.variance, kExpVarLo, kExpVarHi, *l.ks, kExpKs, ks_unit));
}

void criterion4() {
  auto cfg = iid(Distribution::weibull(2.0), psi2, {10000}, 200, 20240102);
  cfg.limit_law = weibull_limit_law(2.0);
  const auto s = run_experiment(cfg, workers());
  const auto& l = s.levels[0];
  const double alt = std::pow(4.0, 0.5) / (4.0 * 4.0);
  report(4, l.variance >= kWeibullVarLo && l.variance <= kWeibullVarHi,
         fmt("variance %.4f (bracket [%.3f, %.3f], target %.4f); KS to N(0,%.4f) %.4f; "
             "diagnostic KS to N(0,%.4f) %.4f",
             l.variance, kWeibullVarLo, kWeibullVarHi, cfg.limit_law->variance,
             cfg.limit_law->variance, *l.ks, alt,
             ks_distance(l.scaled_errors, LimitLaw::gaussian(alt, {0.5, -0.5}))));
}

void criterion5() {
  auto cfg = iid(Distribution::std_gaussian(), psi2, {100000}, 400, 20240103);
  cfg.limit_law = gaussian_limit_law();
  const auto s = run_experiment(cfg, workers());
  const auto& l = s.levels[0];
  const auto ref = stable_reference_sample(cfg.limit_law->stable);
  const double ref_median = 0.5 * (ref[ref.size() / 2 - 1] + ref[ref.size() / 2]);
  const double med = median(l.scaled_errors);
  const bool same_sign = (med > 0) == (ref_median > 0) && med != 0.0;
  // diagnostic: the same errors scaled by n^{1/4} log(n)^{+3/8}
  const double n = 1e5;
  const double factor = std::pow(std::log(n), 0.75);
  std::vector<double> rescaled(l.scaled_errors);
  for (auto& e : rescaled) e *= factor;
  const double ks_alt = ks_distance(rescaled, *cfg.limit_law);
  report(5, *l.ks <= kStableKs && same_sign,
         fmt("KS %.4f (<= %.2f); median %.4f vs reference median %.4f (%s); diagnostic KS "
             "at rate n^(1/4) log(n)^(+3/8): %.4f",
             *l.ks, kStableKs, med, ref_median, same_sign ? "same sign" : "sign differs",
             ks_alt));
}

void criterion6() {
  const auto d = Distribution::std_gaussian();
  const double sigma = population_norm(d, psi1).sigma_psi;
  const double v = clt_variance(d, psi1, sigma);
  auto cfg = iid(d, psi1, {10000}, 300, 20240104);
  cfg.limit_law = LimitLaw::gaussian(v, {0.5, 0.0});
  const auto s = run_experiment(cfg, workers());
  const auto& l = s.levels[0];
  const double rel = std::abs(l.variance - v) / v;
  report(6, rel <= kCltRelVar && *l.ks <= kCltKs,
         fmt("variance %.4f vs quadrature %.6f (rel. diff %.3f, <= %.2f); KS %.4f (<= %.2f)",
             l.variance, v, rel, kCltRelVar, *l.ks, kCltKs));
}

void criterion7() {
  std::vector<std::tuple<Distribution, OrliczFunction, double>> cases = {
      {Distribution::exponential(), psi1, 2.0},
      {Distribution::std_gaussian(), psi2, std::sqrt(8.0 / 3.0)}};
  for (const double g : {0.5, 1.0, 2.0, 3.0}) {
    cases.emplace_back(Distribution::weibull(g), OrliczFunction::exponential(g),
                       std::pow(2.0, 1.0 / g));
  }
  int detected = 0;
  std::string missed;
  for (const auto& [d, psi, sigma] : cases) {
    try {
      clt_variance(d, psi, sigma);
      missed += d.name() + " ";
    } catch (const MomentDivergence&) {
      ++detected;
    }
  }
  report(7, detected == int(cases.size()),
         fmt("MomentDivergence raised for %d of %zu cases %s", detected, cases.size(),
             missed.empty() ? "" : ("(missed: " + missed + ")").c_str()));
}

void criterion8() {
  bool ok = true;
  std::ostringstream detail;
  double prev = INFINITY;
  std::uint64_t seed = 8001;
  for (const double g : {1.25, 1.5, 1.75}) {
    auto cfg = iid(Distribution::adversarial(g, psi1), psi1, {1000, 10000, 100000}, 100, seed++);
    cfg.rate = adversarial_rate(g);
    const auto s = run_experiment(cfg, workers());
    const double slope = s.rate_fit->slope;
    const double target = 1.0 / g - 1.0;
    if (std::abs(slope - target) > kRateSlack) ok = false;
    if (!(slope < prev)) ok = false;
    prev = slope;
    detail << fmt("gamma %.2f: slope %.3f (target %.3f, se %.3f); ", g, slope, target,
                  s.rate_fit->standard_error);
  }
  report(8, ok, detail.str() + fmt("slack %.2f, monotone required", kRateSlack));
}

void criterion9() {
  double prev = INFINITY;
  bool monotone = true;
  double at10 = 0.0;
  std::ostringstream detail;
  for (const double q : {1e-4, 1e-6, 1e-8, 1e-10, 1e-12}) {
    const double err = std::abs(gaussian_quantile_expansion(q) - upper_quantile_oracle(q));
    if (!(err < prev)) monotone = false;
    prev = err;
    if (q == 1e-10) at10 = err;
    detail << fmt("%.0e:%.4f ", q, err);
  }
  report(9, at10 <= kExpansionAbs && monotone,
         fmt("abs error at q=1e-10 %.4f (<= %.2f); errors ", at10, kExpansionAbs) + detail.str());
}

void criterion10() {
  const double quad =
      -population_constraint_derivative(Distribution::std_gaussian(), psi2, std::sqrt(8.0 / 3.0));
  const double err = std::abs(quad - gaussian_derivative_constant());
  report(10, err <= kDerivTol,
         fmt("quadrature %.15f vs sqrt(27/2) %.15f, diff %.2e (<= %.0e)", quad,
             gaussian_derivative_constant(), err, kDerivTol));
}

void criterion11() {
  const auto& cal = calibrate_Y_parameters();
  const auto s = stable_sample(cal.params, 100000, 11001);
  double worst = 0.0;
  for (const double l : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    std::complex<double> acc(0.0, 0.0);
    for (const double x : s.values()) acc += std::polar(1.0, l * x);
    worst = std::max(worst, std::abs(acc / double(s.size()) - stable_charfun_Y(l)));
  }
  report(11, cal.max_deviation <= kCalibTol && worst <= kCfTol,
         fmt("calibration deviation %.2e (<= %.0e), scale %.10f, location %.10f; empirical CF "
             "sup deviation %.4f (<= %.2f)",
             cal.max_deviation, kCalibTol, cal.params.scale, cal.params.location, worst, kCfTol));
}

void criterion12() {
  // linear model fixture
  const std::size_t n = 10000;
  Rng rng(12001);
  Eigen::MatrixXd z(n, 2);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    z(i, 0) = 1.0;
    z(i, 1) = rng.normal();
  }
  for (std::size_t i = 0; i < n; ++i) y(i) = 0.5 - z(i, 1) + rng.normal();
  const double lm = lm_orlicz_estimator(LinearModelData(y, z), psi2).sigma_hat;
  const double lm_err = std::abs(lm - std::sqrt(8.0 / 3.0));

  // step signal plus noise, first differences
  auto step = [](std::size_t m, std::size_t i) { return double(i + 1) / double(m) > 0.5 ? 1.0 : 0.0; };
  const auto noise = sample(Distribution::std_gaussian(), n, 12002);
  std::vector<double> ys(noise.values().begin(), noise.values().end());
  for (std::size_t i = 0; i < n; ++i) ys[i] += step(n, i);
  const double np = np_diff_estimator(Sample(ys), psi2).sigma_hat;
  const double np_err = std::abs(np - 4.0 / std::sqrt(3.0));

  // signal insensitivity
  bool decreasing = true;
  double prev = INFINITY;
  std::ostringstream gaps;
  for (const std::size_t m : {1000u, 10000u, 100000u}) {
    std::vector<double> gap;
    for (std::uint64_t j = 0; j < 20; ++j) {
      const auto e = sample(Distribution::std_gaussian(), m, child_seed(12003, m, j));
      std::vector<double> with(e.values().begin(), e.values().end());
      for (std::size_t i = 0; i < m; ++i) with[i] += step(m, i);
      gap.push_back(std::abs(np_diff_estimator(Sample(with), psi2).sigma_hat -
                             np_diff_estimator(e, psi2).sigma_hat));
    }
    const double med = median(gap);
    if (!(med < prev)) decreasing = false;
    prev = med;
    gaps << fmt("%.3g ", med);
  }
  report(12, lm_err <= kLmTol && np_err <= kNpTol && decreasing,
         fmt("LM %.4f (|err| %.4f <= %.2f); NP %.4f (|err| %.4f <= %.2f); signal gap medians ",
             lm, lm_err, kLmTol, np, np_err, kNpTol) +
             gaps.str() + (decreasing ? "(decreasing)" : "(not decreasing)"));
}

void criterion13() {
  // The property binary runs six suites of 1000 randomized cases each.
  const std::string cmd = std::string("\"") + ORLICZ_PROPERTY_BINARY + "\" > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  report(13, status == 0,
         fmt("homogeneity, triangle, monotonicity, root residual, parallel determinism, "
             "derivative vs FD: 1000 cases each, exit status %d",
             status));
}

}  // namespace

int main() {
  guarded(1, criterion1);
  guarded(2, criterion2);
  guarded(3, criterion3);
  guarded(4, criterion4);
  guarded(5, criterion5);
  guarded(6, criterion6);
  guarded(7, criterion7);
  guarded(8, criterion8);
  guarded(9, criterion9);
  guarded(10, criterion10);
  guarded(11, criterion11);
  guarded(12, criterion12);
  guarded(13, criterion13);
  std::printf("acceptance: %d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
