#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "orlicz/asymptotics.hpp"
#include "orlicz/distributions.hpp"
#include "orlicz/empirical_norm.hpp"
#include "orlicz/orlicz_function.hpp"

namespace orlicz {

/// σ̂_ψ of n iid draws.
struct IidEstimator {
  friend bool operator==(const IidEstimator&, const IidEstimator&) = default;
};

/// σ̂_{ψ,LM} on Y = Zβ + ε. Column 0 of Z is 1 when intercept is set; the
/// other columns are iid draws from covariate_law. β has length d.
struct LinearModelEstimator {
  std::vector<double> beta{0.0, 1.0};
  Distribution covariate_law = Distribution::std_gaussian();
  bool intercept = true;

  friend bool operator==(const LinearModelEstimator&, const LinearModelEstimator&) = default;
};

/// μ_i = f(i/n): None f = 0, Step f(t) = amplitude·1{t > 1/2},
/// Sine f(t) = amplitude·sin(2πt).
struct Signal {
  enum class Kind { None, Step, Sine };
  Kind kind = Kind::None;
  double amplitude = 1.0;

  double at(double t) const;

  friend bool operator==(const Signal&, const Signal&) = default;
};

/// σ̂_{ψ,NP} on Y_i = μ_i + ε_i; targets ‖ε₂ − ε₁‖_ψ.
struct DifferenceEstimator {
  Signal signal;

  friend bool operator==(const DifferenceEstimator&, const DifferenceEstimator&) = default;
};

using EstimatorSpec = std::variant<IidEstimator, LinearModelEstimator, DifferenceEstimator>;

struct ExperimentConfig {
  /// Law of the observations (Iid) or of the errors ε (regression models).
  Distribution distribution = Distribution::exponential();
  OrliczFunction psi = OrliczFunction::exponential(1.0);
  EstimatorSpec estimator = IidEstimator{};
  std::vector<std::size_t> n_grid;
  std::size_t replications = 1;
  std::uint64_t master_seed = 0;
  std::optional<LimitLaw> limit_law;
  /// Scaling r_n. Falls back to the limit law's rate, then to r_n = 1.
  std::optional<RateExponents> rate;
  SolverOptions solver;

  /// Throws InvalidArgument unless n_grid is nonempty and strictly
  /// increasing with n ≥ 2, R ≥ 1, and the estimator is consistent with d.
  void validate() const;
  RateExponents effective_rate() const;
};

struct LevelSummary {
  std::size_t n = 0;
  double rate_factor = 1.0;
  /// r_n(σ̂ − σ_ψ) in replication order.
  std::vector<double> scaled_errors;
  double mean = 0.0;
  /// Unbiased sample variance of the scaled errors; 0 when R = 1.
  double variance = 0.0;
  /// median |σ̂ − σ_ψ| (unscaled).
  double median_abs_error = 0.0;
  std::optional<double> ks;
};

/// Least-squares fit of log median|σ̂ − σ_ψ| on log n.
struct RateFit {
  double slope = 0.0;
  /// NaN with fewer than three grid points.
  double standard_error = 0.0;
};

struct ExperimentSummary {
  double sigma_psi = 0.0;
  PopulationNorm::Method target_method = PopulationNorm::Method::Analytic;
  std::vector<LevelSummary> levels;
  std::optional<RateFit> rate_fit;
};

/// Population target of the configured estimator.
PopulationNorm experiment_target(const ExperimentConfig& config);

/// Runs the experiment on `workers` threads (0 picks the hardware count).
/// Replication j at size n draws from child_seed(master_seed, n, j), and the
/// results are merged in (n, j) order, so the summary does not depend on the
/// worker count. Throws ReplicationFailure for the first failing (n, j).
ExperimentSummary run_experiment(const ExperimentConfig& config, unsigned workers = 1);

/// One replication: the estimate σ̂ at sample size n from the given seed.
double run_replication(const ExperimentConfig& config, std::size_t n, std::uint64_t seed);

/// sup_x |F_R(x) − F(x)| for a continuous reference CDF F.
double ks_distance(std::span<const double> values, const std::function<double(double)>& cdf);

/// KS distance to a sorted reference sample (exact for step CDFs).
double ks_distance_to_sample(std::span<const double> values, std::span<const double> reference);

/// KS distance to the limit law: the N(0, v) CDF, or for a stable law the
/// empirical CDF of 10⁶ reference draws from a fixed seed (cached per
/// parameter set).
double ks_distance(std::span<const double> values, const LimitLaw& law);

/// Sorted reference draws of a stable law used by ks_distance.
std::span<const double> stable_reference_sample(const StableParams& params);

RateFit fit_rate(std::span<const double> n, std::span<const double> median_abs_error);

double median(std::vector<double> values);

}  // namespace orlicz
