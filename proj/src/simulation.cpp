#include "orlicz/simulation.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <thread>

#include "orlicz/errors.hpp"
#include "orlicz/regression.hpp"
#include "orlicz/rng.hpp"
#include "orlicz/stable.hpp"

namespace orlicz {

namespace {

constexpr std::size_t kReferenceDraws = 1000000;
constexpr std::uint64_t kReferenceSeed = 0x5eedf00d0004b3ULL;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t model_dimension(const LinearModelEstimator& lm) { return lm.beta.size(); }

}  // namespace

double Signal::at(double t) const {
  switch (kind) {
    case Kind::None:
      return 0.0;
    case Kind::Step:
      return t > 0.5 ? amplitude : 0.0;
    case Kind::Sine:
      return amplitude * std::sin(2.0 * std::numbers::pi * t);
  }
  return 0.0;
}

void ExperimentConfig::validate() const {
  if (n_grid.empty()) throw InvalidArgument("experiment: n_grid is empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 2) throw InvalidArgument("experiment: every n must be at least 2");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      throw InvalidArgument("experiment: n_grid must be strictly increasing");
    }
  }
  if (replications < 1) throw InvalidArgument("experiment: replications must be at least 1");
  if (!(solver.tol > 0.0) || solver.max_iter < 1) {
    throw InvalidArgument("experiment: solver tolerance and iteration cap must be positive");
  }
  if (const auto* lm = std::get_if<LinearModelEstimator>(&estimator)) {
    const std::size_t d = model_dimension(*lm);
    if (d < 1) throw InvalidArgument("experiment: beta must have at least one entry");
    if (n_grid.front() <= d) throw InvalidArgument("experiment: linear model needs n > d");
    for (const double b : lm->beta) {
      if (!std::isfinite(b)) throw InvalidArgument("experiment: beta must be finite");
    }
  }
  if (const auto* np = std::get_if<DifferenceEstimator>(&estimator)) {
    if (!std::isfinite(np->signal.amplitude)) {
      throw InvalidArgument("experiment: signal amplitude must be finite");
    }
  }
  if (limit_law) limit_law->validate();
  if (rate && (!std::isfinite(rate->n_power) || !std::isfinite(rate->log_power))) {
    throw InvalidArgument("experiment: rate exponents must be finite");
  }
}

RateExponents ExperimentConfig::effective_rate() const {
  if (rate) return *rate;
  if (limit_law) return limit_law->rate;
  return {0.0, 0.0};
}

PopulationNorm experiment_target(const ExperimentConfig& config) {
  if (std::holds_alternative<DifferenceEstimator>(config.estimator)) {
    return difference_norm(config.distribution, config.psi);
  }
  return population_norm(config.distribution, config.psi);
}

double run_replication(const ExperimentConfig& config, std::size_t n, std::uint64_t seed) {
  return std::visit(
      overloaded{
          [&](const IidEstimator&) {
            return empirical_norm(sample(config.distribution, n, seed), config.psi,
                                  config.solver)
                .sigma_hat;
          },
          [&](const LinearModelEstimator& lm) {
            const Eigen::Index d = Eigen::Index(lm.beta.size());
            const Eigen::Index rows = Eigen::Index(n);
            Rng rng(seed);
            Eigen::MatrixXd z(rows, d);
            for (Eigen::Index i = 0; i < rows; ++i) {
              for (Eigen::Index c = 0; c < d; ++c) {
                z(i, c) = (lm.intercept && c == 0) ? 1.0 : lm.covariate_law.draw(rng);
              }
            }
            const Eigen::Map<const Eigen::VectorXd> beta(lm.beta.data(), d);
            Eigen::VectorXd y = z * beta;
            for (Eigen::Index i = 0; i < rows; ++i) y(i) += config.distribution.draw(rng);
            return lm_orlicz_estimator(LinearModelData(std::move(y), std::move(z)), config.psi,
                                       config.solver)
                .sigma_hat;
          },
          [&](const DifferenceEstimator& np) {
            const Sample noise = sample(config.distribution, n, seed);
            std::vector<double> y(noise.values().begin(), noise.values().end());
            for (std::size_t i = 0; i < n; ++i) y[i] += np.signal.at(double(i + 1) / double(n));
            return np_diff_estimator(Sample(std::move(y)), config.psi, config.solver).sigma_hat;
          },
      },
      config.estimator);
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty vector");
  const std::size_t m = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + m, values.end());
  if (values.size() % 2) return values[m];
  const double upper = values[m];
  const double lower = *std::max_element(values.begin(), values.begin() + m);
  return 0.5 * (lower + upper);
}

RateFit fit_rate(std::span<const double> n, std::span<const double> median_abs_error) {
  if (n.size() != median_abs_error.size() || n.size() < 2) {
    throw InvalidArgument("fit_rate: need at least two matching points");
  }
  const double k = double(n.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(n[i] > 0.0) || !(median_abs_error[i] > 0.0)) {
      throw InvalidArgument("fit_rate: values must be positive");
    }
    sx += std::log(n[i]);
    sy += std::log(median_abs_error[i]);
  }
  const double mx = sx / k, my = sy / k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double dx = std::log(n[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(median_abs_error[i]) - my);
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  if (n.size() < 3) {
    fit.standard_error = std::nan("");
    return fit;
  }
  double ssr = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double r = std::log(median_abs_error[i]) - my - fit.slope * (std::log(n[i]) - mx);
    ssr += r * r;
  }
  fit.standard_error = std::sqrt(ssr / (k - 2.0) / sxx);
  return fit;
}

double ks_distance(std::span<const double> values, const std::function<double(double)>& cdf) {
  if (values.empty()) throw InvalidArgument("ks_distance: no values");
  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());
  const double r = double(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, double(i + 1) / r - f, f - double(i) / r});
  }
  return std::clamp(d, 0.0, 1.0);
}

double ks_distance_to_sample(std::span<const double> values, std::span<const double> reference) {
  if (values.empty() || reference.empty()) throw InvalidArgument("ks_distance: no values");
  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());
  const double r = double(x.size());
  const double m = double(reference.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    // F_R jumps from i/R to (i+1)/R at x_i; F_ref has left limit and value there
    const double below =
        double(std::lower_bound(reference.begin(), reference.end(), x[i]) - reference.begin()) / m;
    const double at =
        double(std::upper_bound(reference.begin(), reference.end(), x[i]) - reference.begin()) / m;
    d = std::max({d, double(i + 1) / r - at, below - double(i) / r});
  }
  return std::clamp(d, 0.0, 1.0);
}

std::span<const double> stable_reference_sample(const StableParams& params) {
  static std::mutex mutex;
  static std::map<std::array<double, 4>, std::unique_ptr<std::vector<double>>> cache;
  const std::array<double, 4> key{params.index, params.skew, params.scale, params.location};
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[key];
  if (!slot) {
    const Sample s = stable_sample(params, kReferenceDraws, kReferenceSeed);
    slot = std::make_unique<std::vector<double>>(s.values().begin(), s.values().end());
    std::sort(slot->begin(), slot->end());
  }
  return *slot;
}

double ks_distance(std::span<const double> values, const LimitLaw& law) {
  if (law.kind == LimitLaw::Kind::Gaussian) {
    const double sd = std::sqrt(law.variance);
    return ks_distance(values, [sd](double x) {
      return 0.5 * std::erfc(-x / (sd * std::numbers::sqrt2));
    });
  }
  return ks_distance_to_sample(values, stable_reference_sample(law.stable));
}

ExperimentSummary run_experiment(const ExperimentConfig& config, unsigned workers) {
  config.validate();
  ExperimentSummary summary;
  const PopulationNorm target = experiment_target(config);
  summary.sigma_psi = target.sigma_psi;
  summary.target_method = target.method;

  const std::size_t levels = config.n_grid.size();
  const std::size_t reps = config.replications;
  const std::size_t jobs = levels * reps;
  std::vector<double> estimates(jobs, 0.0);

  std::mutex failure_mutex;
  std::size_t first_failure = jobs;
  std::string failure_message;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs) return;
      const std::size_t n = config.n_grid[k / reps];
      const std::size_t j = k % reps;
      try {
        estimates[k] = run_replication(config, n, child_seed(config.master_seed, n, j));
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        // jobs are claimed in order, so the smallest failing index is the
        // same whatever the schedule
        if (k < first_failure) {
          first_failure = k;
          failure_message = e.what();
        }
        failed = true;
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = unsigned(std::min<std::size_t>(workers, jobs));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_failure < jobs) {
    const std::size_t n = config.n_grid[first_failure / reps];
    const std::size_t j = first_failure % reps;
    throw ReplicationFailure(n, j, child_seed(config.master_seed, n, j), failure_message);
  }

  const RateExponents rate = config.effective_rate();
  std::vector<double> grid_n, grid_med;
  for (std::size_t l = 0; l < levels; ++l) {
    LevelSummary level;
    level.n = config.n_grid[l];
    level.rate_factor = rate.at(double(level.n));
    level.scaled_errors.resize(reps);
    std::vector<double> abs_err(reps);
    for (std::size_t j = 0; j < reps; ++j) {
      const double err = estimates[l * reps + j] - target.sigma_psi;
      level.scaled_errors[j] = level.rate_factor * err;
      abs_err[j] = std::abs(err);
    }
    double sum = 0.0;
    for (const double e : level.scaled_errors) sum += e;
    level.mean = sum / double(reps);
    double ss = 0.0;
    for (const double e : level.scaled_errors) ss += (e - level.mean) * (e - level.mean);
    level.variance = reps > 1 ? ss / double(reps - 1) : 0.0;
    level.median_abs_error = median(abs_err);
    if (config.limit_law) level.ks = ks_distance(level.scaled_errors, *config.limit_law);
    grid_n.push_back(double(level.n));
    grid_med.push_back(level.median_abs_error);
    summary.levels.push_back(std::move(level));
  }
  const bool fittable = levels >= 2 && std::all_of(grid_med.begin(), grid_med.end(),
                                                   [](double m) { return m > 0.0; });
  if (fittable) summary.rate_fit = fit_rate(grid_n, grid_med);
  return summary;
}

}  // namespace orlicz
