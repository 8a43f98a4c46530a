#include <doctest.h>

#include <cmath>
#include <numbers>

#include "orlicz/errors.hpp"
#include "orlicz/simulation.hpp"
#include "orlicz/simulation_io.hpp"

using namespace orlicz;

namespace {

const OrliczFunction psi1 = OrliczFunction::exponential(1.0);

ExperimentConfig exp_config(std::vector<std::size_t> grid, std::size_t reps,
                            std::uint64_t seed = 1) {
  ExperimentConfig c;
  c.distribution = Distribution::exponential();
  c.psi = psi1;
  c.n_grid = std::move(grid);
  c.replications = reps;
  c.master_seed = seed;
  c.limit_law = exp_limit_law();
  return c;
}

}  // namespace

TEST_CASE("single replication is reproducible") {
  const auto cfg = exp_config({10}, 1);
  const auto a = run_experiment(cfg);
  const auto b = run_experiment(cfg);
  REQUIRE(a.levels.size() == 1);
  REQUIRE(a.levels[0].scaled_errors.size() == 1);
  CHECK(a.levels[0].scaled_errors[0] == b.levels[0].scaled_errors[0]);
  CHECK(a.levels[0].variance == 0.0);
  CHECK(!a.rate_fit);
  const double est = run_replication(cfg, 10, child_seed(1, 10, 0));
  CHECK(a.levels[0].scaled_errors[0] == (est - 2.0) * exp_limit_law().rate.at(10.0));
}

TEST_CASE("summaries do not depend on the worker count") {
  std::vector<ExperimentConfig> configs;
  configs.push_back(exp_config({50, 200, 800}, 37, 9));
  ExperimentConfig lm;
  lm.distribution = Distribution::std_gaussian();
  lm.psi = OrliczFunction::exponential(2.0);
  lm.estimator = LinearModelEstimator{{0.5, -1.0, 2.0}, Distribution::std_gaussian(), true};
  lm.n_grid = {20, 100};
  lm.replications = 23;
  lm.master_seed = 4;
  configs.push_back(lm);
  ExperimentConfig np;
  np.distribution = Distribution::centered_exponential();
  np.psi = psi1;
  np.estimator = DifferenceEstimator{{Signal::Kind::Sine, 3.0}};
  np.n_grid = {30, 300};
  np.replications = 19;
  np.master_seed = 5;
  configs.push_back(np);
  for (const auto& cfg : configs) {
    const auto one = run_experiment(cfg, 1);
    for (const unsigned w : {2u, 3u, 8u}) {
      const auto many = run_experiment(cfg, w);
      CHECK(summary_json(cfg, one) == summary_json(cfg, many));
      CHECK(errors_csv(one) == errors_csv(many));
    }
  }
}

TEST_CASE("changing the master seed changes the errors") {
  const auto a = run_experiment(exp_config({100}, 5, 1));
  const auto b = run_experiment(exp_config({100}, 5, 2));
  CHECK(a.levels[0].scaled_errors != b.levels[0].scaled_errors);
}

TEST_CASE("replication failures carry their coordinates") {
  auto cfg = exp_config({10, 20}, 4, 3);
  cfg.solver.max_iter = 1;
  for (const unsigned w : {1u, 3u}) {
    try {
      run_experiment(cfg, w);
      FAIL("expected ReplicationFailure");
    } catch (const ReplicationFailure& e) {
      CHECK(e.n() == 10);
      CHECK(e.replication() == 0);
      CHECK(e.seed() == child_seed(3, 10, 0));
      CHECK(std::string(e.what()).find("n=10") != std::string::npos);
    }
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(run_experiment(exp_config({}, 3)), InvalidArgument);
  CHECK_THROWS_AS(run_experiment(exp_config({10, 10}, 3)), InvalidArgument);
  CHECK_THROWS_AS(run_experiment(exp_config({20, 10}, 3)), InvalidArgument);
  CHECK_THROWS_AS(run_experiment(exp_config({10}, 0)), InvalidArgument);
  CHECK_THROWS_AS(run_experiment(exp_config({1}, 2)), InvalidArgument);
  auto lm = exp_config({3}, 2);
  lm.estimator = LinearModelEstimator{{1.0, 2.0, 3.0}, Distribution::std_gaussian(), true};
  CHECK_THROWS_AS(run_experiment(lm), InvalidArgument);
}

TEST_CASE("KS distance examples") {
  Rng rng(12);
  std::vector<double> draws(2000);
  for (auto& x : draws) x = std::sqrt(0.5) * rng.normal();
  CHECK(ks_distance(draws, exp_limit_law()) <= 0.04);

  const LimitLaw stable = gaussian_limit_law();
  const auto s = stable_sample(stable.stable, 2000, 99);
  CHECK(ks_distance(s.values(), stable) <= 0.04);

  const std::vector<double> point(500, 0.3);
  CHECK(ks_distance(point, exp_limit_law()) >= 0.5);
  CHECK(ks_distance(point, stable) >= 0.5);

  const std::vector<double> one{0.4};
  const double f = 0.5 * std::erfc(-0.4 / (std::sqrt(0.5) * std::numbers::sqrt2));
  const double d = ks_distance(one, exp_limit_law());
  CHECK(d == doctest::Approx(std::max(f, 1.0 - f)).epsilon(1e-14));
  CHECK(d >= 0.0);
  CHECK(d <= 1.0);
}

TEST_CASE("KS distance between samples") {
  const std::vector<double> ref{1, 2, 3, 4};
  CHECK(ks_distance_to_sample(std::vector<double>{1, 2, 3, 4}, ref) == 0.0);
  CHECK(ks_distance_to_sample(std::vector<double>{10, 20}, ref) == 1.0);
  CHECK(ks_distance_to_sample(std::vector<double>{2.5}, ref) == 0.5);
  // the reference sample is cached and sorted
  const auto a = stable_reference_sample(gaussian_limit_law().stable);
  const auto b = stable_reference_sample(gaussian_limit_law().stable);
  CHECK(a.data() == b.data());
  CHECK(a.size() == 1000000);
  CHECK(std::is_sorted(a.begin(), a.end()));
}

TEST_CASE("rate fit") {
  const std::vector<double> n{100, 1000, 10000};
  const std::vector<double> m{3.0 * std::pow(100.0, -0.4), 3.0 * std::pow(1000.0, -0.4),
                              3.0 * std::pow(10000.0, -0.4)};
  const auto fit = fit_rate(n, m);
  CHECK(fit.slope == doctest::Approx(-0.4).epsilon(1e-12));
  CHECK(fit.standard_error < 1e-10);
  CHECK(std::isnan(fit_rate(std::vector<double>{10, 100}, std::vector<double>{1, 0.1})
                       .standard_error));
  CHECK(median({3, 1, 2}) == 2);
  CHECK(median({4, 1, 2, 3}) == 2.5);
}

TEST_CASE("LLN harness: the error shrinks with n") {
  for (const auto& [dist, psi] : std::vector<std::pair<Distribution, OrliczFunction>>{
           {Distribution::exponential(), psi1},
           {Distribution::adversarial(1.5, psi1), psi1}}) {
    ExperimentConfig cfg;
    cfg.distribution = dist;
    cfg.psi = psi;
    cfg.n_grid = {100, 1000, 10000, 100000};
    cfg.replications = 50;
    cfg.master_seed = 2718;
    const auto s = run_experiment(cfg, 1);
    INFO(dist.name());
    for (std::size_t l = 1; l < s.levels.size(); ++l) {
      CHECK(s.levels[l].median_abs_error < s.levels[l - 1].median_abs_error);
    }
  }
}

TEST_CASE("adversarial rate slope") {
  ExperimentConfig cfg;
  cfg.distribution = Distribution::adversarial(1.5, psi1);
  cfg.psi = psi1;
  cfg.n_grid = {1000, 10000, 100000};
  cfg.replications = 100;
  cfg.master_seed = 5;
  cfg.rate = adversarial_rate(1.5);
  const auto s = run_experiment(cfg, 1);
  REQUIRE(s.rate_fit);
  INFO("slope=" << s.rate_fit->slope);
  CHECK(s.rate_fit->slope >= -0.5);
  CHECK(s.rate_fit->slope <= -0.15);
  CHECK(s.sigma_psi == 1.0);
}

TEST_CASE("regression experiments target the right norm") {
  ExperimentConfig np;
  np.distribution = Distribution::std_gaussian();
  np.psi = OrliczFunction::exponential(2.0);
  np.estimator = DifferenceEstimator{{Signal::Kind::Step, 1.0}};
  np.n_grid = {10000};
  np.replications = 10;
  const auto s = run_experiment(np);
  CHECK(s.sigma_psi == doctest::Approx(4.0 / std::sqrt(3.0)));
  CHECK(std::abs(s.levels[0].mean) < 0.25);

  ExperimentConfig lm = np;
  lm.estimator = LinearModelEstimator{};
  const auto t = run_experiment(lm);
  CHECK(t.sigma_psi == doctest::Approx(std::sqrt(8.0 / 3.0)));
  CHECK(std::abs(t.levels[0].mean) < 0.2);
}

TEST_CASE("config parsing") {
  const std::string text = R"({
    "schema": "orlicz-kit/1",
    "distribution": {"kind": "weibull", "shape": 2},
    "psi": "exp:2",
    "n_grid": [100, 1000],
    "replications": 7,
    "master_seed": 18446744073709551615,
    "limit_law": {"kind": "weibull"}
  })";
  const auto cfg = parse_experiment_config(text);
  CHECK(cfg.distribution == Distribution::weibull(2.0));
  CHECK(cfg.master_seed == 18446744073709551615ULL);
  CHECK(cfg.limit_law->variance == doctest::Approx(0.0625));
  CHECK(std::holds_alternative<IidEstimator>(cfg.estimator));
  const auto again = parse_experiment_config(experiment_config_json(cfg));
  CHECK(experiment_config_json(again) == experiment_config_json(cfg));
  CHECK(again.limit_law == cfg.limit_law);

  const auto stable_cfg = parse_experiment_config(R"({
    "distribution": {"kind": "gaussian"}, "psi": "exp:2", "n_grid": [10], "replications": 1,
    "limit_law": {"kind": "gaussian_stable"}})");
  CHECK(stable_cfg.limit_law->kind == LimitLaw::Kind::Stable);
  CHECK(parse_experiment_config(experiment_config_json(stable_cfg)).limit_law ==
        stable_cfg.limit_law);

  const auto clt = parse_experiment_config(R"({
    "distribution": {"kind": "gaussian"}, "psi": "exp:1", "n_grid": [10], "replications": 1,
    "limit_law": {"kind": "clt"}})");
  CHECK(clt.limit_law->variance == doctest::Approx(0.95123792343607256).epsilon(1e-8));
  CHECK(clt.limit_law->rate == RateExponents{0.5, 0.0});

  const auto np = parse_experiment_config(R"({
    "distribution": {"kind": "centered_exponential"}, "psi": "exp:1", "n_grid": [10],
    "replications": 1, "estimator": {"kind": "difference",
    "signal": {"kind": "step", "amplitude": 2}}})");
  CHECK(std::get<DifferenceEstimator>(np.estimator).signal == Signal{Signal::Kind::Step, 2.0});
}

TEST_CASE("config parse errors") {
  try {
    parse_experiment_config("{\n  \"psi\": \"exp:1\",\n  oops\n}");
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_experiment_config(R"({"psi": "exp:1"})"), InvalidArgument);
  CHECK_THROWS_AS(parse_experiment_config(R"({"distribution": {"kind": "cauchy"},
    "psi": "exp:1", "n_grid": [10], "replications": 1})"),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_experiment_config(R"({"distribution": {"kind": "exponential"},
    "psi": "exp:1", "n_grid": [10, 5], "replications": 1})"),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_experiment_config(R"({"distribution": {"kind": "exponential"},
    "psi": "exp:1", "n_grid": [10], "replications": 0})"),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_experiment_config(R"({"schema": "other/2",
    "distribution": {"kind": "exponential"}, "psi": "exp:1", "n_grid": [10],
    "replications": 1})"),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_experiment_config(R"({"distribution": {"kind": "exponential"},
    "psi": "exp:1", "n_grid": [10], "replications": 1, "master_seed": -4})"),
                  InvalidArgument);
}

TEST_CASE("errors csv layout") {
  const auto s = run_experiment(exp_config({10, 20}, 2, 8));
  const std::string csv = errors_csv(s);
  CHECK(csv.rfind("n,replication,scaled_error\n10,0,", 0) == 0);
  std::size_t lines = 0;
  for (const char c : csv) lines += c == '\n';
  CHECK(lines == 5);
}
