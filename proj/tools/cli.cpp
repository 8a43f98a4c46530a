#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "csv.hpp"
#include "orlicz/asymptotics.hpp"
#include "orlicz/distributions.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/regression.hpp"
#include "orlicz/simulation.hpp"
#include "orlicz/simulation_io.hpp"
#include "orlicz/stable.hpp"

namespace orlicz::cli {

namespace {

using json = nlohmann::json;

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitSimulation = 4;

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("ORLICZ_KIT_SEED");
  if (!raw || !*raw) return std::nullopt;
  std::uint64_t v = 0;
  const char* end = raw + std::char_traits<char>::length(raw);
  const auto [ptr, ec] = std::from_chars(raw, end, v);
  if (ec != std::errc() || ptr != end) {
    throw InvalidArgument(std::string("ORLICZ_KIT_SEED is not a 64-bit unsigned integer: ") + raw);
  }
  return v;
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

json estimate_json(const NormEstimate& e, std::size_t n) {
  return {{"schema", kSchema},
          {"sigma_hat", e.sigma_hat},
          {"n", n},
          {"iterations", e.iterations},
          {"residual", e.constraint_residual}};
}

// type-7 quantile of sorted data
double quantile_sorted(const std::vector<double>& s, double p) {
  const double h = (double(s.size()) - 1.0) * p;
  const std::size_t lo = std::size_t(std::floor(h));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (h - double(lo)) * (s[hi] - s[lo]);
}

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct NormArgs {
  std::string input, psi = "exp:2", column;
  double tol = 1e-10;
};

int cmd_norm(const NormArgs& a, std::ostream& out) {
  const Table t = read_csv(a.input);
  const std::string column = a.column.empty() ? t.header.front() : a.column;
  const auto& values = t.column(column);
  if (values.empty()) throw InvalidArgument("csv: column '" + column + "' has no rows");
  const Sample s(values, "csv:" + a.input + "#" + column);
  SolverOptions opts;
  opts.tol = a.tol;
  print_json(out, estimate_json(empirical_norm(s, OrliczFunction::parse(a.psi), opts), s.size()));
  return 0;
}

struct RegressArgs {
  std::string input, response, covariates, psi = "exp:2";
  bool diff = false;
  bool intercept = false;
  double tol = 1e-10;
};

int cmd_regress(const RegressArgs& a, std::ostream& out) {
  const Table t = read_csv(a.input);
  const std::string response = a.response.empty() ? t.header.front() : a.response;
  const auto& y = t.column(response);
  const OrliczFunction psi = OrliczFunction::parse(a.psi);
  SolverOptions opts;
  opts.tol = a.tol;
  if (a.diff) {
    if (y.size() < 2) throw InvalidArgument("regress --diff: need at least two rows");
    const Sample ys(y, "csv:" + a.input + "#" + response);
    const NormEstimate e = np_diff_estimator(ys, psi, opts);
    json j = estimate_json(e, y.size());
    j["estimator"] = "difference";
    const Sample d = first_differences(ys);
    std::vector<double> sorted(d.values().begin(), d.values().end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    j["difference_iqr"] = iqr;
    j["exceedance"] = json::array();
    const SignalPath path(y);
    for (const double f : {0.5, 1.0, 2.0}) {
      const double r = f * iqr;
      j["exceedance"].push_back(
          {{"r", r}, {"iqr_multiple", f},
           {"count", r > 0.0 ? json(exceedance_count(path, r)) : json(nullptr)}});
    }
    print_json(out, j);
    return 0;
  }
  const auto names = split_names(a.covariates);
  if (names.empty()) throw InvalidArgument("regress: give --covariates or --diff");
  const Eigen::Index n = Eigen::Index(y.size());
  const Eigen::Index d = Eigen::Index(names.size()) + (a.intercept ? 1 : 0);
  Eigen::MatrixXd z(n, d);
  Eigen::Index c = 0;
  if (a.intercept) z.col(c++).setOnes();
  for (const auto& name : names) {
    const auto& col = t.column(name);
    for (Eigen::Index i = 0; i < n; ++i) z(i, c) = col[std::size_t(i)];
    ++c;
  }
  const LinearModelData data(Eigen::Map<const Eigen::VectorXd>(y.data(), n), z);
  const Eigen::VectorXd beta = ols_fit(data);
  const NormEstimate e = lm_orlicz_estimator(data, beta, psi, opts);
  json j = estimate_json(e, y.size());
  j["estimator"] = "linear_model";
  j["beta"] = std::vector<double>(beta.begin(), beta.end());
  std::vector<std::string> labels;
  if (a.intercept) labels.push_back("(intercept)");
  labels.insert(labels.end(), names.begin(), names.end());
  j["covariates"] = labels;
  print_json(out, j);
  return 0;
}

struct SimulateArgs {
  std::string config, out_dir;
  unsigned workers = 1;
  std::optional<std::uint64_t> seed;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  std::ifstream in(a.config);
  if (!in) throw InvalidArgument("simulate: cannot open " + a.config);
  std::stringstream buf;
  buf << in.rdbuf();
  ExperimentConfig cfg = parse_experiment_config(buf.str());
  // precedence: --seed, then the config's master_seed, then ORLICZ_KIT_SEED
  if (a.seed) {
    cfg.master_seed = *a.seed;
  } else if (!json::parse(buf.str()).contains("master_seed")) {
    if (const auto s = env_seed()) cfg.master_seed = *s;
  }
  const ExperimentSummary summary = run_experiment(cfg, a.workers);
  if (!a.out_dir.empty()) write_experiment_outputs(a.out_dir, cfg, summary);
  out << summary_json(cfg, summary);
  return 0;
}

int cmd_quantile(double q, std::ostream& out) {
  const double expansion = gaussian_quantile_expansion(q);
  const double reference = std_normal_upper_quantile(q);
  print_json(out, {{"schema", kSchema},
                   {"q", q},
                   {"expansion", expansion},
                   {"reference", reference},
                   {"abs_error", std::abs(expansion - reference)}});
  return 0;
}

struct StableArgs {
  long long n = 0;
  std::optional<std::uint64_t> seed;
  bool charfun_check = false;
  std::string out_file;
};

int cmd_stable(const StableArgs& a, std::ostream& out) {
  if (a.n < 1) throw InvalidArgument("stable: --n must be at least 1");
  std::uint64_t seed = 0;
  if (a.seed) seed = *a.seed;
  else if (const auto s = env_seed()) seed = *s;
  const YCalibration& cal = calibrate_Y_parameters();
  const Sample draws = stable_sample(cal.params, std::size_t(a.n), seed);

  auto write_csv = [&](std::ostream& os) {
    os << "y\n";
    char buf[32];
    for (const double v : draws.values()) {
      std::snprintf(buf, sizeof buf, "%.17g\n", v);
      os << buf;
    }
  };
  if (!a.out_file.empty()) {
    std::ofstream f(a.out_file, std::ios::binary);
    if (!f) throw InvalidArgument("stable: cannot write " + a.out_file);
    write_csv(f);
  }
  if (!a.charfun_check) {
    if (a.out_file.empty()) write_csv(out);
    return 0;
  }
  json grid = json::array();
  double worst = 0.0;
  for (const double l : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    std::complex<double> acc(0.0, 0.0);
    for (const double v : draws.values()) acc += std::polar(1.0, l * v);
    acc /= double(draws.size());
    const auto ref = stable_charfun_Y(l);
    const double dev = std::abs(acc - ref);
    worst = std::max(worst, dev);
    grid.push_back({{"lambda", l},
                    {"empirical", {acc.real(), acc.imag()}},
                    {"reference", {ref.real(), ref.imag()}},
                    {"deviation", dev}});
  }
  print_json(out, {{"schema", kSchema},
                   {"n", a.n},
                   {"seed", seed},
                   {"parameters",
                    {{"index", cal.params.index},
                     {"skew", cal.params.skew},
                     {"scale", cal.params.scale},
                     {"location", cal.params.location},
                     {"calibration_max_deviation", cal.max_deviation}}},
                   {"grid", grid},
                   {"sup_deviation", worst}});
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Empirical Orlicz norms: estimation, limit laws and simulation", "orlicz_kit"};
  app.require_subcommand(1);

  NormArgs norm;
  auto* norm_cmd = app.add_subcommand("norm", "empirical Orlicz norm of one CSV column");
  norm_cmd->add_option("--input", norm.input, "CSV file with a header row")->required();
  norm_cmd->add_option("--psi", norm.psi, "exp:ALPHA or power:P")->capture_default_str();
  norm_cmd->add_option("--column", norm.column, "column name (default: first column)");
  norm_cmd->add_option("--tol", norm.tol, "bisection tolerance")->capture_default_str();

  RegressArgs reg;
  auto* reg_cmd = app.add_subcommand("regress", "norm of regression errors");
  reg_cmd->add_option("--input", reg.input, "CSV file with a header row")->required();
  reg_cmd->add_option("--response", reg.response, "response column (default: first column)");
  auto* cov = reg_cmd->add_option("--covariates", reg.covariates, "comma-separated columns");
  auto* dif = reg_cmd->add_flag("--diff", reg.diff, "first-difference estimator");
  cov->excludes(dif);
  reg_cmd->add_flag("--intercept", reg.intercept, "prepend a column of ones")->excludes(dif);
  reg_cmd->add_option("--psi", reg.psi, "exp:ALPHA or power:P")->capture_default_str();
  reg_cmd->add_option("--tol", reg.tol, "bisection tolerance")->capture_default_str();

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "run a Monte Carlo experiment");
  sim_cmd->add_option("--config", sim.config, "experiment JSON")->required();
  sim_cmd->add_option("--out", sim.out_dir, "directory for summary.json and errors.csv");
  sim_cmd->add_option("--workers", sim.workers, "worker threads (0: all cores)")
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "master seed (overrides config and ORLICZ_KIT_SEED)");

  double q = 0.0;
  auto* q_cmd =
      app.add_subcommand("quantile-expansion", "leading-order expansion of the normal quantile");
  q_cmd->add_option("--q", q, "upper tail probability in (0, 0.02]")->required();

  StableArgs st;
  auto* st_cmd = app.add_subcommand("stable", "draws of the calibrated 4/3-stable law Y");
  st_cmd->add_option("--n", st.n, "number of draws")->required();
  st_cmd->add_option("--seed", st.seed, "seed (default: ORLICZ_KIT_SEED or 0)");
  st_cmd->add_flag("--charfun-check", st.charfun_check,
                   "print a JSON characteristic-function check instead of the draws");
  st_cmd->add_option("--out", st.out_file, "write the draws to this CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*norm_cmd) return cmd_norm(norm, out);
    if (*reg_cmd) return cmd_regress(reg, out);
    if (*sim_cmd) return cmd_simulate(sim, out);
    if (*q_cmd) return cmd_quantile(q, out);
    if (*st_cmd) return cmd_stable(st, out);
  } catch (const ReplicationFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitSimulation;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace orlicz::cli
