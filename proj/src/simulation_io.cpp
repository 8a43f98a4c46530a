#include "orlicz/simulation_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

using json = nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InvalidArgument("config: missing field '" + std::string(key) + "' in " + where);
  }
  return obj.at(key);
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw InvalidArgument("config: " + what + " must be a number");
  return v.get<double>();
}

RateExponents parse_rate(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) {
    throw InvalidArgument("config: " + where + " must be a [n_power, log_power] pair");
  }
  return {number(v[0], where + "[0]"), number(v[1], where + "[1]")};
}

Distribution parse_distribution(const json& v, const OrliczFunction& psi,
                                const std::string& where) {
  const std::string kind = require(v, "kind", where).get<std::string>();
  auto shape = [&] { return number(require(v, "shape", where), where + ".shape"); };
  if (kind == "exponential") return Distribution::exponential();
  if (kind == "weibull") return Distribution::weibull(shape());
  if (kind == "gaussian") return Distribution::std_gaussian();
  if (kind == "adversarial") return Distribution::adversarial(shape(), psi);
  if (kind == "centered_exponential") return Distribution::centered_exponential();
  throw InvalidArgument("config: unknown distribution kind '" + kind + "' in " + where);
}

json distribution_json(const Distribution& d) {
  switch (d.kind()) {
    case Distribution::Kind::Exponential:
      return {{"kind", "exponential"}};
    case Distribution::Kind::Weibull:
      return {{"kind", "weibull"}, {"shape", d.shape()}};
    case Distribution::Kind::StdGaussian:
      return {{"kind", "gaussian"}};
    case Distribution::Kind::Adversarial:
      return {{"kind", "adversarial"}, {"shape", d.shape()}};
    case Distribution::Kind::CenteredExponential:
      return {{"kind", "centered_exponential"}};
  }
  return {};
}

EstimatorSpec parse_estimator(const json& v, const OrliczFunction& psi) {
  const std::string kind = require(v, "kind", "estimator").get<std::string>();
  if (kind == "iid") return IidEstimator{};
  if (kind == "linear_model") {
    LinearModelEstimator lm;
    const json& beta = require(v, "beta", "estimator");
    if (!beta.is_array()) throw InvalidArgument("config: estimator.beta must be an array");
    lm.beta.clear();
    for (const auto& b : beta) lm.beta.push_back(number(b, "estimator.beta entry"));
    if (v.contains("covariates")) {
      lm.covariate_law = parse_distribution(v.at("covariates"), psi, "estimator.covariates");
    }
    if (v.contains("intercept")) lm.intercept = v.at("intercept").get<bool>();
    return lm;
  }
  if (kind == "difference") {
    DifferenceEstimator np;
    if (v.contains("signal")) {
      const json& s = v.at("signal");
      const std::string sk = require(s, "kind", "estimator.signal").get<std::string>();
      if (sk == "none") np.signal.kind = Signal::Kind::None;
      else if (sk == "step") np.signal.kind = Signal::Kind::Step;
      else if (sk == "sine") np.signal.kind = Signal::Kind::Sine;
      else throw InvalidArgument("config: unknown signal kind '" + sk + "'");
      if (s.contains("amplitude")) np.signal.amplitude = number(s.at("amplitude"), "amplitude");
    }
    return np;
  }
  throw InvalidArgument("config: unknown estimator kind '" + kind + "'");
}

json estimator_json(const EstimatorSpec& e) {
  if (std::holds_alternative<IidEstimator>(e)) return {{"kind", "iid"}};
  if (const auto* lm = std::get_if<LinearModelEstimator>(&e)) {
    return {{"kind", "linear_model"},
            {"beta", lm->beta},
            {"covariates", distribution_json(lm->covariate_law)},
            {"intercept", lm->intercept}};
  }
  const auto& np = std::get<DifferenceEstimator>(e);
  static const char* names[] = {"none", "step", "sine"};
  return {{"kind", "difference"},
          {"signal", {{"kind", names[int(np.signal.kind)]}, {"amplitude", np.signal.amplitude}}}};
}

LimitLaw parse_limit_law(const json& v, const ExperimentConfig& cfg) {
  const std::string kind = require(v, "kind", "limit_law").get<std::string>();
  if (kind == "exponential") return exp_limit_law();
  if (kind == "weibull") {
    const double gamma = v.contains("shape") ? number(v.at("shape"), "limit_law.shape")
                                             : cfg.distribution.shape();
    return weibull_limit_law(gamma);
  }
  if (kind == "gaussian_stable") return gaussian_limit_law();
  if (kind == "clt") {
    const double sigma = experiment_target(cfg).sigma_psi;
    return LimitLaw::gaussian(clt_variance(cfg.distribution, cfg.psi, sigma), {0.5, 0.0});
  }
  if (kind == "gaussian") {
    return LimitLaw::gaussian(number(require(v, "variance", "limit_law"), "limit_law.variance"),
                              parse_rate(require(v, "rate", "limit_law"), "limit_law.rate"));
  }
  if (kind == "stable") {
    StableParams p;
    p.index = number(require(v, "index", "limit_law"), "limit_law.index");
    p.skew = number(require(v, "skew", "limit_law"), "limit_law.skew");
    p.scale = number(require(v, "scale", "limit_law"), "limit_law.scale");
    p.location = number(require(v, "location", "limit_law"), "limit_law.location");
    return LimitLaw::stable_law(p, parse_rate(require(v, "rate", "limit_law"), "limit_law.rate"));
  }
  throw InvalidArgument("config: unknown limit_law kind '" + kind + "'");
}

json rate_json(const RateExponents& r) { return json::array({r.n_power, r.log_power}); }

json limit_law_json(const LimitLaw& law) {
  if (law.kind == LimitLaw::Kind::Gaussian) {
    return {{"kind", "gaussian"}, {"variance", law.variance}, {"rate", rate_json(law.rate)}};
  }
  return {{"kind", "stable"},         {"index", law.stable.index},
          {"skew", law.stable.skew},  {"scale", law.stable.scale},
          {"location", law.stable.location}, {"rate", rate_json(law.rate)}};
}

json config_json(const ExperimentConfig& c) {
  json j;
  j["schema"] = kSchema;
  j["distribution"] = distribution_json(c.distribution);
  j["psi"] = c.psi.to_string();
  j["estimator"] = estimator_json(c.estimator);
  j["n_grid"] = c.n_grid;
  j["replications"] = c.replications;
  j["master_seed"] = c.master_seed;
  j["limit_law"] = c.limit_law ? limit_law_json(*c.limit_law) : json(nullptr);
  j["rate"] = c.rate ? rate_json(*c.rate) : json(nullptr);
  j["solver"] = {{"tol", c.solver.tol}, {"max_iter", c.solver.max_iter}};
  return j;
}

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  json v;
  try {
    v = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config: malformed JSON: ") + e.what());
  }
  try {
    if (!v.is_object()) throw InvalidArgument("config: top level must be an object");
    if (v.contains("schema") && v.at("schema") != kSchema) {
      throw InvalidArgument("config: unsupported schema " + v.at("schema").dump());
    }
    ExperimentConfig cfg;
    cfg.psi = OrliczFunction::parse(require(v, "psi", "config").get<std::string>());
    cfg.distribution = parse_distribution(require(v, "distribution", "config"), cfg.psi,
                                          "distribution");
    if (v.contains("estimator")) cfg.estimator = parse_estimator(v.at("estimator"), cfg.psi);
    const json& grid = require(v, "n_grid", "config");
    if (!grid.is_array()) throw InvalidArgument("config: n_grid must be an array");
    for (const auto& n : grid) {
      if (!n.is_number_integer() || n.get<long long>() < 2) {
        throw InvalidArgument("config: n_grid entries must be integers >= 2, got " + n.dump());
      }
      cfg.n_grid.push_back(n.get<std::size_t>());
    }
    const json& r = require(v, "replications", "config");
    if (!r.is_number_integer() || r.get<long long>() < 1) {
      throw InvalidArgument("config: replications must be an integer >= 1");
    }
    cfg.replications = r.get<std::size_t>();
    if (v.contains("master_seed")) {
      const json& s = v.at("master_seed");
      if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned())) {
        throw InvalidArgument("config: master_seed must be a nonnegative integer");
      }
      cfg.master_seed = s.get<std::uint64_t>();
    }
    if (v.contains("solver")) {
      const json& s = v.at("solver");
      if (s.contains("tol")) cfg.solver.tol = number(s.at("tol"), "solver.tol");
      if (s.contains("max_iter")) cfg.solver.max_iter = s.at("max_iter").get<int>();
    }
    if (v.contains("rate") && !v.at("rate").is_null()) cfg.rate = parse_rate(v.at("rate"), "rate");
    if (v.contains("limit_law") && !v.at("limit_law").is_null()) {
      cfg.limit_law = parse_limit_law(v.at("limit_law"), cfg);
    }
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("config: cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

std::string experiment_config_json(const ExperimentConfig& config) {
  return config_json(config).dump(2) + "\n";
}

std::string summary_json(const ExperimentConfig& config, const ExperimentSummary& summary) {
  json j;
  j["schema"] = kSchema;
  j["config"] = config_json(config);
  j["sigma_psi"] = summary.sigma_psi;
  j["target_method"] =
      summary.target_method == PopulationNorm::Method::Analytic ? "analytic" : "quadrature";
  j["levels"] = json::array();
  for (const auto& l : summary.levels) {
    j["levels"].push_back({{"n", l.n},
                           {"rate_factor", l.rate_factor},
                           {"replications", l.scaled_errors.size()},
                           {"mean", l.mean},
                           {"variance", l.variance},
                           {"median_abs_error", l.median_abs_error},
                           {"ks", l.ks ? json(*l.ks) : json(nullptr)}});
  }
  if (summary.rate_fit) {
    const double se = summary.rate_fit->standard_error;
    j["rate_fit"] = {{"slope", summary.rate_fit->slope},
                     {"standard_error", std::isfinite(se) ? json(se) : json(nullptr)}};
  } else {
    j["rate_fit"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string errors_csv(const ExperimentSummary& summary) {
  std::string out = "n,replication,scaled_error\n";
  for (const auto& l : summary.levels) {
    for (std::size_t j = 0; j < l.scaled_errors.size(); ++j) {
      out += std::to_string(l.n) + "," + std::to_string(j) + "," + fmt17(l.scaled_errors[j]) +
             "\n";
    }
  }
  return out;
}

void write_experiment_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                              const ExperimentSummary& summary) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InvalidArgument("cannot create output directory " + dir.string());
  auto write = [&](const char* name, const std::string& body) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + (dir / name).string());
    out << body;
  };
  write("summary.json", summary_json(config, summary));
  write("errors.csv", errors_csv(summary));
}

}  // namespace orlicz
