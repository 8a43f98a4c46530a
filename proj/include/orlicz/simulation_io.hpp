#pragma once

#include <filesystem>
#include <string>

#include "orlicz/simulation.hpp"

namespace orlicz {

inline constexpr const char* kSchema = "orlicz-kit/1";

/// Parses an experiment config:
///
///   {
///     "schema": "orlicz-kit/1",
///     "distribution": {"kind": "exponential" | "weibull" | "gaussian" |
///                      "adversarial" | "centered_exponential", "shape": γ},
///     "psi": "exp:1",
///     "estimator": {"kind": "iid"}
///                | {"kind": "linear_model", "beta": [...],
///                   "covariates": {distribution}, "intercept": true}
///                | {"kind": "difference", "signal": {"kind": "none" | "step" |
///                   "sine", "amplitude": a}},
///     "n_grid": [...], "replications": R, "master_seed": s,
///     "limit_law": {"kind": "exponential"} | {"kind": "weibull"}
///                | {"kind": "gaussian_stable"} | {"kind": "clt"}
///                | {"kind": "gaussian", "variance": v, "rate": [p, q]}
///                | {"kind": "stable", "index": α, "skew": β, "scale": s,
///                   "location": δ, "rate": [p, q]},
///     "rate": [p, q],
///     "solver": {"tol": 1e-10, "max_iter": 200}
///   }
///
/// Only distribution, psi, n_grid and replications are required. Named limit
/// laws are resolved against the distribution; "clt" evaluates clt_variance
/// at rate √n. Throws InvalidArgument with the parse location or the
/// offending field.
ExperimentConfig parse_experiment_config(const std::string& text);

ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Fully resolved config as JSON text (limit laws written out explicitly).
std::string experiment_config_json(const ExperimentConfig& config);

/// summary.json contents.
std::string summary_json(const ExperimentConfig& config, const ExperimentSummary& summary);

/// errors.csv contents: n,replication,scaled_error with %.17g values.
std::string errors_csv(const ExperimentSummary& summary);

/// Writes summary.json and errors.csv into dir, creating it if needed.
void write_experiment_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                              const ExperimentSummary& summary);

}  // namespace orlicz
