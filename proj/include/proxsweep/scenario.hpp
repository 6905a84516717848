#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "proxsweep/crowd.hpp"
#include "proxsweep/integrator.hpp"

namespace sweep {

using Json = nlohmann::json;

/// A fully resolved problem instance: builtin defaults merged with file
/// overrides, constraints instantiated, initial state validated.
struct Scenario {
  std::string kind;
  double horizon = 0;
  Vec initial;
  double rho = 0;
  unsigned long long seed = 0;
  RegularityParameters params;
  ConstraintFamily family;
  PerturbationSpec perturbation;
  std::optional<CrowdConfiguration> crowd;
  std::optional<std::pair<Eigen::Vector2d, double>> target_disk;
  std::string output_csv;
  Json document; // canonical resolved form, the round-trip anchor

  SimulationProblem problem() const {
    return {family, params, perturbation, initial, horizon};
  }
};

/// Names of the shipped scenario catalog.
std::vector<std::string> builtin_names();

/// Catalog entry by name. Throws ParseError for unknown names.
Scenario builtin_scenario(const std::string& name);

/// Builds a Scenario from a parsed document; builtin kinds start from their
/// catalog entry and apply the document's overrides.
/// Throws ParseError / ValidationError.
Scenario scenario_from_json(const Json& doc);

/// Reads and validates a scenario file.
Scenario parse_scenario(const std::string& path);

/// Canonical serialized form (identical after parse round-trips).
Json write_scenario(const Scenario& scenario);

/// CSV dump, one row per grid point:
/// t,q_1..q_d,n_active,lambda_sum,kkt_stationarity,kkt_primal,
/// kkt_complementarity,dist_pred. Floats use shortest round-trip decimals;
/// byte output is deterministic for fixed inputs.
void write_trajectory(const Trajectory& traj, const std::string& path);

/// Minimal reader for the CSV above (tests, post-processing).
struct TrajectoryTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
TrajectoryTable read_trajectory(const std::string& path);

} // namespace sweep
