#pragma once

#include <functional>
#include <vector>

#include "proxsweep/cone.hpp"
#include "proxsweep/constraint.hpp"
#include "proxsweep/projection.hpp"

namespace sweep {

/// Perturbation field f(t,q) with its Lipschitz and linear-growth constants.
struct PerturbationSpec {
  std::function<Vec(double, const Vec&)> field;
  double lipschitz_k = 0;
  double growth_l = 0;

  Vec operator()(double t, const Vec& q) const { return field(t, q); }
};

/// Everything a run of the scheme needs.
struct SimulationProblem {
  ConstraintFamily family;
  RegularityParameters params;
  PerturbationSpec perturbation;
  Vec initial;
  double horizon = 0;
};

/// Per-step bookkeeping attached to the state it produced.
struct StepRecord {
  std::vector<int> active;      // active set at the new state and time
  Vec multipliers;              // dual multipliers of the correction
  double stationarity = 0;
  double primal = 0;
  double complementarity = 0;
  double dist_to_next_set = 0;  // d_{Q~(t_{k+1}, q_k)}(q_k)
};

/// Uniform-grid trajectory with per-step projection records.
/// steps[k] describes the step from states[k] to states[k+1];
/// records[k] row-aligns with states[k] (records[0] is the initial state's).
struct Trajectory {
  double step_size = 0;
  std::vector<double> times;
  std::vector<Vec> states;
  std::vector<StepRecord> steps;
  std::vector<int> initial_active; // active set at (0, q0)

  int grid_count() const { return static_cast<int>(steps.size()); }

  /// Piecewise-linear interpolant between grid points.
  Vec at(double t) const;
};

/// Result of the dyadic-refinement convergence study.
struct OrderEstimate {
  double order = 0;
  std::vector<double> errors; // sup-errors against the finest grid, coarse first
  bool exact = false;         // all errors at rounding scale
};

/// One prediction-correction update: projects q + h f(t,q) onto the inner
/// approximation built at (t + h, q). Throws StepTooLargeError when h
/// exceeds h_max, FeasibilityError if the post-state check fails.
std::pair<Vec, ProjectionResult> step(const ConstraintFamily& family,
                                      const RegularityParameters& params,
                                      const PerturbationSpec& perturbation,
                                      double t, double h, const Vec& q,
                                      const Vec* warm_start = nullptr);

/// Runs the scheme on a uniform grid. The requested count is raised when
/// needed so that the step stays at or below h_max / 2.
Trajectory simulate(const SimulationProblem& problem, int grid_count);

/// Effective grid count simulate() will use for the requested one.
int effective_grid_count(const SimulationProblem& problem, int grid_count);

/// Dyadic refinement study: simulates at n0 * 2^j for j = 0..levels, takes
/// the finest grid as reference and reports sup-errors at shared grid
/// points plus the mean slope of their log2 ratios.
OrderEstimate estimate_order(const SimulationProblem& problem, int n0,
                             int levels);

} // namespace sweep
