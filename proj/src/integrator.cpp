#include "proxsweep/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace sweep {

Vec Trajectory::at(double t) const {
  if (states.empty()) throw ParameterError("empty trajectory");
  if (t <= times.front()) return states.front();
  if (t >= times.back()) return states.back();
  double pos = (t - times.front()) / step_size;
  int k = std::min(static_cast<int>(pos), grid_count() - 1);
  double theta = pos - k;
  return (1.0 - theta) * states[k] + theta * states[k + 1];
}

std::pair<Vec, ProjectionResult> step(const ConstraintFamily& family,
                                      const RegularityParameters& params,
                                      const PerturbationSpec& perturbation,
                                      double t, double h, const Vec& q,
                                      const Vec* warm_start) {
  const RegularityReport report = regularity_report(params);
  if (h > report.h_max)
    throw StepTooLargeError("step " + std::to_string(h) +
                            " exceeds h_max = " + std::to_string(report.h_max));
  Vec prediction = q + h * perturbation(t, q);
  ProjectionResult corrected =
      project_linearized(family, t + h, q, prediction, warm_start);
  if (!is_feasible(family, t + h, corrected.point, kTolFeas)) {
    auto [worst, idx] = min_constraint(family, t + h, corrected.point);
    throw FeasibilityError("correction left constraint " +
                           std::to_string(idx) + " at " +
                           std::to_string(worst));
  }
  return {corrected.point, std::move(corrected)};
}

int effective_grid_count(const SimulationProblem& problem, int grid_count) {
  const RegularityReport report = regularity_report(problem.params);
  int needed = static_cast<int>(
      std::ceil(problem.horizon / (report.h_max / 2.0) - 1e-12));
  return std::max(grid_count, std::max(1, needed));
}

Trajectory simulate(const SimulationProblem& problem, int grid_count) {
  if (grid_count < 1) throw ParameterError("grid count must be positive");
  if (!(problem.horizon > 0)) throw ParameterError("horizon must be positive");
  if (!is_feasible(problem.family, 0.0, problem.initial, kTolFeas))
    throw FeasibilityError("initial configuration is infeasible");

  const int n = effective_grid_count(problem, grid_count);
  const double h = problem.horizon / n;

  Trajectory traj;
  traj.step_size = h;
  traj.times.reserve(n + 1);
  traj.states.reserve(n + 1);
  traj.steps.reserve(n);
  traj.times.push_back(0.0);
  traj.states.push_back(problem.initial);
  traj.initial_active = active_set(problem.family, 0.0, problem.initial, 0.0);

  Vec warm;
  for (int k = 0; k < n; ++k) {
    const double t = k * h;
    const double t_next = (k + 1 == n) ? problem.horizon : (k + 1) * h;
    const Vec& q = traj.states.back();
    const auto tag = [k](const char* what) {
      return "step " + std::to_string(k) + ": " + what;
    };
    try {
      // Distance from q to the set it is about to be projected onto.
      ProjectionResult freeze = project_linearized(problem.family, t_next, q, q);
      auto [next, corrected] =
          step(problem.family, problem.params, problem.perturbation, t,
               t_next - t, q, warm.size() ? &warm : nullptr);
      StepRecord record;
      record.active = active_set(problem.family, t_next, next, 0.0);
      record.multipliers = corrected.multipliers;
      record.stationarity = corrected.stationarity;
      record.primal = corrected.primal;
      record.complementarity = corrected.complementarity;
      record.dist_to_next_set = (freeze.point - q).norm();
      warm = corrected.multipliers;
      traj.times.push_back(t_next);
      traj.states.push_back(std::move(next));
      traj.steps.push_back(std::move(record));
    } catch (const StepTooLargeError& e) {
      throw StepTooLargeError(tag(e.what()));
    } catch (const FeasibilityError& e) {
      throw FeasibilityError(tag(e.what()));
    } catch (const ConvergenceError& e) {
      throw ConvergenceError(tag(e.what()));
    } catch (const InfeasiblePolyhedronError& e) {
      throw InfeasiblePolyhedronError(tag(e.what()));
    } catch (const DomainError& e) {
      throw DomainError(tag(e.what()));
    } catch (const DegenerateConeError& e) {
      throw DegenerateConeError(tag(e.what()));
    }
  }
  return traj;
}

OrderEstimate estimate_order(const SimulationProblem& problem, int n0,
                             int levels) {
  if (levels < 3) throw ParameterError("order estimation needs >= 3 levels");
  if (effective_grid_count(problem, n0) != n0)
    throw ParameterError(
        "coarsest grid is below the step bound; refinement would not nest");
  std::vector<std::future<Trajectory>> runs;
  runs.reserve(levels + 1);
  for (int j = 0; j <= levels; ++j) {
    int n = n0 << j;
    runs.push_back(std::async(std::launch::async, [&problem, n] {
      return simulate(problem, n);
    }));
  }
  std::vector<Trajectory> trajectories;
  trajectories.reserve(levels + 1);
  for (auto& f : runs) trajectories.push_back(f.get());

  const Trajectory& reference = trajectories.back();
  OrderEstimate est;
  for (int j = 0; j < levels; ++j) {
    const Trajectory& coarse = trajectories[j];
    const int stride = 1 << (levels - j);
    double err = 0;
    for (size_t k = 0; k < coarse.states.size(); ++k)
      err = std::max(
          err, (coarse.states[k] - reference.states[k * stride]).norm());
    est.errors.push_back(err);
  }

  double scale = 1.0 + reference.states.front().norm();
  est.exact = std::all_of(est.errors.begin(), est.errors.end(),
                          [&](double e) { return e <= 1e-12 * scale; });
  if (est.exact) {
    est.order = std::numeric_limits<double>::quiet_NaN();
    return est;
  }
  double sum = 0;
  int count = 0;
  for (size_t j = 0; j + 1 < est.errors.size(); ++j) {
    if (est.errors[j + 1] <= 0) continue;
    sum += std::log2(est.errors[j] / est.errors[j + 1]);
    ++count;
  }
  est.order = count ? sum / count : std::numeric_limits<double>::quiet_NaN();
  return est;
}

} // namespace sweep
