#include "proxsweep/cone.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace sweep {

namespace {

// Solve the unconstrained least-squares fit of w on the passive columns,
// minimum-norm when the columns are dependent.
Vec passive_solve(const Eigen::MatrixXd& gens, const std::vector<int>& passive,
                  const Vec& w) {
  Eigen::MatrixXd sub(gens.rows(), passive.size());
  for (size_t k = 0; k < passive.size(); ++k) sub.col(k) = gens.col(passive[k]);
  return sub.completeOrthogonalDecomposition().solve(w);
}

} // namespace

ConeDecomposition project_onto_cone(const std::vector<Vec>& generators,
                                    const Vec& w) {
  const int m = static_cast<int>(generators.size());
  ConeDecomposition out;
  out.input = w;
  out.coefficients = Vec::Zero(m);
  if (m == 0) {
    out.cone_part = Vec::Zero(w.size());
    out.polar_part = w;
    return out;
  }

  Eigen::MatrixXd gens(w.size(), m);
  double scale = 0;
  for (int j = 0; j < m; ++j) {
    if (generators[j].size() != w.size())
      throw ParameterError("cone generator dimension mismatch");
    double norm = generators[j].norm();
    if (norm == 0) throw ParameterError("cone generators must be nonzero");
    gens.col(j) = generators[j];
    scale = std::max(scale, norm);
  }
  const double tol = 1e-12 * (1.0 + w.norm()) * scale;
  const int cap = 100 * m;

  // Lawson-Hanson: grow the passive set by the most aligned generator,
  // backtrack whenever the passive fit turns negative.
  Vec mu = Vec::Zero(m);
  std::vector<int> passive;
  Vec residual = w;
  int iter = 0;
  while (true) {
    int best = -1;
    double best_score = tol;
    for (int j = 0; j < m; ++j) {
      if (std::find(passive.begin(), passive.end(), j) != passive.end())
        continue;
      double score = gens.col(j).dot(residual);
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    if (best < 0) break;
    passive.push_back(best);

    while (true) {
      if (++iter > cap)
        throw ConvergenceError("cone projection exceeded its iteration cap");
      Vec trial = passive_solve(gens, passive, w);
      if (trial.minCoeff() > -tol) {
        for (size_t k = 0; k < passive.size(); ++k)
          mu[passive[k]] = std::max(0.0, trial[k]);
        break;
      }
      // Step toward the trial until the first coefficient hits zero.
      double theta = 1.0;
      for (size_t k = 0; k < passive.size(); ++k)
        if (trial[k] <= 0.0) {
          double cur = mu[passive[k]];
          theta = std::min(theta, cur / (cur - trial[k]));
        }
      std::vector<int> keep;
      for (size_t k = 0; k < passive.size(); ++k) {
        double stepped = mu[passive[k]] + theta * (trial[k] - mu[passive[k]]);
        if (stepped > tol) {
          mu[passive[k]] = stepped;
          keep.push_back(passive[k]);
        } else {
          mu[passive[k]] = 0.0;
        }
      }
      passive = std::move(keep);
      if (passive.empty()) break;
    }
    residual = w - gens * mu;
  }

  out.coefficients = mu;
  out.cone_part = gens * mu;
  out.polar_part = w - out.cone_part;
  return out;
}

RegularityReport regularity_report(const RegularityParameters& params) {
  params.validate();
  RegularityReport r;
  const double p = static_cast<double>(params.constraint_count);
  r.delta = params.alpha * params.alpha /
            (2.0 * params.gamma * params.gamma * p * params.beta);
  r.eta0 = params.alpha / params.big_m;
  r.eta = params.alpha / (params.big_m * params.gamma);
  r.lipschitz_kl = params.beta / r.delta;
  r.dist_d = 2.0 * params.beta / r.delta;
  r.h_max = std::min({params.margin_c / r.lipschitz_kl,
                      r.delta / (2.0 * params.big_m),
                      params.rho / (2.0 * params.beta)});
  return r;
}

AdvanceDirection advance_direction(const ConstraintFamily& family,
                                   const RegularityParameters& params,
                                   double t, const Vec& q) {
  std::vector<int> rho_active = active_set(family, t, q, params.rho);
  AdvanceDirection out;
  if (rho_active.empty()) {
    out.direction = Vec::Zero(family.dim());
    if (family.dim() > 0) out.direction[0] = 1.0;
    out.margin = std::numeric_limits<double>::infinity();
    return out;
  }

  std::vector<Vec> grads;
  grads.reserve(rho_active.size());
  for (int i : rho_active) grads.push_back(family.gradient(i, t, q));
  std::vector<Vec> cone_gens;
  cone_gens.reserve(grads.size());
  for (const Vec& g : grads) cone_gens.push_back(-g);

  Vec sum = Vec::Zero(family.dim());
  for (const Vec& g : grads)
    sum += project_onto_cone(cone_gens, g).polar_part;

  double norm = sum.norm();
  if (norm < 1e-12)
    throw DegenerateConeError(
        "summed polar parts vanish; inverse triangle inequality violated");
  out.direction = sum / norm;
  out.margin = std::numeric_limits<double>::infinity();
  for (const Vec& g : grads)
    out.margin = std::min(out.margin, g.dot(out.direction));
  return out;
}

Vec restore_feasibility(const ConstraintFamily& family,
                        const RegularityParameters& params, const Vec& q,
                        double t, double s) {
  if (s == t || family.time_invariant()) return q;
  params.validate();
  const RegularityReport report = regularity_report(params);
  const double gap = std::abs(s - t);

  // Stable under small time shifts when nothing is rho-active.
  if (gap <= params.rho / (2.0 * params.beta) &&
      active_set(family, t, q, params.rho).empty())
    return q;

  const double h_l =
      std::min(params.margin_c, params.rho / (params.beta + report.delta));
  const double piece = std::min(report.delta * h_l / params.beta,
                                params.rho / (2.0 * params.beta));
  const int segments = static_cast<int>(std::ceil(gap / piece));
  const double dt = (s - t) / segments;

  Vec z = q;
  double tau = t;
  for (int k = 0; k < segments; ++k) {
    std::vector<int> rho_active = active_set(family, tau, z, params.rho);
    if (!rho_active.empty()) {
      AdvanceDirection dir = advance_direction(family, params, tau, z);
      z += (params.beta / report.delta) * std::abs(dt) * dir.direction;
    }
    tau = (k + 1 == segments) ? s : tau + dt;
    if (!is_feasible(family, tau, z, kTolFeas))
      throw FeasibilityError("feasibility restoration produced an infeasible "
                             "configuration");
  }
  return z;
}

} // namespace sweep
