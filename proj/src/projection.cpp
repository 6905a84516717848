#include "proxsweep/projection.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace sweep {

namespace {

constexpr int kActiveSetMaxRows = 32;
constexpr long kIterationCap = 100000;
constexpr double kResidualTol = 1e-10;

struct DualProblem {
  Eigen::MatrixXd normals; // d x p, column i is row normal i
  Vec slack_at_target;     // s_i = <n_i, target> + offset_i
  Vec target;
};

DualProblem make_dual(const Polyhedron& poly, const Vec& target) {
  DualProblem dp;
  const int p = poly.size();
  dp.normals.resize(target.size(), p);
  dp.slack_at_target.resize(p);
  dp.target = target;
  for (int i = 0; i < p; ++i) {
    dp.normals.col(i) = poly.rows[i].normal;
    dp.slack_at_target[i] = poly.slack(i, target);
  }
  return dp;
}

ProjectionResult finish(const DualProblem& dp, const Vec& lambda, int iters) {
  ProjectionResult r;
  r.point = dp.target + dp.normals * lambda;
  r.multipliers = lambda;
  r.iterations = iters;
  r.stationarity = (r.point - dp.target - dp.normals * lambda).norm();
  Vec slack = dp.slack_at_target + dp.normals.transpose() * (r.point - dp.target);
  r.primal = std::max(0.0, -slack.minCoeff());
  r.complementarity = std::abs(lambda.dot(slack));
  return r;
}

bool converged(const ProjectionResult& r) {
  return r.stationarity <= kResidualTol && r.primal <= kResidualTol &&
         r.complementarity <= kResidualTol;
}

// Exact pivoting on the nonnegative dual 1/2 l'Gl + s'l, l >= 0, with
// minimum-norm inner solves so dependent normals stay harmless.
ProjectionResult active_set_solve(const DualProblem& dp, const Vec* warm) {
  const int p = static_cast<int>(dp.slack_at_target.size());
  const Eigen::MatrixXd gram = dp.normals.transpose() * dp.normals;
  const double scale =
      1.0 + dp.target.norm() + dp.slack_at_target.cwiseAbs().maxCoeff();
  const double tol = 1e-12 * scale;

  Vec lambda = Vec::Zero(p);
  std::vector<int> active;
  if (warm && warm->size() == p)
    for (int i = 0; i < p; ++i)
      if ((*warm)[i] > 0) active.push_back(i);

  int iters = 0;
  bool face_inconsistent = false;
  while (iters < kIterationCap) {
    // Solve the face subproblem, shrinking while coefficients go negative.
    while (!active.empty()) {
      ++iters;
      Eigen::MatrixXd sub(dp.normals.rows(), active.size());
      Vec rhs(active.size());
      for (size_t k = 0; k < active.size(); ++k) {
        sub.col(k) = dp.normals.col(active[k]);
        rhs[k] = -dp.slack_at_target[active[k]];
      }
      Eigen::MatrixXd sub_gram = sub.transpose() * sub;
      Vec trial = sub_gram.completeOrthogonalDecomposition().solve(rhs);
      face_inconsistent = (sub_gram * trial - rhs).norm() > 1e-9 * scale;
      if (trial.minCoeff() > -tol) {
        lambda.setZero();
        for (size_t k = 0; k < active.size(); ++k)
          lambda[active[k]] = std::max(0.0, trial[k]);
        break;
      }
      double theta = 1.0;
      for (size_t k = 0; k < active.size(); ++k)
        if (trial[k] <= 0.0) {
          double cur = lambda[active[k]];
          theta = std::min(theta, cur / (cur - trial[k]));
        }
      std::vector<int> keep;
      for (size_t k = 0; k < active.size(); ++k) {
        double stepped =
            lambda[active[k]] + theta * (trial[k] - lambda[active[k]]);
        lambda[active[k]] = stepped > tol ? stepped : 0.0;
        if (stepped > tol) keep.push_back(active[k]);
      }
      active = std::move(keep);
      if (active.empty()) lambda.setZero();
    }

    if (lambda.lpNorm<Eigen::Infinity>() > 1e13 * scale)
      throw InfeasiblePolyhedronError(
          "dual multipliers diverge; the linearized set is empty");

    // Most violated primal constraint enters the active set.
    Vec grad = gram * lambda + dp.slack_at_target;
    int worst = -1;
    double worst_val = -tol;
    for (int i = 0; i < p; ++i) {
      if (std::find(active.begin(), active.end(), i) != active.end()) continue;
      if (grad[i] < worst_val) {
        worst_val = grad[i];
        worst = i;
      }
    }
    if (worst < 0) {
      if (face_inconsistent)
        throw InfeasiblePolyhedronError(
            "active face admits no common point; the linearized set is empty");
      return finish(dp, lambda, iters);
    }
    active.push_back(worst);
    ++iters;
  }
  ProjectionResult r = finish(dp, lambda, static_cast<int>(iters));
  if (converged(r)) return r;
  throw ConvergenceError("projection active-set solver hit its iteration cap");
}

// Cyclic projected coordinate ascent on the same dual (Uzawa-style).
ProjectionResult coordinate_solve(const DualProblem& dp, const Vec* warm) {
  const int p = static_cast<int>(dp.slack_at_target.size());
  const Eigen::MatrixXd gram = dp.normals.transpose() * dp.normals;
  const double scale =
      1.0 + dp.target.norm() + dp.slack_at_target.cwiseAbs().maxCoeff();

  Vec lambda = Vec::Zero(p);
  if (warm && warm->size() == p) lambda = warm->cwiseMax(0.0);

  for (long sweep = 1; sweep <= kIterationCap; ++sweep) {
    double shift = 0;
    for (int i = 0; i < p; ++i) {
      double diag = gram(i, i);
      if (diag <= 0) continue;
      double grad = gram.row(i).dot(lambda) + dp.slack_at_target[i];
      double next = std::max(0.0, lambda[i] - grad / diag);
      shift = std::max(shift, std::abs(next - lambda[i]));
      lambda[i] = next;
    }
    if (lambda.lpNorm<Eigen::Infinity>() > 1e13 * scale)
      throw InfeasiblePolyhedronError(
          "dual multipliers diverge; the linearized set is empty");
    if (shift <= 1e-14 * scale) {
      ProjectionResult r = finish(dp, lambda, static_cast<int>(sweep));
      if (converged(r)) return r;
      if (shift == 0.0) break;
    }
  }
  ProjectionResult r = finish(dp, lambda, static_cast<int>(kIterationCap));
  if (converged(r)) return r;
  throw ConvergenceError("projection coordinate ascent hit its iteration cap");
}

} // namespace

ProjectionResult project_polyhedron(const Polyhedron& poly, const Vec& target,
                                    const Vec* warm_start) {
  if (poly.size() == 0) {
    ProjectionResult r;
    r.point = target;
    r.multipliers = Vec::Zero(0);
    return r;
  }
  DualProblem dp = make_dual(poly, target);
  if (poly.size() <= kActiveSetMaxRows) return active_set_solve(dp, warm_start);
  return coordinate_solve(dp, warm_start);
}

ProjectionResult project_linearized(const ConstraintFamily& family, double t,
                                    const Vec& q, const Vec& target,
                                    const Vec* warm_start) {
  return project_polyhedron(linearize(family, t, q), target, warm_start);
}

std::array<double, 3> kkt_residual(const ConstraintFamily& family, double t,
                                   const Vec& q, const Vec& target,
                                   const ProjectionResult& result) {
  Vec combo = Vec::Zero(family.dim());
  double primal = 0;
  double compl_sum = 0;
  for (int i = 0; i < family.size(); ++i) {
    Vec grad = family.gradient(i, t, q);
    combo += result.multipliers[i] * grad;
    double slack = family.value(i, t, q) + grad.dot(result.point - q);
    primal = std::max(primal, -slack);
    compl_sum += result.multipliers[i] * slack;
  }
  return {(result.point - target - combo).norm(), std::max(0.0, primal),
          std::abs(compl_sum)};
}

Vec oracle_project(const Polyhedron& poly, const Vec& target) {
  const int p = poly.size();
  if (p > 20)
    throw ParameterError("oracle projection is limited to 20 rows");
  if (p == 0) return target;
  const int d = poly.dim();
  const double tol = 1e-9 * (1.0 + target.norm());

  double best_dist = std::numeric_limits<double>::infinity();
  Vec best;
  for (unsigned subset = 0; subset < (1u << p); ++subset) {
    std::vector<int> idx;
    for (int i = 0; i < p; ++i)
      if (subset & (1u << i)) idx.push_back(i);
    if (static_cast<int>(idx.size()) > d) continue;

    Vec candidate;
    if (idx.empty()) {
      candidate = target;
    } else {
      Eigen::MatrixXd sub(d, idx.size());
      Vec rhs(idx.size());
      for (size_t k = 0; k < idx.size(); ++k) {
        sub.col(k) = poly.rows[idx[k]].normal;
        rhs[k] = -poly.slack(static_cast<int>(idx[k]), target);
      }
      Eigen::MatrixXd gram = sub.transpose() * sub;
      Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
      if (lu.rank() < static_cast<int>(idx.size())) continue;
      Vec mu = lu.solve(rhs);
      if (mu.minCoeff() < -tol) continue;
      candidate = target + sub * mu;
    }
    if (!poly.contains(candidate, tol)) continue;
    double dist = (candidate - target).norm();
    if (dist < best_dist) {
      best_dist = dist;
      best = candidate;
    }
  }
  if (!(best_dist < std::numeric_limits<double>::infinity()))
    throw EmptyPolyhedronError("no candidate active set is feasible");
  return best;
}

} // namespace sweep
