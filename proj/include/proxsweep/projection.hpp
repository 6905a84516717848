#pragma once

#include <array>

#include "proxsweep/constraint.hpp"

namespace sweep {

/// Euclidean projection onto a polyhedron, with its KKT certificate.
/// residuals: stationarity |point - target - sum lambda_i normal_i|,
/// primal max(0, -min slack), complementarity |sum lambda_i slack_i|.
struct ProjectionResult {
  Vec point;
  Vec multipliers;
  int iterations = 0;
  double stationarity = 0;
  double primal = 0;
  double complementarity = 0;
};

/// Projects target onto the half-space intersection. Solves the nonnegative
/// dual by exact active-set pivoting for small row counts, projected
/// coordinate ascent beyond that. `warm_start` seeds the dual multipliers.
/// Throws ConvergenceError or InfeasiblePolyhedronError.
ProjectionResult project_polyhedron(const Polyhedron& poly, const Vec& target,
                                    const Vec* warm_start = nullptr);

/// Projection of target onto the inner approximation built at (t, q).
ProjectionResult project_linearized(const ConstraintFamily& family, double t,
                                    const Vec& q, const Vec& target,
                                    const Vec* warm_start = nullptr);

/// Recomputes the three KKT residuals of `result` from scratch.
std::array<double, 3> kkt_residual(const ConstraintFamily& family, double t,
                                   const Vec& q, const Vec& target,
                                   const ProjectionResult& result);

/// Brute-force projection by enumerating candidate active sets; the
/// independent oracle for project_polyhedron. Row count must stay <= 20.
/// Throws EmptyPolyhedronError when no candidate is feasible.
Vec oracle_project(const Polyhedron& poly, const Vec& target);

} // namespace sweep
