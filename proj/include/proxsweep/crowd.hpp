#pragma once

#include <Eigen/Core>
#include <vector>

#include "proxsweep/cone.hpp"
#include "proxsweep/constraint.hpp"

namespace sweep {

/// N rigid disks of common radius, positions stacked into R^{2N}.
struct CrowdConfiguration {
  int count = 0;
  double radius = 0;
  Vec positions; // 2N entries

  Eigen::Vector2d position(int i) const {
    return positions.segment<2>(2 * i);
  }
  /// Signed distance |q_i - q_j| - 2r between disks i < j.
  double gap(int i, int j) const {
    return (position(i) - position(j)).norm() - 2.0 * radius;
  }
};

/// One touching pair with its unit vector and stacked gradient.
struct ContactEdge {
  int i = 0, j = 0;         // i < j
  Eigen::Vector2d unit;     // e_ij = (q_j - q_i) / |q_j - q_i|
  Vec gradient;             // G_ij in R^{2N}, norm sqrt(2)
  double gap = 0;
};

/// Disks as nodes, touching pairs as edges.
struct ContactGraph {
  int count = 0;
  std::vector<ContactEdge> edges;
  std::vector<std::vector<int>> adjacency; // node -> incident edge indices

  int degree(int node) const { return static_cast<int>(adjacency[node].size()); }
  int other(int edge, int node) const {
    return edges[edge].i == node ? edges[edge].j : edges[edge].i;
  }
};

/// Closed-form constants of the monodisperse crowd.
struct CrowdConstants {
  double gamma = 0; // 3 sqrt(2) N (3 / sin(2 pi / N))^N
  double eta = 0;   // (r / 6N) (sin(2 pi / N) / 3)^N
  double a = 0;     // 3 / sin(2 pi / N)
};

/// Velocity projection onto the feasible cone with its multipliers.
struct MoreauVelocity {
  Vec actual;            // P_{C_q}(U)
  Vec multipliers;       // lambda >= 0 per contact edge, graph order
  ContactGraph contacts;
};

/// One solved node of the elimination algorithm.
struct EliminationStep {
  int node = 0;
  int kind = 0;                 // 1, 2 (= 2a) or 3 (= 2b)
  std::vector<int> neighbors;   // solved contact partners
  std::vector<double> lambdas;  // matching multipliers
};

/// Nonnegative multipliers reproducing F with the per-component bound.
struct MultiplierCertificate {
  std::vector<ContactEdge> edges;
  std::vector<double> lambdas;       // one per edge
  double residual = 0;               // |sum lambda_ij G_ij - F|
  double bound = 0;                  // a^N |F| (infinite below N = 3)
  std::vector<EliminationStep> trace;
};

/// Upper bounds for the polydisperse remark.
struct PolydisperseBound {
  int max_neighbors = 0; // n_v
  double b = 0;
};

/// All touching pairs of the configuration, gap <= tol.
ContactGraph build_contact_graph(const CrowdConfiguration& config, double tol);

/// Constraint family over R^{2N} with one row per pair i < j:
/// value D_ij, gradient G_ij, no time dependence, guard |q_i - q_j| > r.
ConstraintFamily crowd_family(const CrowdConfiguration& config);

/// Least-squares feasible velocity: projection of the spontaneous field onto
/// C_q = {v : <G_ij, v> >= 0 for touching pairs}, via the polar decomposition.
MoreauVelocity moreau_velocity(const CrowdConfiguration& config, const Vec& spontaneous);

/// Closed forms of the inverse triangle inequality and prox-regularity
/// constants. Throws ParameterError for N < 3 or r <= 0.
CrowdConstants crowd_constants(int count, double radius);

/// The elimination algorithm: solves single contacts first, then hull
/// vertices of minimal interior angle with two or three neighbours.
/// Throws InfeasibleDecompositionError when the residual stays above
/// 1e-6 |F|, DegenerateHullError when hull vertices stay overloaded.
MultiplierCertificate eliminate_multipliers(const CrowdConfiguration& config,
                                            const Vec& force,
                                            double contact_tol = kTolFeas);

/// Neighbour count bound and multiplier constant for unequal radii.
PolydisperseBound polydisperse_bound(const std::vector<double>& radii);

} // namespace sweep
