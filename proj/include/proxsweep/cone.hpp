#pragma once

#include <vector>

#include "proxsweep/constraint.hpp"

namespace sweep {

/// Orthogonal split of a vector against a finitely generated cone:
/// input = cone_part + polar_part, <cone_part, polar_part> = 0,
/// cone_part = sum coefficients[j] * generator[j] with coefficients >= 0,
/// polar_part in the polar cone of the generators.
struct ConeDecomposition {
  Vec input;
  Vec cone_part;
  Vec polar_part;
  Vec coefficients;
};

/// Derived constants of the prox-regularity calculus.
struct RegularityReport {
  double delta = 0;        // alpha^2 / (2 gamma^2 p beta)
  double eta0 = 0;         // alpha / M, single-constraint prox-regularity
  double eta = 0;          // alpha / (M gamma), intersection prox-regularity
  double lipschitz_kl = 0; // beta / delta
  double dist_d = 0;       // 2 beta / delta
  double h_max = 0;        // min(c / K_L, delta / (2 M), rho / (2 beta))
};

/// Unit direction increasing every rho-active constraint, with its margin.
struct AdvanceDirection {
  Vec direction;
  double margin = 0;
};

/// Euclidean projection of w onto cone(generators), by active-set NNLS.
/// Throws ConvergenceError if the iteration cap is reached above tolerance.
ConeDecomposition project_onto_cone(const std::vector<Vec>& generators,
                                    const Vec& w);

/// Closed-form constants derived from the scenario parameters.
/// Throws ParameterError on nonpositive inputs or gamma < 1.
RegularityReport regularity_report(const RegularityParameters& params);

/// Direction u with <grad g_i(t,q), u> >= delta for every i in I_rho(t,q),
/// built from the polar parts of the gradients. With no rho-active
/// constraint, returns the first basis vector and margin +infinity.
/// Throws DegenerateConeError when the summed polar parts vanish.
AdvanceDirection advance_direction(const ConstraintFamily& family,
                                   const RegularityParameters& params,
                                   double t, const Vec& q);

/// Moves q in Q(t) to a configuration in Q(s) at distance at most
/// K_L |t - s|, advancing along good directions over subintervals.
Vec restore_feasibility(const ConstraintFamily& family,
                        const RegularityParameters& params, const Vec& q,
                        double t, double s);

} // namespace sweep
