#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "proxsweep/errors.hpp"

namespace sweep {

using Vec = Eigen::VectorXd;

/// Absolute tolerance deciding whether a constraint counts as active.
inline constexpr double kTolActive = 1e-10;
/// Absolute feasibility tolerance asserted on iterates.
inline constexpr double kTolFeas = 1e-9;

/// One smooth inequality g(t,q) >= 0, convex in q on its guard region.
///
/// `value` must be defined everywhere; `gradient` only where `guard` holds.
struct Constraint {
  std::function<double(double, const Vec&)> value;
  std::function<Vec(double, const Vec&)> gradient;
  std::function<double(double, const Vec&)> time_derivative;
  std::function<bool(double, const Vec&)> guard;
  std::string name;
};

/// Bundle of p constraints g_i(t,q) >= 0 over configurations q in R^d.
/// Evaluation is pure; a family may be shared across threads.
class ConstraintFamily {
public:
  ConstraintFamily() = default;
  ConstraintFamily(int dim, std::vector<Constraint> constraints,
                   bool time_invariant = false)
      : dim_(dim), constraints_(std::move(constraints)),
        time_invariant_(time_invariant) {}

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(constraints_.size()); }
  bool time_invariant() const { return time_invariant_; }

  const std::string& name(int i) const { return constraints_[i].name; }

  double value(int i, double t, const Vec& q) const {
    return constraints_[i].value(t, q);
  }
  Vec gradient(int i, double t, const Vec& q) const {
    return constraints_[i].gradient(t, q);
  }
  double time_derivative(int i, double t, const Vec& q) const {
    const auto& f = constraints_[i].time_derivative;
    return f ? f(t, q) : 0.0;
  }
  bool domain_guard(int i, double t, const Vec& q) const {
    const auto& f = constraints_[i].guard;
    return f ? f(t, q) : true;
  }

private:
  int dim_ = 0;
  std::vector<Constraint> constraints_;
  bool time_invariant_ = true;
};

/// The constants of the standing assumptions, supplied per scenario.
struct RegularityParameters {
  double alpha = 0;    // lower gradient bound, > 0
  double beta = 0;     // upper gradient / time-derivative bound
  double big_m = 0;    // Hessian and mixed-derivative bound
  double margin_c = 0; // guard band between Q_i(t) and the complement of U_i(t)
  double rho = 0;      // threshold defining the enlarged active set
  double gamma = 1;    // inverse triangle inequality constant, >= 1
  int constraint_count = 0;

  /// Throws ParameterError unless 0 < alpha <= beta, the remaining
  /// constants are positive and gamma >= 1.
  void validate() const;
};

/// Half-space list: row (normal, offset) means <normal, x> + offset >= 0.
struct Polyhedron {
  struct Row {
    Vec normal;
    double offset = 0;
  };
  std::vector<Row> rows;

  int dim() const { return rows.empty() ? 0 : static_cast<int>(rows.front().normal.size()); }
  int size() const { return static_cast<int>(rows.size()); }
  double slack(int i, const Vec& x) const {
    return rows[i].normal.dot(x) + rows[i].offset;
  }
  bool contains(const Vec& x, double tol) const;
};

/// Component i equals g_i(t,q). Values may be negative for infeasible q.
Vec evaluate_all(const ConstraintFamily& family, double t, const Vec& q);

/// Indices with g_i(t,q) <= threshold + kTolActive. threshold = 0 yields the
/// exact active set I(t,q), threshold = rho the enlarged set I_rho(t,q).
std::vector<int> active_set(const ConstraintFamily& family, double t,
                            const Vec& q, double threshold);

/// True iff min_i g_i(t,q) >= -tol.
bool is_feasible(const ConstraintFamily& family, double t, const Vec& q,
                 double tol);

/// Smallest constraint value together with its index (-1 for empty families).
std::pair<double, int> min_constraint(const ConstraintFamily& family, double t,
                                      const Vec& q);

/// First-order inner approximation of Q(t) at q: row i is
/// (grad g_i(t,q), g_i(t,q) - <grad g_i(t,q), q>), so a point x belongs to
/// the polyhedron iff g_i(t,q) + <grad g_i(t,q), x - q> >= 0 for all i.
/// Throws DomainError if any guard fails.
Polyhedron linearize(const ConstraintFamily& family, double t, const Vec& q);

// Builders for the constraint primitives used by the builtin scenarios.

/// g(t,q) = <normal, q> + offset + drift * t.
Constraint half_plane(const Vec& normal, double offset, double drift = 0.0,
                      std::string name = {});

/// g(q) = |q - center| - radius, guarded on |q - center| > radius - margin.
/// Default margin is radius / 2.
Constraint disk_complement(const Vec& center, double radius,
                           double margin = -1.0, std::string name = {});

} // namespace sweep
