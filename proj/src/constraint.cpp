#include "proxsweep/constraint.hpp"

#include <cmath>
#include <utility>

namespace sweep {

void RegularityParameters::validate() const {
  if (!(alpha > 0) || !(beta >= alpha))
    throw ParameterError("regularity parameters require 0 < alpha <= beta");
  if (!(big_m > 0))
    throw ParameterError("regularity parameters require M > 0");
  if (!(margin_c > 0))
    throw ParameterError("regularity parameters require c > 0");
  if (!(rho > 0))
    throw ParameterError("regularity parameters require rho > 0");
  if (!(gamma >= 1))
    throw ParameterError("regularity parameters require gamma >= 1");
  if (constraint_count < 1)
    throw ParameterError("regularity parameters require at least one constraint");
}

bool Polyhedron::contains(const Vec& x, double tol) const {
  for (const Row& row : rows)
    if (row.normal.dot(x) + row.offset < -tol) return false;
  return true;
}

Vec evaluate_all(const ConstraintFamily& family, double t, const Vec& q) {
  Vec out(family.size());
  for (int i = 0; i < family.size(); ++i) out[i] = family.value(i, t, q);
  return out;
}

std::vector<int> active_set(const ConstraintFamily& family, double t,
                            const Vec& q, double threshold) {
  std::vector<int> out;
  for (int i = 0; i < family.size(); ++i)
    if (family.value(i, t, q) <= threshold + kTolActive) out.push_back(i);
  return out;
}

bool is_feasible(const ConstraintFamily& family, double t, const Vec& q,
                 double tol) {
  for (int i = 0; i < family.size(); ++i)
    if (family.value(i, t, q) < -tol) return false;
  return true;
}

std::pair<double, int> min_constraint(const ConstraintFamily& family, double t,
                                      const Vec& q) {
  double best = std::numeric_limits<double>::infinity();
  int arg = -1;
  for (int i = 0; i < family.size(); ++i) {
    double v = family.value(i, t, q);
    if (v < best) {
      best = v;
      arg = i;
    }
  }
  return {best, arg};
}

Polyhedron linearize(const ConstraintFamily& family, double t, const Vec& q) {
  Polyhedron poly;
  poly.rows.reserve(family.size());
  for (int i = 0; i < family.size(); ++i) {
    if (!family.domain_guard(i, t, q))
      throw DomainError("configuration left U(t) for constraint '" +
                        (family.name(i).empty() ? std::to_string(i)
                                                : family.name(i)) +
                        "'");
    Vec n = family.gradient(i, t, q);
    double offset = family.value(i, t, q) - n.dot(q);
    poly.rows.push_back({std::move(n), offset});
  }
  return poly;
}

Constraint half_plane(const Vec& normal, double offset, double drift,
                      std::string name) {
  Constraint c;
  c.value = [normal, offset, drift](double t, const Vec& q) {
    return normal.dot(q) + offset + drift * t;
  };
  c.gradient = [normal](double, const Vec&) { return normal; };
  c.time_derivative = [drift](double, const Vec&) { return drift; };
  c.name = std::move(name);
  return c;
}

Constraint disk_complement(const Vec& center, double radius, double margin,
                           std::string name) {
  if (margin < 0) margin = radius / 2;
  Constraint c;
  c.value = [center, radius](double, const Vec& q) {
    return (q - center).norm() - radius;
  };
  c.gradient = [center](double, const Vec& q) -> Vec {
    Vec diff = q - center;
    return diff / diff.norm();
  };
  c.time_derivative = [](double, const Vec&) { return 0.0; };
  c.guard = [center, radius, margin](double, const Vec& q) {
    return (q - center).norm() > radius - margin;
  };
  c.name = std::move(name);
  return c;
}

} // namespace sweep
