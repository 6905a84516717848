#include "proxsweep/crowd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace sweep {

namespace {

using Eigen::Vector2d;

double cross2(const Vector2d& u, const Vector2d& v) {
  return u.x() * v.y() - u.y() * v.x();
}

// Monotone chain over (node id, position); collinear points merged.
std::vector<int> convex_hull(const std::vector<int>& ids,
                             const CrowdConfiguration& config) {
  constexpr double kCollinearTol = 1e-9;
  std::vector<int> order = ids;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    Vector2d pa = config.position(a), pb = config.position(b);
    if (pa.x() != pb.x()) return pa.x() < pb.x();
    if (pa.y() != pb.y()) return pa.y() < pb.y();
    return a < b;
  });
  const auto turns_right = [&](int o, int a, int b) {
    return cross2(config.position(a) - config.position(o),
                  config.position(b) - config.position(o)) <= kCollinearTol;
  };
  std::vector<int> hull;
  for (int id : order) {
    while (hull.size() >= 2 &&
           turns_right(hull[hull.size() - 2], hull.back(), id))
      hull.pop_back();
    hull.push_back(id);
  }
  size_t lower = hull.size() + 1;
  for (auto it = order.rbegin() + 1; it != order.rend(); ++it) {
    while (hull.size() >= lower &&
           turns_right(hull[hull.size() - 2], hull.back(), *it))
      hull.pop_back();
    hull.push_back(*it);
  }
  hull.pop_back();
  return hull;
}

struct Elimination {
  std::vector<double> lambdas;
  std::vector<EliminationStep> trace;
  bool overloaded_vertex = false; // a hull vertex with > 3 contacts
};

// Runs the per-cluster eliminations on one contact graph.
Elimination run_elimination(const CrowdConfiguration& config,
                            const ContactGraph& graph, const Vec& force) {
  const int n = config.count;
  Elimination out;
  out.lambdas.assign(graph.edges.size(), 0.0);

  std::vector<bool> edge_alive(graph.edges.size(), true);
  std::vector<bool> remaining(n, false);
  std::vector<Vector2d> residual(n);
  for (int v = 0; v < n; ++v) residual[v] = force.segment<2>(2 * v);

  std::vector<int> component(n, -1);
  int components = 0;
  for (int start = 0; start < n; ++start) {
    if (component[start] >= 0 || graph.degree(start) == 0) continue;
    std::vector<int> stack{start};
    component[start] = components;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : graph.adjacency[v]) {
        int w = graph.other(e, v);
        if (component[w] < 0) {
          component[w] = components;
          stack.push_back(w);
        }
      }
    }
    ++components;
  }

  const auto alive_degree = [&](int v) {
    int d = 0;
    for (int e : graph.adjacency[v]) d += edge_alive[e] ? 1 : 0;
    return d;
  };
  const auto into = [&](int vertex, int neighbor) -> Vector2d {
    return (config.position(vertex) - config.position(neighbor)).normalized();
  };
  const auto drop_node = [&](int v) {
    remaining[v] = false;
    for (int e : graph.adjacency[v]) edge_alive[e] = false;
  };

  for (int c = 0; c < components; ++c) {
    int live = 0;
    for (int v = 0; v < n; ++v) {
      remaining[v] = component[v] == c;
      live += remaining[v] ? 1 : 0;
    }
    for (int e = 0; e < static_cast<int>(graph.edges.size()); ++e)
      edge_alive[e] = remaining[graph.edges[e].i];

    while (true) {
      // Nodes with no live contact left carry any leftover to the residual.
      for (int v = 0; v < n; ++v)
        if (remaining[v] && alive_degree(v) == 0) {
          remaining[v] = false;
          --live;
        }
      if (live <= 1) break;

      // Case 1: a single contact fixes its multiplier outright.
      int single = -1;
      for (int v = 0; v < n && single < 0; ++v)
        if (remaining[v] && alive_degree(v) == 1) single = v;
      if (single >= 0) {
        int edge = -1;
        for (int e : graph.adjacency[single])
          if (edge_alive[e]) edge = e;
        int nbr = graph.other(edge, single);
        Vector2d dir = into(single, nbr);
        double lam = residual[single].dot(dir);
        out.lambdas[edge] = lam;
        residual[nbr] += lam * dir;
        out.trace.push_back({single, 1, {nbr}, {lam}});
        drop_node(single);
        --live;
        continue;
      }

      // Case 2: hull vertex of minimal interior angle.
      std::vector<int> ids;
      for (int v = 0; v < n; ++v)
        if (remaining[v]) ids.push_back(v);
      std::vector<int> hull = convex_hull(ids, config);
      if (hull.size() < 3)
        throw DegenerateHullError("hull of an interlocked cluster collapsed");
      int vertex = -1;
      double min_angle = std::numeric_limits<double>::infinity();
      for (size_t k = 0; k < hull.size(); ++k) {
        int v = hull[k];
        Vector2d prev = config.position(hull[(k + hull.size() - 1) % hull.size()]);
        Vector2d next = config.position(hull[(k + 1) % hull.size()]);
        Vector2d a = (prev - config.position(v)).normalized();
        Vector2d b = (next - config.position(v)).normalized();
        double angle = std::acos(std::clamp(a.dot(b), -1.0, 1.0));
        if (angle < min_angle - 1e-12 ||
            (angle < min_angle + 1e-12 && v < vertex)) {
          min_angle = std::min(min_angle, angle);
          vertex = v;
        }
      }

      std::vector<int> nbr_edges;
      for (int e : graph.adjacency[vertex])
        if (edge_alive[e]) nbr_edges.push_back(e);
      if (nbr_edges.size() > 3) {
        out.overloaded_vertex = true;
        return out;
      }

      if (nbr_edges.size() == 2) {
        int na = graph.other(nbr_edges[0], vertex);
        int nb = graph.other(nbr_edges[1], vertex);
        Vector2d da = into(vertex, na), db = into(vertex, nb);
        double det = cross2(da, db);
        if (std::abs(det) < 1e-12)
          throw DegenerateHullError("contact directions collapsed at a vertex");
        double la = cross2(residual[vertex], db) / det;
        double lb = cross2(da, residual[vertex]) / det;
        out.lambdas[nbr_edges[0]] = la;
        out.lambdas[nbr_edges[1]] = lb;
        residual[na] += la * da;
        residual[nb] += lb * db;
        out.trace.push_back({vertex, 2, {na, nb}, {la, lb}});
      } else {
        // Three neighbours: zero the middle one, solve the extremes.
        std::array<int, 3> nodes;
        std::array<Vector2d, 3> dirs;
        for (int k = 0; k < 3; ++k) {
          nodes[k] = graph.other(nbr_edges[k], vertex);
          dirs[k] = into(vertex, nodes[k]);
        }
        int middle = -1;
        for (int k = 0; k < 3; ++k) {
          double s1 = cross2(dirs[k], dirs[(k + 1) % 3]);
          double s2 = cross2(dirs[k], dirs[(k + 2) % 3]);
          if (s1 * s2 < 0) middle = k;
        }
        if (middle < 0)
          throw DegenerateHullError("could not order contact directions");
        int ka = (middle + 1) % 3, kb = (middle + 2) % 3;
        double det = cross2(dirs[ka], dirs[kb]);
        if (std::abs(det) < 1e-12)
          throw DegenerateHullError("contact directions collapsed at a vertex");
        double la = cross2(residual[vertex], dirs[kb]) / det;
        double lb = cross2(dirs[ka], residual[vertex]) / det;
        out.lambdas[nbr_edges[ka]] = la;
        out.lambdas[nbr_edges[kb]] = lb;
        out.lambdas[nbr_edges[middle]] = 0.0;
        residual[nodes[ka]] += la * dirs[ka];
        residual[nodes[kb]] += lb * dirs[kb];
        out.trace.push_back(
            {vertex, 3, {nodes[ka], nodes[middle], nodes[kb]}, {la, 0.0, lb}});
      }
      drop_node(vertex);
      --live;
    }
  }
  return out;
}

} // namespace

ContactGraph build_contact_graph(const CrowdConfiguration& config, double tol) {
  ContactGraph graph;
  graph.count = config.count;
  graph.adjacency.assign(config.count, {});
  for (int i = 0; i < config.count; ++i) {
    for (int j = i + 1; j < config.count; ++j) {
      double gap = config.gap(i, j);
      if (gap > tol) continue;
      ContactEdge edge;
      edge.i = i;
      edge.j = j;
      edge.gap = gap;
      edge.unit = (config.position(j) - config.position(i)).normalized();
      edge.gradient = Vec::Zero(2 * config.count);
      edge.gradient.segment<2>(2 * i) = -edge.unit;
      edge.gradient.segment<2>(2 * j) = edge.unit;
      graph.adjacency[i].push_back(static_cast<int>(graph.edges.size()));
      graph.adjacency[j].push_back(static_cast<int>(graph.edges.size()));
      graph.edges.push_back(std::move(edge));
    }
  }
  return graph;
}

ConstraintFamily crowd_family(const CrowdConfiguration& config) {
  const int n = config.count;
  const double r = config.radius;
  if (n < 1 || r <= 0)
    throw ParameterError("crowd needs at least one disk of positive radius");
  std::vector<Constraint> constraints;
  constraints.reserve(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Constraint c;
      c.value = [i, j, r](double, const Vec& q) {
        return (q.segment<2>(2 * i) - q.segment<2>(2 * j)).norm() - 2.0 * r;
      };
      c.gradient = [i, j, n](double, const Vec& q) -> Vec {
        Vector2d diff = q.segment<2>(2 * j) - q.segment<2>(2 * i);
        Vector2d unit = diff / diff.norm();
        Vec g = Vec::Zero(2 * n);
        g.segment<2>(2 * i) = -unit;
        g.segment<2>(2 * j) = unit;
        return g;
      };
      c.time_derivative = [](double, const Vec&) { return 0.0; };
      c.guard = [i, j, r](double, const Vec& q) {
        return (q.segment<2>(2 * i) - q.segment<2>(2 * j)).norm() > r;
      };
      c.name = "contact-" + std::to_string(i) + "-" + std::to_string(j);
      constraints.push_back(std::move(c));
    }
  }
  return ConstraintFamily(2 * n, std::move(constraints), true);
}

MoreauVelocity moreau_velocity(const CrowdConfiguration& config,
                               const Vec& spontaneous) {
  if (spontaneous.size() != 2 * config.count)
    throw ParameterError("spontaneous velocity dimension mismatch");
  MoreauVelocity out;
  out.contacts = build_contact_graph(config, kTolFeas);
  std::vector<Vec> generators;
  generators.reserve(out.contacts.edges.size());
  for (const ContactEdge& e : out.contacts.edges)
    generators.push_back(-e.gradient);
  ConeDecomposition split = project_onto_cone(generators, spontaneous);
  out.actual = split.polar_part;
  out.multipliers = split.coefficients;
  return out;
}

CrowdConstants crowd_constants(int count, double radius) {
  if (count < 3)
    throw ParameterError("crowd constants need at least three disks");
  if (radius <= 0) throw ParameterError("disk radius must be positive");
  CrowdConstants c;
  const double s = std::sin(2.0 * std::numbers::pi / count);
  c.a = 3.0 / s;
  c.gamma = 3.0 * std::numbers::sqrt2 * count * std::pow(c.a, count);
  c.eta = radius / (6.0 * count) * std::pow(s / 3.0, count);
  return c;
}

MultiplierCertificate eliminate_multipliers(const CrowdConfiguration& config,
                                            const Vec& force,
                                            double contact_tol) {
  if (force.size() != 2 * config.count)
    throw ParameterError("force dimension mismatch");

  std::optional<ContactGraph> graph;
  std::optional<Elimination> elim;
  for (int attempt = 0; attempt < 2; ++attempt) {
    graph = build_contact_graph(config, contact_tol);
    elim = run_elimination(config, *graph, force);
    if (!elim->overloaded_vertex) break;
    contact_tol *= 10.0; // near-degenerate angles: widen and retry once
  }
  if (elim->overloaded_vertex)
    throw DegenerateHullError("hull vertex keeps more than three contacts");

  MultiplierCertificate cert;
  cert.edges = graph->edges;
  cert.lambdas = elim->lambdas;
  cert.trace = elim->trace;

  const double force_norm = force.norm();
  const double neg_tol = 1e-9 * (1.0 + force_norm);
  for (double& lam : cert.lambdas) {
    if (lam < -neg_tol)
      throw InfeasibleDecompositionError(
          "negative multiplier; the force lies outside the contact cone");
    lam = std::max(lam, 0.0);
  }

  Vec combo = Vec::Zero(force.size());
  for (size_t e = 0; e < cert.edges.size(); ++e)
    combo += cert.lambdas[e] * cert.edges[e].gradient;
  cert.residual = (combo - force).norm();
  if (cert.residual > 1e-6 * std::max(force_norm, 1e-30))
    throw InfeasibleDecompositionError(
        "residual " + std::to_string(cert.residual) +
        " exceeds tolerance; force not reproducible by active contacts");

  cert.bound = config.count >= 3
                   ? std::pow(crowd_constants(config.count, 1.0).a,
                              config.count) *
                         force_norm
                   : std::numeric_limits<double>::infinity();
  return cert;
}

PolydisperseBound polydisperse_bound(const std::vector<double>& radii) {
  if (radii.size() < 3)
    throw ParameterError("polydisperse bound needs at least three radii");
  double r_min = std::numeric_limits<double>::infinity();
  double r_max = 0;
  for (double r : radii) {
    if (r <= 0) throw ParameterError("radii must be positive");
    r_min = std::min(r_min, r);
    r_max = std::max(r_max, r);
  }
  if (r_min / r_max < 1e-6)
    throw ParameterError("radius ratio too extreme for the neighbour bound");

  PolydisperseBound out;
  const double ratio = r_min / (r_max + r_min);
  out.max_neighbors = static_cast<int>(
      std::floor(std::numbers::pi / std::asin(ratio) + 1e-9));
  const double s1 = std::sin(std::numbers::pi / (out.max_neighbors + 1));
  const double s2 = std::sin(2.0 * std::numbers::pi / radii.size());
  out.b = 2.0 * std::sqrt(static_cast<double>(out.max_neighbors)) /
          std::min(s1, s2);
  return out;
}

} // namespace sweep
