#include "glfem/estimator.hpp"

#include <cmath>
#include <ostream>

#include "glfem/error.hpp"
#include "glfem/quadrature.hpp"

namespace glfem {

double EstimatorBreakdown::recomputed_total() const {
  double sum = 0.0;
  for (const auto* part : {&volume, &interior_edge, &boundary_edge})
    for (double v : *part) sum += v * v;
  return std::sqrt(sum);
}

namespace {

EstimatorBreakdown estimate_impl(const Field& psi, const MethodConfig& cfg, const BoundaryFunction& g,
                                 const VectorFunction& f, bool solution_jumps) {
  cfg.validate();
  const Mesh& mesh = psi.space().mesh();
  const double k = 2.0 / (cfg.epsilon * cfg.epsilon);

  EstimatorBreakdown out;
  out.mesh_id = mesh.id();
  out.volume.assign(mesh.triangle_count(), 0.0);
  out.interior_edge.assign(mesh.edge_count(), 0.0);
  out.boundary_edge.assign(mesh.edge_count(), 0.0);

  const auto& rule = triangle_rule_degree6();
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Vec2 v = psi.value(t, rule.points[q]);
      Vec2 r = -k * (v.squaredNorm() - 1.0) * v;
      if (f) r += f(mesh.point(t, rule.points[q]));
      sum += rule.weights[q] * r.squaredNorm();
    }
    const double h = mesh.triangle_diameter(t);
    out.volume[t] = std::sqrt(h * h * mesh.area(t) * sum);
  }

  const auto& edge_rule = edge_rule_gauss3();
  for (int e = 0; e < mesh.edge_count(); ++e) {
    const Edge& ed = mesh.edge(e);
    const double len = mesh.edge_length(e);
    const Point& a = mesh.vertex(ed.vertices[0]);
    const Point& b = mesh.vertex(ed.vertices[1]);
    if (ed.is_boundary()) {
      double sum = 0.0;
      for (std::size_t q = 0; q < edge_rule.points.size(); ++q) {
        const double s = edge_rule.points[q];
        const Point x = (1.0 - s) * a + s * b;
        Vec2 misfit = psi.value(ed.left, edge_barycentric(mesh, ed.left, e, s));
        if (g) misfit -= g(x, ed.segment);
        sum += edge_rule.weights[q] * misfit.squaredNorm();
      }
      out.boundary_edge[e] = std::sqrt(sum);  // (1 / h_E) * (h_E * sum)
      continue;
    }
    const Point nu = mesh.edge_normal(e);
    const Vec2 flux_jump = psi.gradient(ed.left) * nu - psi.gradient(ed.right) * nu;
    double squared = len * len * flux_jump.squaredNorm();
    if (solution_jumps) {
      double sum = 0.0;
      for (std::size_t q = 0; q < edge_rule.points.size(); ++q) {
        const double s = edge_rule.points[q];
        const Vec2 jump = psi.value(ed.left, edge_barycentric(mesh, ed.left, e, s)) -
                          psi.value(ed.right, edge_barycentric(mesh, ed.right, e, s));
        sum += edge_rule.weights[q] * jump.squaredNorm();
      }
      squared += sum;
    }
    out.interior_edge[e] = std::sqrt(squared);
  }
  out.total = out.recomputed_total();
  return out;
}

}  // namespace

EstimatorBreakdown estimate_nitsche(const Field& psi, const MethodConfig& cfg, const BoundaryFunction& g,
                                    const VectorFunction& f) {
  if (psi.space().kind() != SpaceKind::ContinuousP1)
    throw SpaceMismatchError("Nitsche estimator needs a continuous P1 field");
  return estimate_impl(psi, cfg, g, f, false);
}

EstimatorBreakdown estimate_dg(const Field& psi, const MethodConfig& cfg, const BoundaryFunction& g,
                               const VectorFunction& f) {
  if (psi.space().kind() != SpaceKind::DgP1) throw SpaceMismatchError("dG estimator needs a dG P1 field");
  return estimate_impl(psi, cfg, g, f, true);
}

EstimatorBreakdown estimate(const Field& psi, const MethodConfig& cfg, const BoundaryFunction& g,
                            const VectorFunction& f) {
  return cfg.method == Method::Nitsche ? estimate_nitsche(psi, cfg, g, f) : estimate_dg(psi, cfg, g, f);
}

void write_estimator_csv(std::ostream& os, const EstimatorBreakdown& breakdown, const Mesh& mesh) {
  if (breakdown.mesh_id != mesh.id()) throw ConsistencyError("estimator was computed on a different mesh");
  const auto old_precision = os.precision(17);
  os << "entity_kind,id,value\n";
  for (int t = 0; t < mesh.triangle_count(); ++t) os << "triangle," << t << ',' << breakdown.volume[t] << '\n';
  for (int e = 0; e < mesh.edge_count(); ++e) {
    if (mesh.edge(e).is_boundary())
      os << "boundary_edge," << e << ',' << breakdown.boundary_edge[e] << '\n';
    else
      os << "interior_edge," << e << ',' << breakdown.interior_edge[e] << '\n';
  }
  os.precision(old_precision);
}

}  // namespace glfem
