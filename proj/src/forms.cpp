#include "glfem/forms.hpp"

#include <cmath>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "glfem/error.hpp"
#include "glfem/quadrature.hpp"

namespace glfem {

void MethodConfig::validate() const {
  if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
  if (!(lambda >= -1.0 && lambda <= 1.0)) throw ConfigError("lambda must lie in [-1, 1]");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void require_kind(const Space& space, SpaceKind kind, const char* what) {
  if (space.kind() != kind) throw SpaceMismatchError(std::string(what) + ": wrong space kind");
}

SparseOperator from_triplets(const Space& space, const Triplets& triplets) {
  SparseOperator op(space.dof_count(), space.dof_count());
  op.setFromTriplets(triplets.begin(), triplets.end());
  return op;
}

// Adds a scalar local matrix to both components.
void scatter_blockwise(Triplets& out, const Space& space, std::span<const int> scalars,
                       const Eigen::MatrixXd& local) {
  const int n = space.scalar_count();
  for (int c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < scalars.size(); ++i)
      for (std::size_t j = 0; j < scalars.size(); ++j)
        if (local(i, j) != 0.0) out.emplace_back(c * n + scalars[i], c * n + scalars[j], local(i, j));
}

void add_stiffness(Triplets& out, const Space& space) {
  const Mesh& mesh = space.mesh();
  Eigen::MatrixXd local(3, 3);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto grads = basis_gradients(mesh, t);
    const double area = mesh.area(t);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) local(i, j) = area * grads[i].dot(grads[j]);
    const auto dofs = space.scalar_dofs(t);
    scatter_blockwise(out, space, dofs, local);
  }
}

// The traces of the basis functions of the (one or two) triangles adjacent
// to an edge, with jump sign and average weight.
struct EdgeSide {
  int triangle;
  double sign;
  double weight;
  std::array<int, 3> scalars;
  std::array<double, 3> normal_derivative;
};

std::vector<EdgeSide> edge_sides(const Space& space, int e) {
  const Mesh& mesh = space.mesh();
  const Edge& ed = mesh.edge(e);
  const Point nu = mesh.edge_normal(e);
  std::vector<EdgeSide> sides;
  const double weight = ed.is_boundary() ? 1.0 : 0.5;
  for (int t : {ed.left, ed.right}) {
    if (t < 0) continue;
    EdgeSide side{t, t == ed.left ? 1.0 : -1.0, weight, space.scalar_dofs(t), {}};
    const auto grads = basis_gradients(mesh, t);
    for (int k = 0; k < 3; ++k) side.normal_derivative[k] = grads[k].dot(nu);
    sides.push_back(side);
  }
  return sides;
}

// Edge part of a_dG (and of a_h on boundary edges, where it coincides with
// lambda = 1):
//   -<{d theta/d nu}, [phi]> - lambda <{d phi/d nu}, [theta]> + sigma/h <[theta], [phi]>.
void add_edge_terms(Triplets& out, const Space& space, int e, double sigma, double lambda) {
  const Mesh& mesh = space.mesh();
  const auto sides = edge_sides(space, e);
  const double len = mesh.edge_length(e);
  const auto& rule = edge_rule_gauss3();

  const int nloc = 3 * static_cast<int>(sides.size());
  std::vector<int> scalars(nloc);
  std::vector<double> sign(nloc), avg_dn(nloc), mean(nloc);
  Eigen::MatrixXd trace(rule.points.size(), nloc);
  for (std::size_t s = 0; s < sides.size(); ++s)
    for (int k = 0; k < 3; ++k) {
      const int i = 3 * static_cast<int>(s) + k;
      scalars[i] = sides[s].scalars[k];
      sign[i] = sides[s].sign;
      avg_dn[i] = sides[s].weight * sides[s].normal_derivative[k];
    }
  for (std::size_t q = 0; q < rule.points.size(); ++q)
    for (std::size_t s = 0; s < sides.size(); ++s) {
      const Barycentric b = edge_barycentric(mesh, sides[s].triangle, e, rule.points[q]);
      for (int k = 0; k < 3; ++k) trace(q, 3 * s + k) = b[k];
    }
  for (int i = 0; i < nloc; ++i) {
    mean[i] = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) mean[i] += rule.weights[q] * trace(q, i);
    mean[i] *= len;
  }

  Eigen::MatrixXd local(nloc, nloc);
  for (int i = 0; i < nloc; ++i)
    for (int j = 0; j < nloc; ++j) {
      double product = 0.0;
      for (std::size_t q = 0; q < rule.points.size(); ++q) product += rule.weights[q] * trace(q, i) * trace(q, j);
      product *= len;
      local(i, j) = -avg_dn[j] * sign[i] * mean[i] - lambda * avg_dn[i] * sign[j] * mean[j] +
                    sigma / len * sign[i] * sign[j] * product;
    }
  scatter_blockwise(out, space, scalars, local);
}

}  // namespace

SparseOperator assemble_nitsche_operator(const Space& space, const MethodConfig& cfg) {
  cfg.validate();
  require_kind(space, SpaceKind::ContinuousP1, "Nitsche operator");
  Triplets triplets;
  add_stiffness(triplets, space);
  const Mesh& mesh = space.mesh();
  for (int e = 0; e < mesh.edge_count(); ++e)
    if (mesh.edge(e).is_boundary()) add_edge_terms(triplets, space, e, cfg.sigma, 1.0);
  return from_triplets(space, triplets);
}

SparseOperator assemble_dg_operator(const Space& space, const MethodConfig& cfg) {
  cfg.validate();
  require_kind(space, SpaceKind::DgP1, "dG operator");
  Triplets triplets;
  add_stiffness(triplets, space);
  for (int e = 0; e < space.mesh().edge_count(); ++e) add_edge_terms(triplets, space, e, cfg.sigma, cfg.lambda);
  return from_triplets(space, triplets);
}

SparseOperator assemble_diffusion_operator(const Space& space, const MethodConfig& cfg) {
  return cfg.method == Method::Nitsche ? assemble_nitsche_operator(space, cfg) : assemble_dg_operator(space, cfg);
}

SparseOperator assemble_reaction_operator(const Space& space, const MethodConfig& cfg) {
  cfg.validate();
  const Mesh& mesh = space.mesh();
  const double scale = -2.0 / (cfg.epsilon * cfg.epsilon);
  Triplets triplets;
  Eigen::MatrixXd local(3, 3);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const double area = mesh.area(t);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) local(i, j) = scale * area * (i == j ? 2.0 : 1.0) / 12.0;
    const auto dofs = space.scalar_dofs(t);
    scatter_blockwise(triplets, space, dofs, local);
  }
  return from_triplets(space, triplets);
}

double eval_cubic_form(const Field& xi, const Field& eta, const Field& theta, const Field& phi, double epsilon) {
  if (!(xi.space() == eta.space()) || !(xi.space() == theta.space()) || !(xi.space() == phi.space()))
    throw SpaceMismatchError("cubic form arguments live on different spaces");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  const Mesh& mesh = xi.space().mesh();
  const auto& rule = triangle_rule_degree4();
  double sum = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    double local = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& b = rule.points[q];
      const Vec2 a = xi.value(t, b);
      const Vec2 e = eta.value(t, b);
      const Vec2 th = theta.value(t, b);
      const Vec2 p = phi.value(t, b);
      local += rule.weights[q] * (a.dot(e) * th.dot(p) + 2.0 * a.dot(th) * e.dot(p));
    }
    sum += mesh.area(t) * local;
  }
  return 2.0 / (3.0 * epsilon * epsilon) * sum;
}

SparseOperator assemble_cubic_linearization(const Field& xi, const Field& eta, double epsilon) {
  if (!(xi.space() == eta.space())) throw SpaceMismatchError("cubic linearization arguments live on different spaces");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  const Space& space = xi.space();
  const Mesh& mesh = space.mesh();
  const int n = space.scalar_count();
  const auto& rule = triangle_rule_degree4();
  const double scale = 2.0 / (epsilon * epsilon);
  Triplets triplets;
  triplets.reserve(36 * static_cast<std::size_t>(mesh.triangle_count()));
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    // local(b, j, a, i): test component b / basis j, trial component a / basis i.
    double local[2][3][2][3] = {};
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& bc = rule.points[q];
      const Vec2 x = xi.value(t, bc);
      const Vec2 y = eta.value(t, bc);
      const double w = rule.weights[q];
      for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a) {
          const double coupling = (a == b ? x.dot(y) : 0.0) + 2.0 * x[a] * y[b];
          for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i) local[b][j][a][i] += w * coupling * bc[i] * bc[j];
        }
    }
    const auto dofs = space.scalar_dofs(t);
    const double factor = scale * mesh.area(t);
    for (int b = 0; b < 2; ++b)
      for (int j = 0; j < 3; ++j)
        for (int a = 0; a < 2; ++a)
          for (int i = 0; i < 3; ++i)
            triplets.emplace_back(b * n + dofs[j], a * n + dofs[i], factor * local[b][j][a][i]);
  }
  return from_triplets(space, triplets);
}

Eigen::VectorXd cubic_vector(const Field& psi, double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  const Space& space = psi.space();
  const Mesh& mesh = space.mesh();
  const int n = space.scalar_count();
  const auto& rule = triangle_rule_degree4();
  const double scale = 2.0 / (epsilon * epsilon);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space.dof_count());
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto dofs = space.scalar_dofs(t);
    const double factor = scale * mesh.area(t);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& bc = rule.points[q];
      const Vec2 v = psi.value(t, bc);
      const Vec2 cubic = factor * rule.weights[q] * v.squaredNorm() * v;
      for (int i = 0; i < 3; ++i) {
        out[dofs[i]] += cubic[0] * bc[i];
        out[n + dofs[i]] += cubic[1] * bc[i];
      }
    }
  }
  return out;
}

Eigen::VectorXd assemble_load(const Space& space, const MethodConfig& cfg, const BoundaryFunction& g,
                              const VectorFunction& f) {
  cfg.validate();
  require_kind(space, cfg.space_kind(), "load vector");
  const Mesh& mesh = space.mesh();
  const int n = space.scalar_count();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space.dof_count());

  auto checked = [](const Vec2& v, const Point& p, const char* what) {
    if (!std::isfinite(v[0]) || !std::isfinite(v[1]))
      throw DataEvaluationError(std::string(what) + " is not finite at (" + std::to_string(p.x()) + ", " +
                                std::to_string(p.y()) + ")");
    return v;
  };

  if (f) {
    const auto& rule = triangle_rule_degree4();
    for (int t = 0; t < mesh.triangle_count(); ++t) {
      const auto dofs = space.scalar_dofs(t);
      const double area = mesh.area(t);
      for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const auto& bc = rule.points[q];
        const Point x = mesh.point(t, bc);
        const Vec2 val = area * rule.weights[q] * checked(f(x), x, "source");
        for (int i = 0; i < 3; ++i) {
          out[dofs[i]] += val[0] * bc[i];
          out[n + dofs[i]] += val[1] * bc[i];
        }
      }
    }
  }

  if (g) {
    const double kappa = cfg.method == Method::Nitsche ? 1.0 : cfg.lambda;
    const auto& rule = edge_rule_gauss3();
    for (int e = 0; e < mesh.edge_count(); ++e) {
      const Edge& ed = mesh.edge(e);
      if (!ed.is_boundary()) continue;
      const int t = ed.left;
      const double len = mesh.edge_length(e);
      const Point nu = mesh.edge_normal(e);
      const auto grads = basis_gradients(mesh, t);
      const auto dofs = space.scalar_dofs(t);
      const Point& a = mesh.vertex(ed.vertices[0]);
      const Point& b = mesh.vertex(ed.vertices[1]);
      for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const double s = rule.points[q];
        const Point x = (1.0 - s) * a + s * b;
        const Vec2 gv = len * rule.weights[q] * checked(g(x, ed.segment), x, "boundary data");
        const Barycentric bc = edge_barycentric(mesh, t, e, s);
        for (int i = 0; i < 3; ++i) {
          const double coeff = -kappa * grads[i].dot(nu) + cfg.sigma / len * bc[i];
          out[dofs[i]] += coeff * gv[0];
          out[n + dofs[i]] += coeff * gv[1];
        }
      }
    }
  }
  return out;
}

void write_operator(std::ostream& os, const SparseOperator& op) {
  const auto old_precision = os.precision(17);
  for (int k = 0; k < op.outerSize(); ++k)
    for (SparseOperator::InnerIterator it(op, k); it; ++it) os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
  os.precision(old_precision);
}

NonlinearSystem::NonlinearSystem(Space space, MethodConfig cfg, BoundaryFunction g, VectorFunction f)
    : space_(std::move(space)), cfg_(cfg), g_(std::move(g)), f_(std::move(f)) {
  cfg_.validate();
  require_kind(space_, cfg_.space_kind(), "nonlinear system");
  diffusion_ = assemble_diffusion_operator(space_, cfg_);
  reaction_ = assemble_reaction_operator(space_, cfg_);
  linear_part_ = diffusion_ + reaction_;
  load_ = assemble_load(space_, cfg_, g_, f_);
}

void NonlinearSystem::check(const Field& psi) const {
  if (!(psi.space() == space_)) throw SpaceMismatchError("field does not live on the system's space");
}

Eigen::VectorXd NonlinearSystem::residual(const Field& psi) const {
  check(psi);
  return linear_part_ * psi.coefficients() + cubic_vector(psi, cfg_.epsilon) - load_;
}

SparseOperator NonlinearSystem::jacobian(const Field& psi) const {
  check(psi);
  return linear_part_ + assemble_cubic_linearization(psi, psi, cfg_.epsilon);
}

Eigen::VectorXd residual(const Field& psi, const MethodConfig& cfg, const BoundaryFunction& g,
                         const VectorFunction& f) {
  return NonlinearSystem(psi.space(), cfg, g, f).residual(psi);
}

SparseOperator jacobian(const Field& psi, const MethodConfig& cfg) {
  cfg.validate();
  require_kind(psi.space(), cfg.space_kind(), "jacobian");
  SparseOperator linear = assemble_diffusion_operator(psi.space(), cfg) + assemble_reaction_operator(psi.space(), cfg);
  return linear + assemble_cubic_linearization(psi, psi, cfg.epsilon);
}

}  // namespace glfem
