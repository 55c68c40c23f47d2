#pragma once

#include <iosfwd>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "glfem/fespace.hpp"
#include "glfem/geometry.hpp"

namespace glfem {

/// Parameters shared by the Nitsche and dG discretizations.
struct MethodConfig {
  Method method = Method::Nitsche;
  /// Penalty parameter (sigma for Nitsche, sigma_dG for dG).
  double sigma = 10.0;
  /// dG symmetrization parameter in [-1, 1]; 1 gives SIPG. Ignored by Nitsche.
  double lambda = 1.0;
  double epsilon = 1.0;

  void validate() const;
  SpaceKind space_kind() const { return method == Method::Nitsche ? SpaceKind::ContinuousP1 : SpaceKind::DgP1; }
};

using SparseOperator = Eigen::SparseMatrix<double>;

/// Nitsche form a_h on each component: stiffness, the two boundary
/// consistency terms and the (sigma / h_E) boundary penalty.
SparseOperator assemble_nitsche_operator(const Space& space, const MethodConfig& cfg);

/// Interior penalty form a_dG on each component. Jumps are taken from the
/// lower-id triangle to the higher-id one; boundary edges use the single
/// trace and the outward normal.
SparseOperator assemble_dg_operator(const Space& space, const MethodConfig& cfg);

/// Dispatches on cfg.method.
SparseOperator assemble_diffusion_operator(const Space& space, const MethodConfig& cfg);

/// c(theta, phi) = -2 eps^-2 (theta, phi) on each component.
SparseOperator assemble_reaction_operator(const Space& space, const MethodConfig& cfg);

/// Quadrilinear form (2 / (3 eps^2)) int (xi.eta)(theta.phi) + 2 (xi.theta)(eta.phi).
double eval_cubic_form(const Field& xi, const Field& eta, const Field& theta, const Field& phi, double epsilon);

/// Operator of (Theta, Phi) -> 3 B(xi, eta, Theta, Phi); rows index the test
/// function. With xi = eta = Psi this is the Newton linearization of the cubic term.
SparseOperator assemble_cubic_linearization(const Field& xi, const Field& eta, double epsilon);

/// Vector of B(Psi, Psi, Psi, phi_i) = 2 eps^-2 int |Psi|^2 Psi . phi_i.
Eigen::VectorXd cubic_vector(const Field& psi, double epsilon);

/// Right-hand side: int f . phi plus the weak Dirichlet terms
/// -kappa <g, d phi / d nu> + (sigma / h_E) <g, phi> on boundary edges, with
/// kappa = 1 for Nitsche and kappa = lambda for dG.
Eigen::VectorXd assemble_load(const Space& space, const MethodConfig& cfg, const BoundaryFunction& g,
                              const VectorFunction& f);

/// Writes `row col value` lines, one per stored entry.
void write_operator(std::ostream& os, const SparseOperator& op);

/// Discrete nonlinear problem N(Psi; Phi) = A(Psi, Phi) + B(Psi, Psi, Psi, Phi)
/// + C(Psi, Phi) - L(Phi) on a fixed space. The linear operators and the
/// load vector are assembled once.
class NonlinearSystem {
 public:
  NonlinearSystem(Space space, MethodConfig cfg, BoundaryFunction g, VectorFunction f);

  const Space& space() const { return space_; }
  const MethodConfig& config() const { return cfg_; }
  const BoundaryFunction& boundary_data() const { return g_; }
  const VectorFunction& source() const { return f_; }

  const SparseOperator& diffusion() const { return diffusion_; }
  const SparseOperator& reaction() const { return reaction_; }
  const Eigen::VectorXd& load() const { return load_; }

  Eigen::VectorXd residual(const Field& psi) const;
  SparseOperator jacobian(const Field& psi) const;

 private:
  void check(const Field& psi) const;

  Space space_;
  MethodConfig cfg_;
  BoundaryFunction g_;
  VectorFunction f_;
  SparseOperator diffusion_;
  SparseOperator reaction_;
  SparseOperator linear_part_;
  Eigen::VectorXd load_;
};

/// Residual vector N(psi; phi_i) assembled from scratch.
Eigen::VectorXd residual(const Field& psi, const MethodConfig& cfg, const BoundaryFunction& g, const VectorFunction& f);
/// Jacobian A + 3 B(psi, psi, ., .) + C assembled from scratch.
SparseOperator jacobian(const Field& psi, const MethodConfig& cfg);

}  // namespace glfem
