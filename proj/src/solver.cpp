#include "glfem/solver.hpp"

#include <cmath>
#include <numbers>

#include "glfem/linear_solver.hpp"

namespace glfem {

void NewtonConfig::validate() const {
  if (!(tol > 0.0)) throw ConfigError("Newton tolerance must be positive");
  if (max_iter < 1) throw ConfigError("Newton max_iter must be at least 1");
}

namespace {

bool is_symmetric(const MethodConfig& cfg) { return cfg.method == Method::Nitsche || cfg.lambda == 1.0; }

}  // namespace

NewtonResult newton_solve(const NonlinearSystem& system, const Field& guess, const NewtonConfig& ncfg) {
  ncfg.validate();
  if (!(guess.space() == system.space())) throw SpaceMismatchError("Newton guess lives on a different space");
  const MethodConfig& cfg = system.config();
  const bool symmetric = is_symmetric(cfg);

  Field psi = guess;
  NewtonReport report;
  for (int k = 0; k < ncfg.max_iter; ++k) {
    const Eigen::VectorXd r = system.residual(psi);
    const Eigen::VectorXd delta = solve_sparse(system.jacobian(psi), -r, symmetric);
    psi.coefficients() += delta;
    const double norm = discrete_norm(Field(system.space(), delta), cfg.method, cfg.sigma);
    report.iterations = k + 1;
    if (ncfg.record_history) report.increment_norms.push_back(norm);
    if (!std::isfinite(norm)) break;
    if (norm <= ncfg.tol) {
      report.converged = true;
      break;
    }
  }
  report.residual_norm = system.residual(psi).lpNorm<Eigen::Infinity>();
  if (!report.converged)
    throw NewtonDivergenceError("Newton's method did not converge in " + std::to_string(report.iterations) +
                                    " iterations",
                                std::move(report));
  return {std::move(psi), std::move(report)};
}

NewtonResult newton_solve(const Space& space, const MethodConfig& cfg, const BoundaryFunction& g,
                          const VectorFunction& f, const Field& guess, const NewtonConfig& ncfg) {
  return newton_solve(NonlinearSystem(space, cfg, g, f), guess, ncfg);
}

Field initial_guess_laplace(const NonlinearSystem& system) {
  return Field(system.space(), solve_sparse(system.diffusion(), system.load(), is_symmetric(system.config())));
}

Field initial_guess_laplace(const Space& space, const MethodConfig& cfg, const BoundaryFunction& g,
                            const VectorFunction& f) {
  return initial_guess_laplace(NonlinearSystem(space, cfg, g, f));
}

std::string to_string(DeviceState state) {
  switch (state) {
    case DeviceState::D1: return "D1";
    case DeviceState::D2: return "D2";
    case DeviceState::R1: return "R1";
    case DeviceState::R2: return "R2";
    case DeviceState::R3: return "R3";
    case DeviceState::R4: return "R4";
  }
  return "?";
}

DeviceState parse_device_state(const std::string& name) {
  for (auto s : {DeviceState::D1, DeviceState::D2, DeviceState::R1, DeviceState::R2, DeviceState::R3, DeviceState::R4})
    if (to_string(s) == name) return s;
  throw ConfigError("unknown device state '" + name + "' (expected D1, D2, R1, R2, R3 or R4)");
}

double director_angle(DeviceState state, const Point& p) {
  constexpr double pi = std::numbers::pi;
  switch (state) {
    case DeviceState::D1: return pi / 4;
    case DeviceState::D2: return 3 * pi / 4;
    case DeviceState::R1: return pi * p.y();
    case DeviceState::R2: return -pi * p.y();
    case DeviceState::R3: return pi / 2 + pi * p.x();
    case DeviceState::R4: return pi / 2 - pi * p.x();
  }
  return 0.0;
}

Field initial_guess_director(const Space& space, DeviceState state, const BoundaryFunction& g) {
  const Mesh& mesh = space.mesh();
  Field out(space);
  auto& c = out.coefficients();
  const int n = space.scalar_count();
  const auto& boundary_edge = mesh.vertex_boundary_edge();
  for (int t = 0; t < mesh.triangle_count(); ++t)
    for (int k = 0; k < 3; ++k) {
      const int v = mesh.triangle(t)[k];
      const Point& p = mesh.vertex(v);
      Vec2 value;
      if (boundary_edge[v] >= 0) {
        value = g(p, mesh.edge(boundary_edge[v]).segment);
      } else {
        const double theta = director_angle(state, p);
        value = Vec2(std::cos(2 * theta), std::sin(2 * theta));
      }
      const int s = space.scalar_dof(t, k);
      c[s] = value[0];
      c[n + s] = value[1];
    }
  return out;
}

}  // namespace glfem
