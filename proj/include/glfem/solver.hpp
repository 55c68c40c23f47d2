#pragma once

#include <string>
#include <vector>

#include "glfem/error.hpp"
#include "glfem/fespace.hpp"
#include "glfem/forms.hpp"

namespace glfem {

struct NewtonConfig {
  /// Stop once the discrete norm of the increment drops to tol.
  double tol = 1e-8;
  int max_iter = 50;
  bool record_history = true;

  void validate() const;
};

struct NewtonReport {
  int iterations = 0;
  /// Discrete norm of each increment, in order (empty unless record_history).
  std::vector<double> increment_norms;
  bool converged = false;
  /// Max-norm of the residual at the returned iterate.
  double residual_norm = 0.0;
};

/// Thrown when max_iter is reached; carries the iteration history.
class NewtonDivergenceError : public SolverFailureError {
 public:
  NewtonDivergenceError(const std::string& what, NewtonReport report)
      : SolverFailureError(what), report_(std::move(report)) {}
  const NewtonReport& report() const { return report_; }

 private:
  NewtonReport report_;
};

struct NewtonResult {
  Field solution;
  NewtonReport report;
};

/// Newton's method on N(Psi; .) = 0 starting from `guess`.
NewtonResult newton_solve(const NonlinearSystem& system, const Field& guess, const NewtonConfig& ncfg);
NewtonResult newton_solve(const Space& space, const MethodConfig& cfg, const BoundaryFunction& g,
                          const VectorFunction& f, const Field& guess, const NewtonConfig& ncfg);

/// Solution of the linear problem A(Psi, Phi) = L(Phi) with the same data.
Field initial_guess_laplace(const NonlinearSystem& system);
Field initial_guess_laplace(const Space& space, const MethodConfig& cfg, const BoundaryFunction& g,
                            const VectorFunction& f);

/// Equilibrium families of the square well device.
enum class DeviceState { D1, D2, R1, R2, R3, R4 };

std::string to_string(DeviceState state);
DeviceState parse_device_state(const std::string& name);

/// Director angle of the target state at p in the unit square: constant
/// pi/4 (D1) or 3pi/4 (D2), or a half turn across the square in y (R1, R2)
/// or x (R3, R4).
double director_angle(DeviceState state, const Point& p);

/// Nodal interpolation of (cos 2 theta, sin 2 theta) with theta the state's
/// director angle; nodes on the boundary take the value of g instead.
Field initial_guess_director(const Space& space, DeviceState state, const BoundaryFunction& g);

}  // namespace glfem
