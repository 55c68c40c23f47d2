#pragma once

#include <optional>
#include <string>

#include "glfem/geometry.hpp"
#include "glfem/mesh.hpp"

namespace glfem {

enum class ProblemId { LShape, Slit, Device };

std::string to_string(ProblemId id);
ProblemId parse_problem_id(const std::string& name);

/// Data of one benchmark: -Delta Psi + 2 eps^-2 (|Psi|^2 - 1) Psi = f in the
/// domain, Psi = g on its boundary.
struct ProblemSpec {
  ProblemId id;
  DomainShape shape;
  double epsilon;
  BoundaryFunction g;
  /// Empty for the device problem (f = 0).
  VectorFunction f;
  std::optional<AnalyticFunction> exact;
  /// Uniform refinements of the coarse mesh that make up level 0.
  int base_refinements = 0;
};

/// Trapezoid: t / d on [0, d], 1 on [d, 1 - d], (1 - t) / d on [1 - d, 1].
double trapezoid(double t, double d);

/// r^alpha sin(alpha theta) and its gradient in Cartesian coordinates.
double corner_singularity(double alpha, double r, double theta);
Point corner_singularity_gradient(double alpha, double r, double theta);

/// Manufactured solution (r^(2/3) sin(2 theta / 3), r^(1/2) sin(theta / 2)) on
/// the L-shape, with theta in [0, 3 pi / 2] measured from the positive x axis
/// around the re-entrant corner at the origin.
ProblemSpec lshape_problem(double epsilon);

/// u = v = r^(1/2) sin(theta / 2) - y^2 / 2 on the slit diamond, theta in
/// [0, 2 pi) with the cut along the slit.
ProblemSpec slit_problem(double epsilon);

/// Square well device: g = (T_d(x), 0) on y = 0 and y = 1, (-T_d(y), 0) on
/// x = 0 and x = 1, with d = 3 epsilon; f = 0 and no exact solution.
ProblemSpec device_problem(double epsilon);

ProblemSpec make_problem(ProblemId id, double epsilon);

}  // namespace glfem
