#pragma once

#include <vector>

#include "glfem/geometry.hpp"

namespace glfem {

/// Symmetric rule on a triangle. Points are barycentric; weights sum to one
/// and are scaled by the triangle area at use sites.
struct TriangleRule {
  std::vector<Barycentric> points;
  std::vector<double> weights;
  int degree;
};

/// Gauss rule on [0, 1]; weights sum to one and are scaled by the edge length.
struct EdgeRule {
  std::vector<double> points;
  std::vector<double> weights;
  int degree;
};

/// Degree 4, 6 points. Integrates the quartic nonlinearity of P1 fields exactly.
const TriangleRule& triangle_rule_degree4();
/// Degree 6, 12 points. Used for error norms and the estimator volume term.
const TriangleRule& triangle_rule_degree6();
/// 3-point Gauss, degree 5.
const EdgeRule& edge_rule_gauss3();

}  // namespace glfem
