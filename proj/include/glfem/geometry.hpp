#pragma once

#include <array>
#include <functional>

#include <Eigen/Core>

namespace glfem {

using Point = Eigen::Vector2d;
/// Value of the order parameter (u, v) at a point.
using Vec2 = Eigen::Vector2d;
/// Gradient of (u, v); row c holds the gradient of component c.
using Mat2 = Eigen::Matrix2d;
/// Barycentric coordinates with respect to the three triangle vertices.
using Barycentric = std::array<double, 3>;

using VectorFunction = std::function<Vec2(const Point&)>;
using GradientFunction = std::function<Mat2(const Point&)>;

/// Dirichlet data; the segment id of the boundary piece is passed so data
/// with corner discontinuities can be evaluated unambiguously.
using BoundaryFunction = std::function<Vec2(const Point&, int segment)>;

/// A smooth 2-vector field together with its gradient.
struct AnalyticFunction {
  VectorFunction value;
  GradientFunction gradient;
};

inline double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace glfem
