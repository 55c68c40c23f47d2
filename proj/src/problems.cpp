#include "glfem/problems.hpp"

#include <cmath>
#include <numbers>

#include "glfem/error.hpp"

namespace glfem {

namespace {

constexpr double pi = std::numbers::pi;

// Angle in [0, 2 pi).
double polar_angle(const Point& p) {
  const double a = std::atan2(p.y(), p.x());
  return a < 0.0 ? a + 2.0 * pi : a;
}

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
}

// f = -Delta Psi + 2 eps^-2 (|Psi|^2 - 1) Psi for a given -Delta Psi.
VectorFunction manufactured_source(VectorFunction value, Vec2 minus_laplacian, double epsilon) {
  const double k = 2.0 / (epsilon * epsilon);
  return [value = std::move(value), minus_laplacian, k](const Point& p) -> Vec2 {
    const Vec2 psi = value(p);
    return minus_laplacian + k * (psi.squaredNorm() - 1.0) * psi;
  };
}

}  // namespace

std::string to_string(ProblemId id) {
  switch (id) {
    case ProblemId::LShape: return "lshape";
    case ProblemId::Slit: return "slit";
    case ProblemId::Device: return "device";
  }
  return "?";
}

ProblemId parse_problem_id(const std::string& name) {
  for (auto id : {ProblemId::LShape, ProblemId::Slit, ProblemId::Device})
    if (to_string(id) == name) return id;
  throw ConfigError("unknown problem '" + name + "' (expected lshape, slit or device)");
}

double trapezoid(double t, double d) {
  if (t <= d) return t / d;
  if (t >= 1.0 - d) return (1.0 - t) / d;
  return 1.0;
}

double corner_singularity(double alpha, double r, double theta) { return std::pow(r, alpha) * std::sin(alpha * theta); }

Point corner_singularity_gradient(double alpha, double r, double theta) {
  const double scale = alpha * std::pow(r, alpha - 1.0);
  return {scale * std::sin((alpha - 1.0) * theta), scale * std::cos((alpha - 1.0) * theta)};
}

ProblemSpec lshape_problem(double epsilon) {
  require_epsilon(epsilon);
  auto value = [](const Point& p) -> Vec2 {
    const double r = p.norm();
    const double th = polar_angle(p);
    return {corner_singularity(2.0 / 3.0, r, th), corner_singularity(0.5, r, th)};
  };
  auto gradient = [](const Point& p) -> Mat2 {
    const double r = p.norm();
    const double th = polar_angle(p);
    Mat2 m;
    m.row(0) = corner_singularity_gradient(2.0 / 3.0, r, th).transpose();
    m.row(1) = corner_singularity_gradient(0.5, r, th).transpose();
    return m;
  };
  ProblemSpec spec{ProblemId::LShape, DomainShape::LShape, epsilon, {}, {}, {}, 1};
  spec.g = [value](const Point& p, int) { return value(p); };
  spec.f = manufactured_source(value, Vec2::Zero(), epsilon);
  spec.exact = AnalyticFunction{value, gradient};
  return spec;
}

ProblemSpec slit_problem(double epsilon) {
  require_epsilon(epsilon);
  auto at_angle = [](const Point& p, double th) -> Vec2 {
    const double w = corner_singularity(0.5, p.norm(), th) - 0.5 * p.y() * p.y();
    return {w, w};
  };
  auto value = [at_angle](const Point& p) { return at_angle(p, polar_angle(p)); };
  auto gradient = [](const Point& p) -> Mat2 {
    const Point grad = corner_singularity_gradient(0.5, p.norm(), polar_angle(p)) - Point(0.0, p.y());
    Mat2 m;
    m.row(0) = grad.transpose();
    m.row(1) = grad.transpose();
    return m;
  };
  ProblemSpec spec{ProblemId::Slit, DomainShape::SlitSquare, epsilon, {}, {}, {}, 1};
  // Segment 5 is the lower slit face, which is approached from theta = 2 pi.
  spec.g = [at_angle](const Point& p, int segment) {
    return at_angle(p, segment == 5 ? 2.0 * pi : polar_angle(p));
  };
  spec.f = manufactured_source(value, Vec2(1.0, 1.0), epsilon);
  spec.exact = AnalyticFunction{value, gradient};
  return spec;
}

ProblemSpec device_problem(double epsilon) {
  require_epsilon(epsilon);
  const double d = 3.0 * epsilon;
  if (d >= 0.5) throw ConfigError("device problem needs d = 3 epsilon < 1/2, got d = " + std::to_string(d));
  ProblemSpec spec{ProblemId::Device, DomainShape::UnitSquare, epsilon, {}, {}, {}, 6};
  // Segments of the unit square: 0 bottom, 1 right, 2 top, 3 left.
  spec.g = [d](const Point& p, int segment) -> Vec2 {
    if (segment == 0 || segment == 2) return {trapezoid(p.x(), d), 0.0};
    return {-trapezoid(p.y(), d), 0.0};
  };
  return spec;
}

ProblemSpec make_problem(ProblemId id, double epsilon) {
  switch (id) {
    case ProblemId::LShape: return lshape_problem(epsilon);
    case ProblemId::Slit: return slit_problem(epsilon);
    case ProblemId::Device: return device_problem(epsilon);
  }
  throw ConfigError("unknown problem");
}

}  // namespace glfem
