#include "glfem/fespace.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "glfem/error.hpp"
#include "glfem/quadrature.hpp"

namespace glfem {

std::string to_string(Method method) { return method == Method::Nitsche ? "nitsche" : "dg"; }

Method parse_method(const std::string& name) {
  if (name == "nitsche") return Method::Nitsche;
  if (name == "dg") return Method::Dg;
  throw ConfigError("unknown method '" + name + "'");
}

Space::Space(MeshPtr mesh, SpaceKind kind) : mesh_(std::move(mesh)), kind_(kind) {
  if (!mesh_) throw ConfigError("space requires a mesh");
}

int Space::scalar_count() const {
  return kind_ == SpaceKind::ContinuousP1 ? mesh_->vertex_count() : 3 * mesh_->triangle_count();
}

int Space::scalar_dof(int t, int local) const {
  return kind_ == SpaceKind::ContinuousP1 ? mesh_->triangle(t)[local] : 3 * t + local;
}

std::array<int, 3> Space::scalar_dofs(int t) const {
  if (kind_ == SpaceKind::ContinuousP1) return mesh_->triangle(t);
  return {3 * t, 3 * t + 1, 3 * t + 2};
}

std::array<Point, 3> basis_gradients(const Mesh& mesh, int t) {
  const auto& v = mesh.triangle(t);
  const Point& p0 = mesh.vertex(v[0]);
  const Point& p1 = mesh.vertex(v[1]);
  const Point& p2 = mesh.vertex(v[2]);
  const double d = cross(p1 - p0, p2 - p0);
  return {Point((p1.y() - p2.y()) / d, (p2.x() - p1.x()) / d), Point((p2.y() - p0.y()) / d, (p0.x() - p2.x()) / d),
          Point((p0.y() - p1.y()) / d, (p1.x() - p0.x()) / d)};
}

Barycentric edge_barycentric(const Mesh& mesh, int t, int e, double s) {
  const auto& v = mesh.triangle(t);
  const auto& ed = mesh.edge(e);
  Barycentric b{0.0, 0.0, 0.0};
  bool found0 = false;
  bool found1 = false;
  for (int k = 0; k < 3; ++k) {
    if (v[k] == ed.vertices[0]) {
      b[k] = 1.0 - s;
      found0 = true;
    } else if (v[k] == ed.vertices[1]) {
      b[k] = s;
      found1 = true;
    }
  }
  if (!found0 || !found1)
    throw ConsistencyError("edge " + std::to_string(e) + " is not an edge of triangle " + std::to_string(t));
  return b;
}

Field::Field(Space space) : space_(std::move(space)), coefficients_(Eigen::VectorXd::Zero(space_.dof_count())) {}

Field::Field(Space space, Eigen::VectorXd coefficients)
    : space_(std::move(space)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != space_.dof_count())
    throw SpaceMismatchError("coefficient vector length " + std::to_string(coefficients_.size()) +
                             " does not match dof count " + std::to_string(space_.dof_count()));
}

Vec2 Field::value(int t, const Barycentric& b) const {
  const auto dofs = space_.scalar_dofs(t);
  const int n = space_.scalar_count();
  Vec2 out = Vec2::Zero();
  for (int k = 0; k < 3; ++k) {
    out[0] += b[k] * coefficients_[dofs[k]];
    out[1] += b[k] * coefficients_[n + dofs[k]];
  }
  return out;
}

Vec2 Field::vertex_value(int t, int local) const {
  const int s = space_.scalar_dof(t, local);
  return Vec2(coefficients_[s], coefficients_[space_.scalar_count() + s]);
}

Mat2 Field::gradient(int t) const {
  const auto grads = basis_gradients(space_.mesh(), t);
  const auto dofs = space_.scalar_dofs(t);
  const int n = space_.scalar_count();
  Mat2 g = Mat2::Zero();
  for (int k = 0; k < 3; ++k) {
    g.row(0) += coefficients_[dofs[k]] * grads[k].transpose();
    g.row(1) += coefficients_[n + dofs[k]] * grads[k].transpose();
  }
  return g;
}

Field& Field::operator+=(const Field& other) {
  if (!(space_ == other.space_)) throw SpaceMismatchError("adding fields on different spaces");
  coefficients_ += other.coefficients_;
  return *this;
}

Field& Field::operator-=(const Field& other) {
  if (!(space_ == other.space_)) throw SpaceMismatchError("subtracting fields on different spaces");
  coefficients_ -= other.coefficients_;
  return *this;
}

Field interpolate(const Space& space, const VectorFunction& fn) {
  Field field(space);
  auto& c = field.coefficients();
  const int n = space.scalar_count();
  const Mesh& mesh = space.mesh();
  auto assign = [&](int scalar, int vertex) {
    const Vec2 val = fn(mesh.vertex(vertex));
    if (!std::isfinite(val[0]) || !std::isfinite(val[1])) {
      std::ostringstream msg;
      msg << "non-finite value at node " << vertex << " (" << mesh.vertex(vertex).x() << ", "
          << mesh.vertex(vertex).y() << ")";
      throw DataEvaluationError(msg.str());
    }
    c[scalar] = val[0];
    c[n + scalar] = val[1];
  };
  if (space.kind() == SpaceKind::ContinuousP1) {
    for (int v = 0; v < mesh.vertex_count(); ++v) assign(v, v);
  } else {
    for (int t = 0; t < mesh.triangle_count(); ++t)
      for (int k = 0; k < 3; ++k) assign(3 * t + k, mesh.triangle(t)[k]);
  }
  return field;
}

Field embed_in_dg(const Field& continuous, const Space& dg_space) {
  if (continuous.space().kind() != SpaceKind::ContinuousP1 || dg_space.kind() != SpaceKind::DgP1 ||
      continuous.space().mesh_ptr() != dg_space.mesh_ptr())
    throw SpaceMismatchError("embed_in_dg needs a continuous field and a dG space on the same mesh");
  Field out(dg_space);
  const int n = dg_space.scalar_count();
  for (int t = 0; t < dg_space.mesh().triangle_count(); ++t)
    for (int k = 0; k < 3; ++k) {
      const Vec2 val = continuous.vertex_value(t, k);
      out.coefficients()[3 * t + k] = val[0];
      out.coefficients()[n + 3 * t + k] = val[1];
    }
  return out;
}

Field prolong(const Field& coarse, const Space& fine_space) {
  const Mesh& fine = fine_space.mesh();
  const Mesh& coarse_mesh = coarse.space().mesh();
  if (fine_space.kind() != coarse.space().kind()) throw SpaceMismatchError("prolongation between different space kinds");
  if (fine.parent_mesh_id() != coarse_mesh.id() || fine.parents().size() != static_cast<std::size_t>(fine.triangle_count()))
    throw NestingError("target mesh was not refined from the field's mesh");

  Field out(fine_space);
  auto& c = out.coefficients();
  const int n = fine_space.scalar_count();
  for (int t = 0; t < fine.triangle_count(); ++t) {
    const int parent = fine.parents()[t];
    if (parent < 0 || parent >= coarse_mesh.triangle_count()) throw NestingError("parent triangle out of range");
    for (int k = 0; k < 3; ++k) {
      const Barycentric b = coarse_mesh.barycentric(parent, fine.vertex(fine.triangle(t)[k]));
      for (double l : b)
        if (l < -1e-10 || l > 1.0 + 1e-10) throw NestingError("child vertex outside its parent triangle");
      const Vec2 val = coarse.value(parent, b);
      const int s = fine_space.scalar_dof(t, k);
      c[s] = val[0];
      c[n + s] = val[1];
    }
  }
  return out;
}

namespace {

void check_sigma(double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("penalty parameter sigma must be positive");
}

// Sum over the edges that carry penalty terms of (sigma / h_E) * int_E |jump|^2.
// `outer` supplies the exact trace subtracted on boundary edges (may be null).
double penalty_terms(const Field& field, Method method, double sigma, const VectorFunction* outer) {
  const Mesh& mesh = field.space().mesh();
  const auto& rule = edge_rule_gauss3();
  double sum = 0.0;
  for (int e = 0; e < mesh.edge_count(); ++e) {
    const Edge& ed = mesh.edge(e);
    if (!ed.is_boundary() && method == Method::Nitsche) continue;
    const double len = mesh.edge_length(e);
    const Point& a = mesh.vertex(ed.vertices[0]);
    const Point& b = mesh.vertex(ed.vertices[1]);
    double integral = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double s = rule.points[q];
      Vec2 jump = field.value(ed.left, edge_barycentric(mesh, ed.left, e, s));
      if (ed.is_boundary()) {
        if (outer) jump -= (*outer)((1.0 - s) * a + s * b);
      } else {
        jump -= field.value(ed.right, edge_barycentric(mesh, ed.right, e, s));
      }
      integral += rule.weights[q] * jump.squaredNorm();
    }
    sum += sigma / len * (len * integral);
  }
  return sum;
}

}  // namespace

double discrete_norm(const Field& field, Method method, double sigma) {
  check_sigma(sigma);
  const Mesh& mesh = field.space().mesh();
  double sum = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) sum += mesh.area(t) * field.gradient(t).squaredNorm();
  sum += penalty_terms(field, method, sigma, nullptr);
  return std::sqrt(sum);
}

double discrete_norm_error(const Field& field, const AnalyticFunction& exact, Method method, double sigma) {
  check_sigma(sigma);
  const Mesh& mesh = field.space().mesh();
  const auto& rule = triangle_rule_degree6();
  double sum = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const Mat2 gh = field.gradient(t);
    double local = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q)
      local += rule.weights[q] * (exact.gradient(mesh.point(t, rule.points[q])) - gh).squaredNorm();
    sum += mesh.area(t) * local;
  }
  sum += penalty_terms(field, method, sigma, &exact.value);
  return std::sqrt(sum);
}

double l2_norm(const Field& field) {
  const Mesh& mesh = field.space().mesh();
  const auto& rule = triangle_rule_degree4();
  double sum = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    double local = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q)
      local += rule.weights[q] * field.value(t, rule.points[q]).squaredNorm();
    sum += mesh.area(t) * local;
  }
  return std::sqrt(sum);
}

double l2_error(const Field& field, const AnalyticFunction& exact) {
  const Mesh& mesh = field.space().mesh();
  const auto& rule = triangle_rule_degree6();
  double sum = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    double local = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& b = rule.points[q];
      local += rule.weights[q] * (exact.value(mesh.point(t, b)) - field.value(t, b)).squaredNorm();
    }
    sum += mesh.area(t) * local;
  }
  return std::sqrt(sum);
}

double energy_functional(const Field& field, double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  const Mesh& mesh = field.space().mesh();
  const auto& rule = triangle_rule_degree4();
  const double inv_eps2 = 1.0 / (epsilon * epsilon);
  double sum = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    double bulk = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double m = field.value(t, rule.points[q]).squaredNorm() - 1.0;
      bulk += rule.weights[q] * m * m;
    }
    sum += mesh.area(t) * (field.gradient(t).squaredNorm() + inv_eps2 * bulk);
  }
  return sum;
}

void write_field_csv(std::ostream& os, const Field& field) {
  os << "dof_index,value\n";
  const auto old_precision = os.precision(17);
  const auto& c = field.coefficients();
  for (Eigen::Index i = 0; i < c.size(); ++i) os << i << ',' << c[i] << '\n';
  os.precision(old_precision);
}

Field read_field_csv(std::istream& is, const Space& space) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("dof_index,value", 0) != 0) throw IoError("missing field CSV header");
  Field field(space);
  std::vector<char> seen(space.dof_count(), 0);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError("malformed field CSV line: " + line);
    const long index = std::stol(line.substr(0, comma));
    if (index < 0 || index >= space.dof_count()) throw IdOutOfRangeError("dof index " + std::to_string(index));
    field.coefficients()[index] = std::stod(line.substr(comma + 1));
    seen[index] = 1;
  }
  for (char s : seen)
    if (!s) throw IoError("field CSV does not list every dof");
  return field;
}

}  // namespace glfem
