#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include <Eigen/Core>

#include "glfem/geometry.hpp"
#include "glfem/mesh.hpp"

namespace glfem {

enum class SpaceKind { ContinuousP1, DgP1 };

/// Discretization method; also selects the mesh dependent norm.
enum class Method { Nitsche, Dg };

std::string to_string(Method method);
Method parse_method(const std::string& name);

/// Two-component P1 space over a mesh.
///
/// Dofs are blocked by component: dof = component * scalar_count() + scalar.
/// Continuous spaces have one scalar dof per vertex; dG spaces have three per
/// triangle, numbered 3 * t + local vertex.
class Space {
 public:
  Space(MeshPtr mesh, SpaceKind kind);

  SpaceKind kind() const { return kind_; }
  const Mesh& mesh() const { return *mesh_; }
  const MeshPtr& mesh_ptr() const { return mesh_; }

  int scalar_count() const;
  int dof_count() const { return 2 * scalar_count(); }
  int scalar_dof(int t, int local) const;
  std::array<int, 3> scalar_dofs(int t) const;
  int dof(int component, int scalar) const { return component * scalar_count() + scalar; }

  friend bool operator==(const Space& a, const Space& b) { return a.mesh_ == b.mesh_ && a.kind_ == b.kind_; }

 private:
  MeshPtr mesh_;
  SpaceKind kind_;
};

/// Gradients of the three barycentric basis functions of triangle t.
std::array<Point, 3> basis_gradients(const Mesh& mesh, int t);

/// Barycentric coordinates, in triangle t, of the point at parameter s along
/// edge e (from edge.vertices[0] to edge.vertices[1]).
Barycentric edge_barycentric(const Mesh& mesh, int t, int e, double s);

/// Finite element function (u_h, v_h) on a space.
class Field {
 public:
  explicit Field(Space space);
  Field(Space space, Eigen::VectorXd coefficients);

  const Space& space() const { return space_; }
  const Eigen::VectorXd& coefficients() const { return coefficients_; }
  Eigen::VectorXd& coefficients() { return coefficients_; }

  Vec2 value(int t, const Barycentric& b) const;
  Vec2 vertex_value(int t, int local) const;
  /// Constant gradient on triangle t.
  Mat2 gradient(int t) const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator+(Field a, const Field& b) { return a += b; }

 private:
  Space space_;
  Eigen::VectorXd coefficients_;
};

/// Nodal interpolation (vertices, or per-triangle vertex copies for dG).
Field interpolate(const Space& space, const VectorFunction& fn);

/// Copies a continuous field into the dG space of the same mesh.
Field embed_in_dg(const Field& continuous, const Space& dg_space);

/// Exact representation of a coarse field on a mesh refined from it.
Field prolong(const Field& coarse, const Space& fine_space);

/// Broken H1 seminorm plus (sigma / h_E) weighted boundary (Nitsche) or
/// all-edge jump (dG) terms.
double discrete_norm(const Field& field, Method method, double sigma);
/// Same norm applied to exact - field, with the exact function integrated by
/// the degree 6 triangle rule and the 3-point edge rule.
double discrete_norm_error(const Field& field, const AnalyticFunction& exact, Method method, double sigma);

double l2_norm(const Field& field);
double l2_error(const Field& field, const AnalyticFunction& exact);

/// Integral of |grad Psi|^2 + epsilon^-2 (|Psi|^2 - 1)^2.
double energy_functional(const Field& field, double epsilon);

/// CSV with header `dof_index,value`.
void write_field_csv(std::ostream& os, const Field& field);
Field read_field_csv(std::istream& is, const Space& space);

}  // namespace glfem
