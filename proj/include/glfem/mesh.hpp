#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "glfem/geometry.hpp"

namespace glfem {

enum class DomainShape { UnitSquare, LShape, SlitSquare };

std::string to_string(DomainShape shape);
DomainShape parse_domain_shape(const std::string& name);

/// Mesh edge. `left` is the adjacent triangle with the smaller id (the "+"
/// side for jumps), `right` is -1 on the boundary. `segment` labels the
/// boundary piece (-1 for interior edges).
struct Edge {
  std::array<int, 2> vertices;
  int left = -1;
  int right = -1;
  int segment = -1;

  bool is_boundary() const { return right < 0; }
};

/// Segment label for the boundary edge joining two vertices.
struct BoundaryTag {
  int a;
  int b;
  int segment;
};

/// Immutable conforming triangulation.
///
/// Triangles are stored counterclockwise. Local edge k of a triangle is the
/// edge opposite local vertex k; `refinement_edge(t)` is the local index of
/// the edge bisected by newest vertex bisection. Meshes produced by
/// refinement record the parent triangle of each child and the id of the
/// mesh they were refined from.
class Mesh {
 public:
  Mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
       std::vector<int> refinement_edges, const std::vector<BoundaryTag>& boundary_tags,
       std::vector<int> parents = {}, std::uint64_t parent_mesh_id = 0);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const Point& vertex(int v) const;
  const std::array<int, 3>& triangle(int t) const;
  const Edge& edge(int e) const;
  /// Edge ids of triangle t; entry k is opposite local vertex k.
  const std::array<int, 3>& triangle_edges(int t) const;
  int refinement_edge(int t) const;

  std::span<const Point> vertices() const { return vertices_; }
  std::span<const std::array<int, 3>> triangles() const { return triangles_; }
  std::span<const Edge> edges() const { return edges_; }

  double signed_area(int t) const;
  double area(int t) const { return signed_area(t); }
  double total_area() const;
  double edge_length(int e) const;
  /// Unit normal of edge e pointing out of its left triangle (towards the
  /// right triangle, or outward on the boundary).
  Point edge_normal(int e) const;
  /// Longest side of triangle t.
  double triangle_diameter(int t) const;
  double max_diameter() const;
  double min_angle() const;
  Point centroid(int t) const;
  Point point(int t, const Barycentric& b) const;
  /// Barycentric coordinates of p with respect to triangle t.
  Barycentric barycentric(int t, const Point& p) const;
  /// Local index (0..2) of edge e inside triangle t.
  int local_edge_index(int t, int e) const;

  /// Parent triangle in the mesh this one was refined from (empty for
  /// initial meshes).
  std::span<const int> parents() const { return parents_; }
  std::uint64_t id() const { return id_; }
  std::uint64_t parent_mesh_id() const { return parent_mesh_id_; }

  /// One boundary edge adjacent to each vertex, or -1 for interior vertices.
  const std::vector<int>& vertex_boundary_edge() const { return vertex_boundary_edge_; }

  /// Returns human readable descriptions of violated invariants (empty when
  /// the mesh is valid): edge multiplicity, hanging nodes, orientation and
  /// refinement-edge indices.
  std::vector<std::string> check_invariants() const;

  /// Plain text dump: header `vertices N triangles M edges K` followed by
  /// `v x y`, `t a b c r` and `e a b left right segment` lines.
  void write_dump(std::ostream& os) const;

 private:
  void build_edges(const std::vector<BoundaryTag>& boundary_tags);

  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<int> refinement_edges_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> triangle_edges_;
  std::vector<int> vertex_boundary_edge_;
  std::vector<int> parents_;
  std::uint64_t id_;
  std::uint64_t parent_mesh_id_;
};

using MeshPtr = std::shared_ptr<const Mesh>;

/// Coarse meshes: unit square (2 triangles), L-shape (-1,1)^2 minus
/// [0,1]x[-1,0] (6 triangles), slit diamond |x|+|y|<1 minus [0,1]x{0}
/// (16 triangles with the slit vertices duplicated).
MeshPtr build_initial_mesh(DomainShape shape);

/// Refinement edge chosen as the longest edge, ties broken by the smallest
/// opposite vertex id.
std::vector<int> longest_edge_labels(std::span<const Point> vertices,
                                     std::span<const std::array<int, 3>> triangles);

/// Splits every triangle into four similar children through edge midpoints.
MeshPtr red_refine(const Mesh& mesh);
MeshPtr red_refine(const Mesh& mesh, int times);

/// Newest vertex bisection of the marked triangles followed by the closure
/// that restores conformity. Every marked triangle is bisected at least
/// once and no triangle is split into more than four children per call.
MeshPtr nvb_refine(const Mesh& mesh, std::span<const int> marked);

}  // namespace glfem
