#include "glfem/mesh.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "glfem/error.hpp"

namespace glfem {

namespace {

std::atomic<std::uint64_t> next_mesh_id{1};

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

std::string to_string(DomainShape shape) {
  switch (shape) {
    case DomainShape::UnitSquare:
      return "unit-square";
    case DomainShape::LShape:
      return "L-shape";
    case DomainShape::SlitSquare:
      return "slit-square";
  }
  return "unknown";
}

DomainShape parse_domain_shape(const std::string& name) {
  if (name == "unit-square") return DomainShape::UnitSquare;
  if (name == "L-shape" || name == "lshape") return DomainShape::LShape;
  if (name == "slit-square" || name == "slit") return DomainShape::SlitSquare;
  throw ConfigError("unknown domain shape '" + name + "'");
}

Mesh::Mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
           std::vector<int> refinement_edges, const std::vector<BoundaryTag>& boundary_tags,
           std::vector<int> parents, std::uint64_t parent_mesh_id)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      refinement_edges_(std::move(refinement_edges)),
      parents_(std::move(parents)),
      id_(next_mesh_id.fetch_add(1)),
      parent_mesh_id_(parent_mesh_id) {
  if (refinement_edges_.size() != triangles_.size())
    throw ConfigError("refinement edge list does not match triangle count");
  if (!parents_.empty() && parents_.size() != triangles_.size())
    throw ConfigError("parent list does not match triangle count");
  const int nv = vertex_count();
  for (const auto& tri : triangles_)
    for (int v : tri)
      if (v < 0 || v >= nv) throw IdOutOfRangeError("triangle references vertex " + std::to_string(v));
  build_edges(boundary_tags);
}

void Mesh::build_edges(const std::vector<BoundaryTag>& boundary_tags) {
  struct HalfEdge {
    std::uint64_t key;
    int tri;
    int local;
  };
  std::vector<HalfEdge> half;
  half.reserve(3 * triangles_.size());
  for (int t = 0; t < triangle_count(); ++t) {
    const auto& v = triangles_[t];
    for (int k = 0; k < 3; ++k) half.push_back({edge_key(v[(k + 1) % 3], v[(k + 2) % 3]), t, k});
  }
  std::sort(half.begin(), half.end(), [](const HalfEdge& a, const HalfEdge& b) {
    return a.key != b.key ? a.key < b.key : a.tri < b.tri;
  });

  std::unordered_map<std::uint64_t, int> segment_of;
  segment_of.reserve(boundary_tags.size());
  for (const auto& tag : boundary_tags) segment_of[edge_key(tag.a, tag.b)] = tag.segment;

  triangle_edges_.assign(triangles_.size(), {-1, -1, -1});
  edges_.clear();
  edges_.reserve(half.size() / 2 + 1);
  for (std::size_t i = 0; i < half.size();) {
    std::size_t j = i;
    while (j < half.size() && half[j].key == half[i].key) ++j;
    if (j - i > 2) throw ConfigError("non-manifold edge shared by more than two triangles");
    Edge e;
    const auto& tri = triangles_[half[i].tri];
    const int k = half[i].local;
    e.vertices = {tri[(k + 1) % 3], tri[(k + 2) % 3]};
    e.left = half[i].tri;
    const int id = static_cast<int>(edges_.size());
    triangle_edges_[half[i].tri][half[i].local] = id;
    if (j - i == 2) {
      e.right = half[i + 1].tri;
      triangle_edges_[half[i + 1].tri][half[i + 1].local] = id;
    } else {
      auto it = segment_of.find(half[i].key);
      e.segment = it == segment_of.end() ? 0 : it->second;
    }
    edges_.push_back(e);
    i = j;
  }

  vertex_boundary_edge_.assign(vertices_.size(), -1);
  for (int e = 0; e < edge_count(); ++e)
    if (edges_[e].is_boundary())
      for (int v : edges_[e].vertices)
        if (vertex_boundary_edge_[v] < 0) vertex_boundary_edge_[v] = e;
}

const Point& Mesh::vertex(int v) const {
  if (v < 0 || v >= vertex_count()) throw IdOutOfRangeError("vertex id " + std::to_string(v) + " out of range");
  return vertices_[v];
}

const std::array<int, 3>& Mesh::triangle(int t) const {
  if (t < 0 || t >= triangle_count())
    throw IdOutOfRangeError("triangle id " + std::to_string(t) + " out of range");
  return triangles_[t];
}

const Edge& Mesh::edge(int e) const {
  if (e < 0 || e >= edge_count()) throw IdOutOfRangeError("edge id " + std::to_string(e) + " out of range");
  return edges_[e];
}

const std::array<int, 3>& Mesh::triangle_edges(int t) const {
  triangle(t);
  return triangle_edges_[t];
}

int Mesh::refinement_edge(int t) const {
  triangle(t);
  return refinement_edges_[t];
}

double Mesh::signed_area(int t) const {
  const auto& v = triangle(t);
  return 0.5 * cross(vertices_[v[1]] - vertices_[v[0]], vertices_[v[2]] - vertices_[v[0]]);
}

double Mesh::total_area() const {
  double sum = 0.0;
  for (int t = 0; t < triangle_count(); ++t) sum += signed_area(t);
  return sum;
}

double Mesh::edge_length(int e) const {
  const auto& ed = edge(e);
  return (vertices_[ed.vertices[1]] - vertices_[ed.vertices[0]]).norm();
}

Point Mesh::edge_normal(int e) const {
  const auto& ed = edge(e);
  const Point& a = vertices_[ed.vertices[0]];
  const Point d = vertices_[ed.vertices[1]] - a;
  Point n(d.y(), -d.x());
  n /= n.norm();
  if (n.dot(centroid(ed.left) - a) > 0.0) n = -n;
  return n;
}

double Mesh::triangle_diameter(int t) const {
  const auto& v = triangle(t);
  const Point& a = vertices_[v[0]];
  const Point& b = vertices_[v[1]];
  const Point& c = vertices_[v[2]];
  return std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
}

double Mesh::max_diameter() const {
  double h = 0.0;
  for (int t = 0; t < triangle_count(); ++t) h = std::max(h, triangle_diameter(t));
  return h;
}

double Mesh::min_angle() const {
  double smallest = std::numbers::pi;
  for (const auto& v : triangles_) {
    for (int k = 0; k < 3; ++k) {
      const Point& p = vertices_[v[k]];
      const Point a = vertices_[v[(k + 1) % 3]] - p;
      const Point b = vertices_[v[(k + 2) % 3]] - p;
      smallest = std::min(smallest, std::atan2(std::abs(cross(a, b)), a.dot(b)));
    }
  }
  return smallest;
}

Point Mesh::centroid(int t) const {
  const auto& v = triangle(t);
  return (vertices_[v[0]] + vertices_[v[1]] + vertices_[v[2]]) / 3.0;
}

Point Mesh::point(int t, const Barycentric& b) const {
  const auto& v = triangle(t);
  return b[0] * vertices_[v[0]] + b[1] * vertices_[v[1]] + b[2] * vertices_[v[2]];
}

Barycentric Mesh::barycentric(int t, const Point& p) const {
  const auto& v = triangle(t);
  const Point& a = vertices_[v[0]];
  const Point& b = vertices_[v[1]];
  const Point& c = vertices_[v[2]];
  const double twice_area = cross(b - a, c - a);
  const double l1 = cross(p - a, c - a) / twice_area;
  const double l2 = cross(b - a, p - a) / twice_area;
  return {1.0 - l1 - l2, l1, l2};
}

int Mesh::local_edge_index(int t, int e) const {
  const auto& te = triangle_edges(t);
  for (int k = 0; k < 3; ++k)
    if (te[k] == e) return k;
  throw ConsistencyError("edge " + std::to_string(e) + " is not an edge of triangle " + std::to_string(t));
}

std::vector<std::string> Mesh::check_invariants() const {
  std::vector<std::string> problems;
  for (int t = 0; t < triangle_count(); ++t) {
    if (!(signed_area(t) > 0.0)) problems.push_back("triangle " + std::to_string(t) + " is not counterclockwise");
    if (refinement_edges_[t] < 0 || refinement_edges_[t] > 2)
      problems.push_back("triangle " + std::to_string(t) + " has an invalid refinement edge");
    for (int k = 0; k < 3; ++k) {
      const Edge& e = edges_[triangle_edges_[t][k]];
      if (e.left != t && e.right != t)
        problems.push_back("triangle " + std::to_string(t) + " is not adjacent to its edge");
    }
  }

  // A hanging node m on a boundary-looking edge (a, b) shows up as two further
  // one-sided edges (a, m) and (m, b) with m strictly inside [a, b].
  std::unordered_set<std::uint64_t> boundary;
  std::unordered_map<int, std::vector<int>> neighbours;
  for (const auto& e : edges_) {
    if (!e.is_boundary()) continue;
    boundary.insert(edge_key(e.vertices[0], e.vertices[1]));
    neighbours[e.vertices[0]].push_back(e.vertices[1]);
    neighbours[e.vertices[1]].push_back(e.vertices[0]);
  }
  for (const auto& e : edges_) {
    if (!e.is_boundary()) continue;
    const int a = e.vertices[0];
    const int b = e.vertices[1];
    const Point& pa = vertices_[a];
    const Point d = vertices_[b] - pa;
    for (int m : neighbours[a]) {
      if (m == b || !boundary.contains(edge_key(m, b))) continue;
      const Point q = vertices_[m] - pa;
      const double s = q.dot(d) / d.squaredNorm();
      if (std::abs(cross(d, q)) <= 1e-12 * d.squaredNorm() && s > 0.0 && s < 1.0) {
        std::ostringstream msg;
        msg << "hanging vertex " << m << " on edge (" << a << ", " << b << ")";
        problems.push_back(msg.str());
      }
    }
  }

  std::vector<char> used(vertices_.size(), 0);
  for (const auto& tri : triangles_)
    for (int v : tri) used[v] = 1;
  for (std::size_t v = 0; v < used.size(); ++v)
    if (!used[v]) problems.push_back("vertex " + std::to_string(v) + " belongs to no triangle");
  return problems;
}

void Mesh::write_dump(std::ostream& os) const {
  os << "vertices " << vertex_count() << " triangles " << triangle_count() << " edges " << edge_count() << '\n';
  const auto old_precision = os.precision(17);
  for (const auto& p : vertices_) os << "v " << p.x() << ' ' << p.y() << '\n';
  for (int t = 0; t < triangle_count(); ++t) {
    const auto& v = triangles_[t];
    os << "t " << v[0] << ' ' << v[1] << ' ' << v[2] << ' ' << refinement_edges_[t] << '\n';
  }
  for (const auto& e : edges_)
    os << "e " << e.vertices[0] << ' ' << e.vertices[1] << ' ' << e.left << ' ' << e.right << ' ' << e.segment
       << '\n';
  os.precision(old_precision);
}

std::vector<int> longest_edge_labels(std::span<const Point> vertices,
                                     std::span<const std::array<int, 3>> triangles) {
  std::vector<int> labels;
  labels.reserve(triangles.size());
  for (const auto& v : triangles) {
    int best = 0;
    double best_len = -1.0;
    for (int k = 0; k < 3; ++k) {
      const double len = (vertices[v[(k + 1) % 3]] - vertices[v[(k + 2) % 3]]).norm();
      const bool longer = len > best_len * (1.0 + 1e-12);
      const bool tie = !longer && len >= best_len * (1.0 - 1e-12);
      if (longer || (tie && v[k] < v[best])) {
        best = k;
        best_len = std::max(len, best_len);
      }
    }
    labels.push_back(best);
  }
  return labels;
}

}  // namespace glfem
