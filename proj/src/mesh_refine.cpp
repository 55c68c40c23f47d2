#include <algorithm>

#include "glfem/error.hpp"
#include "glfem/mesh.hpp"

namespace glfem {

namespace {

std::vector<BoundaryTag> split_boundary_tags(const Mesh& mesh, const std::vector<int>& midpoint) {
  std::vector<BoundaryTag> tags;
  for (int e = 0; e < mesh.edge_count(); ++e) {
    const Edge& ed = mesh.edge(e);
    if (!ed.is_boundary()) continue;
    if (midpoint[e] >= 0) {
      tags.push_back({ed.vertices[0], midpoint[e], ed.segment});
      tags.push_back({midpoint[e], ed.vertices[1], ed.segment});
    } else {
      tags.push_back({ed.vertices[0], ed.vertices[1], ed.segment});
    }
  }
  return tags;
}

}  // namespace

MeshPtr red_refine(const Mesh& mesh) {
  const int nv = mesh.vertex_count();
  std::vector<Point> vertices(mesh.vertices().begin(), mesh.vertices().end());
  vertices.reserve(nv + mesh.edge_count());
  std::vector<int> midpoint(mesh.edge_count());
  for (int e = 0; e < mesh.edge_count(); ++e) {
    const Edge& ed = mesh.edge(e);
    midpoint[e] = static_cast<int>(vertices.size());
    vertices.push_back(0.5 * (mesh.vertex(ed.vertices[0]) + mesh.vertex(ed.vertices[1])));
  }

  std::vector<std::array<int, 3>> triangles;
  std::vector<int> labels;
  std::vector<int> parents;
  triangles.reserve(4 * mesh.triangle_count());
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& v = mesh.triangle(t);
    const auto& te = mesh.triangle_edges(t);
    const int ma = midpoint[te[0]];
    const int mb = midpoint[te[1]];
    const int mc = midpoint[te[2]];
    // Each child is a scaled copy of the parent with vertices in matching
    // order, so the parent's refinement edge index carries over.
    triangles.push_back({v[0], mc, mb});
    triangles.push_back({mc, v[1], ma});
    triangles.push_back({mb, ma, v[2]});
    triangles.push_back({ma, mb, mc});
    for (int c = 0; c < 4; ++c) {
      labels.push_back(mesh.refinement_edge(t));
      parents.push_back(t);
    }
  }
  return std::make_shared<const Mesh>(std::move(vertices), std::move(triangles), std::move(labels),
                                      split_boundary_tags(mesh, midpoint), std::move(parents), mesh.id());
}

MeshPtr red_refine(const Mesh& mesh, int times) {
  if (times < 0) throw ConfigError("refinement count must be non-negative");
  if (times == 0) {
    std::vector<int> none(mesh.edge_count(), -1);
    std::vector<int> labels(mesh.triangle_count());
    std::vector<int> parents(mesh.triangle_count());
    for (int t = 0; t < mesh.triangle_count(); ++t) {
      labels[t] = mesh.refinement_edge(t);
      parents[t] = t;
    }
    return std::make_shared<const Mesh>(std::vector<Point>(mesh.vertices().begin(), mesh.vertices().end()),
                                        std::vector<std::array<int, 3>>(mesh.triangles().begin(), mesh.triangles().end()),
                                        std::move(labels), split_boundary_tags(mesh, none), std::move(parents),
                                        mesh.id());
  }
  MeshPtr current = red_refine(mesh);
  for (int i = 1; i < times; ++i) current = red_refine(*current);
  return current;
}

MeshPtr nvb_refine(const Mesh& mesh, std::span<const int> marked) {
  const int ne = mesh.edge_count();
  std::vector<char> split(ne, 0);
  std::vector<int> work;
  for (int t : marked) {
    const int e = mesh.triangle_edges(t)[mesh.refinement_edge(t)];
    if (!split[e]) {
      split[e] = 1;
      work.push_back(e);
    }
  }
  // Closure: a triangle with any split edge must also split its refinement edge.
  while (!work.empty()) {
    const int e = work.back();
    work.pop_back();
    const Edge& ed = mesh.edge(e);
    for (int t : {ed.left, ed.right}) {
      if (t < 0) continue;
      const int r = mesh.triangle_edges(t)[mesh.refinement_edge(t)];
      if (!split[r]) {
        split[r] = 1;
        work.push_back(r);
      }
    }
  }

  std::vector<Point> vertices(mesh.vertices().begin(), mesh.vertices().end());
  std::vector<int> midpoint(ne, -1);
  for (int e = 0; e < ne; ++e) {
    if (!split[e]) continue;
    const Edge& ed = mesh.edge(e);
    midpoint[e] = static_cast<int>(vertices.size());
    vertices.push_back(0.5 * (mesh.vertex(ed.vertices[0]) + mesh.vertex(ed.vertices[1])));
  }

  std::vector<std::array<int, 3>> triangles;
  std::vector<int> labels;
  std::vector<int> parents;
  triangles.reserve(mesh.triangle_count() + 2 * std::count(split.begin(), split.end(), 1));
  auto emit = [&](std::array<int, 3> tri, int label, int parent) {
    triangles.push_back(tri);
    labels.push_back(label);
    parents.push_back(parent);
  };

  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& v = mesh.triangle(t);
    const auto& te = mesh.triangle_edges(t);
    const int r = mesh.refinement_edge(t);
    if (!split[te[r]]) {
      emit(v, r, t);
      continue;
    }
    // Peak p opposite the refinement edge (b, c); children keep the new
    // vertex as their peak, so their refinement edges are the old sides.
    const int p = v[r];
    const int b = v[(r + 1) % 3];
    const int c = v[(r + 2) % 3];
    const int m = midpoint[te[r]];
    const int edge_pb = te[(r + 2) % 3];
    const int edge_cp = te[(r + 1) % 3];

    if (split[edge_pb]) {
      const int m1 = midpoint[edge_pb];
      emit({m1, m, p}, 0, t);
      emit({m1, b, m}, 0, t);
    } else {
      emit({m, p, b}, 0, t);
    }
    if (split[edge_cp]) {
      const int m2 = midpoint[edge_cp];
      emit({m2, p, m}, 0, t);
      emit({m2, m, c}, 0, t);
    } else {
      emit({m, c, p}, 0, t);
    }
  }
  return std::make_shared<const Mesh>(std::move(vertices), std::move(triangles), std::move(labels),
                                      split_boundary_tags(mesh, midpoint), std::move(parents), mesh.id());
}

}  // namespace glfem
