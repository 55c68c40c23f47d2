#include "glfem/error.hpp"
#include "glfem/mesh.hpp"

namespace glfem {

namespace {

MeshPtr make_mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
                  std::vector<BoundaryTag> tags) {
  auto labels = longest_edge_labels(vertices, triangles);
  return std::make_shared<const Mesh>(std::move(vertices), std::move(triangles), std::move(labels), tags);
}

// Segments: 0 bottom, 1 right, 2 top, 3 left.
MeshPtr unit_square() {
  std::vector<Point> v{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  std::vector<std::array<int, 3>> t{{0, 1, 2}, {0, 2, 3}};
  return make_mesh(std::move(v), std::move(t), {{0, 1, 0}, {1, 2, 1}, {2, 3, 2}, {3, 0, 3}});
}

// Three unit squares, each cut by the diagonal through the re-entrant corner.
// Segments run counterclockwise starting with the bottom side of the lower
// left square.
MeshPtr l_shape() {
  std::vector<Point> v{{-1, -1}, {0, -1}, {-1, 0}, {0, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}};
  std::vector<std::array<int, 3>> t{{0, 1, 3}, {0, 3, 2}, {2, 3, 5}, {3, 6, 5}, {3, 4, 7}, {3, 7, 6}};
  std::vector<BoundaryTag> tags{{0, 1, 0}, {1, 3, 1}, {3, 4, 2}, {4, 7, 3}, {7, 6, 4}, {6, 5, 4}, {5, 2, 5}, {2, 0, 5}};
  return make_mesh(std::move(v), std::move(t), std::move(tags));
}

// Diamond |x|+|y| < 1 cut along [0,1]x{0}: the four quadrant triangles, each
// split into four. Points on the slit other than the tip exist twice, once
// for the upper face (ids 1, 2) and once for the lower face (ids 14, 13).
// Segments 0..3 are the diamond sides counterclockwise from (1,0), 4 is the
// upper slit face and 5 the lower one.
MeshPtr slit_square() {
  std::vector<Point> v{{0, 0},    {0.5, 0},     {1, 0},  {0.5, 0.5},  {0, 1},      {0, 0.5},   {-0.5, 0.5}, {-1, 0},
                       {-0.5, 0}, {-0.5, -0.5}, {0, -1}, {0, -0.5},   {0.5, -0.5}, {1, 0},     {0.5, 0}};
  std::vector<std::array<int, 3>> t{
      {0, 1, 5},  {1, 2, 3},   {5, 3, 4},   {1, 3, 5},    // x > 0, y > 0
      {0, 5, 8},  {5, 4, 6},   {8, 6, 7},   {5, 6, 8},    // x < 0, y > 0
      {0, 8, 11}, {8, 7, 9},   {11, 9, 10}, {8, 9, 11},   // x < 0, y < 0
      {0, 11, 14}, {11, 10, 12}, {14, 12, 13}, {11, 12, 14}};  // x > 0, y < 0
  std::vector<BoundaryTag> tags{{2, 3, 0},  {3, 4, 0},   {4, 6, 1},   {6, 7, 1},  {7, 9, 2},  {9, 10, 2},
                                {10, 12, 3}, {12, 13, 3}, {0, 1, 4},  {1, 2, 4},  {0, 14, 5}, {14, 13, 5}};
  return make_mesh(std::move(v), std::move(t), std::move(tags));
}

}  // namespace

MeshPtr build_initial_mesh(DomainShape shape) {
  switch (shape) {
    case DomainShape::UnitSquare:
      return unit_square();
    case DomainShape::LShape:
      return l_shape();
    case DomainShape::SlitSquare:
      return slit_square();
  }
  throw ConfigError("unsupported domain shape");
}

}  // namespace glfem
