#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "glfem/error.hpp"
#include "glfem/mesh.hpp"

using namespace glfem;

namespace {

MeshPtr single_triangle() {
  std::vector<Point> v{{0, 0}, {1, 0}, {0, 1}};
  std::vector<std::array<int, 3>> t{{0, 1, 2}};
  auto labels = longest_edge_labels(v, t);
  return std::make_shared<const Mesh>(v, t, labels, std::vector<BoundaryTag>{});
}

int boundary_edge_count(const Mesh& m) {
  return static_cast<int>(std::count_if(m.edges().begin(), m.edges().end(), [](const Edge& e) { return e.is_boundary(); }));
}

std::vector<double> sorted_edge_lengths(const Mesh& m, int t) {
  std::vector<double> len;
  for (int e : m.triangle_edges(t)) len.push_back(m.edge_length(e));
  std::sort(len.begin(), len.end());
  return len;
}

void expect_valid(const Mesh& m) {
  const auto problems = m.check_invariants();
  EXPECT_TRUE(problems.empty()) << problems.front();
}

}  // namespace

TEST(InitialMesh, UnitSquareHasTwoTriangles) {
  auto m = build_initial_mesh(DomainShape::UnitSquare);
  EXPECT_EQ(m->triangle_count(), 2);
  EXPECT_EQ(m->vertex_count(), 4);
  EXPECT_EQ(m->edge_count(), 5);
  EXPECT_EQ(m->edge_count() - boundary_edge_count(*m), 1);
  expect_valid(*m);
}

TEST(InitialMesh, LShapeHasSixTrianglesAndEightBoundaryVertices) {
  auto m = build_initial_mesh(DomainShape::LShape);
  EXPECT_EQ(m->triangle_count(), 6);
  EXPECT_EQ(m->vertex_count(), 8);
  int on_boundary = 0;
  for (int v = 0; v < m->vertex_count(); ++v) on_boundary += m->vertex_boundary_edge()[v] >= 0;
  EXPECT_EQ(on_boundary, 8);
  EXPECT_NEAR(m->total_area(), 3.0, 1e-14);
  expect_valid(*m);
}

TEST(InitialMesh, LShapeLevelZeroHas21Vertices) {
  auto m = red_refine(*build_initial_mesh(DomainShape::LShape));
  EXPECT_EQ(2 * m->vertex_count(), 42);
  EXPECT_EQ(2 * red_refine(*m)->vertex_count(), 130);
  EXPECT_EQ(2 * red_refine(*m, 2)->vertex_count(), 450);
}

TEST(InitialMesh, SlitDuplicatesPointsOnTheSlit) {
  auto m = build_initial_mesh(DomainShape::SlitSquare);
  int copies_mid = 0, copies_end = 0;
  for (const Point& p : m->vertices()) {
    copies_mid += (p - Point(0.5, 0.0)).norm() < 1e-14;
    copies_end += (p - Point(1.0, 0.0)).norm() < 1e-14;
  }
  EXPECT_EQ(copies_mid, 2);
  EXPECT_EQ(copies_end, 2);
  EXPECT_NEAR(m->total_area(), 2.0, 1e-14);
  expect_valid(*m);

  // The slit faces are boundary edges on distinct segments.
  int upper = 0, lower = 0;
  for (const Edge& e : m->edges()) {
    if (!e.is_boundary()) continue;
    const Point mid = 0.5 * (m->vertex(e.vertices[0]) + m->vertex(e.vertices[1]));
    if (std::abs(mid.y()) > 1e-14 || mid.x() <= 0.0) continue;
    const Point n = m->edge_normal(&e - m->edges().data());
    (n.y() < 0 ? upper : lower) += 1;
    EXPECT_EQ(e.segment, n.y() < 0 ? 4 : 5);
  }
  EXPECT_EQ(upper, 2);
  EXPECT_EQ(lower, 2);
}

TEST(InitialMesh, ParsesShapeNames) {
  EXPECT_EQ(parse_domain_shape("unit-square"), DomainShape::UnitSquare);
  EXPECT_EQ(parse_domain_shape("L-shape"), DomainShape::LShape);
  EXPECT_EQ(parse_domain_shape("slit-square"), DomainShape::SlitSquare);
  EXPECT_THROW(parse_domain_shape("disc"), ConfigError);
}

TEST(Geometry, DiameterAndEdgeLength) {
  auto m = single_triangle();
  EXPECT_NEAR(m->triangle_diameter(0), std::sqrt(2.0), 1e-15);
  for (int e = 0; e < m->edge_count(); ++e) {
    const auto& v = m->edge(e).vertices;
    if (std::min(v[0], v[1]) == 0 && std::max(v[0], v[1]) == 1) EXPECT_DOUBLE_EQ(m->edge_length(e), 1.0);
  }
  EXPECT_THROW(m->edge_length(m->edge_count()), IdOutOfRangeError);
  EXPECT_THROW(m->triangle_diameter(-1), IdOutOfRangeError);
  EXPECT_THROW(m->vertex(3), IdOutOfRangeError);
}

TEST(Geometry, EdgeNormalPointsOutOfLeftTriangle) {
  auto m = red_refine(*build_initial_mesh(DomainShape::LShape));
  for (int e = 0; e < m->edge_count(); ++e) {
    const Edge& ed = m->edge(e);
    const Point mid = 0.5 * (m->vertex(ed.vertices[0]) + m->vertex(ed.vertices[1]));
    EXPECT_LT(m->edge_normal(e).dot(m->centroid(ed.left) - mid), 0.0);
    EXPECT_NEAR(m->edge_normal(e).norm(), 1.0, 1e-15);
    if (!ed.is_boundary()) EXPECT_LT(ed.left, ed.right);
  }
}

TEST(RedRefine, QuadruplesTrianglesAndHalvesDiameters) {
  auto square = build_initial_mesh(DomainShape::UnitSquare);
  EXPECT_EQ(red_refine(*square)->triangle_count(), 8);

  auto l = build_initial_mesh(DomainShape::LShape);
  auto fine = red_refine(*l);
  EXPECT_EQ(fine->triangle_count(), 24);
  EXPECT_DOUBLE_EQ(fine->max_diameter(), l->max_diameter() / 2);
  for (int t = 0; t < fine->triangle_count(); ++t)
    EXPECT_NEAR(fine->triangle_diameter(t), l->triangle_diameter(fine->parents()[t]) / 2, 1e-15);
  expect_valid(*fine);
}

TEST(RedRefine, TwiceGivesSixteenSimilarTriangles) {
  auto m = single_triangle();
  auto fine = red_refine(*m, 2);
  ASSERT_EQ(fine->triangle_count(), 16);
  const auto parent = sorted_edge_lengths(*m, 0);
  for (int t = 0; t < 16; ++t) {
    const auto child = sorted_edge_lengths(*fine, t);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(child[k] * 4, parent[k], 1e-14);
  }
}

TEST(Nvb, SingleMarkedTriangleSplitsInTwo) {
  auto m = single_triangle();
  const int marked[] = {0};
  auto fine = nvb_refine(*m, marked);
  ASSERT_EQ(fine->triangle_count(), 2);
  EXPECT_EQ(fine->vertex_count(), 4);
  const Point mid = fine->vertex(3);
  EXPECT_NEAR((mid - Point(0.5, 0.5)).norm(), 0.0, 1e-15);
  for (int t = 0; t < 2; ++t) {
    const auto& tri = fine->triangle(t);
    EXPECT_NE(std::find(tri.begin(), tri.end(), 3), tri.end());
    // The new vertex is the peak of both children.
    EXPECT_EQ(tri[fine->refinement_edge(t)], 3);
  }
  expect_valid(*fine);
}

TEST(Nvb, ClosureBisectsTheNeighbourAcrossTheDiagonal) {
  auto m = build_initial_mesh(DomainShape::UnitSquare);
  const int marked[] = {0};
  auto fine = nvb_refine(*m, marked);
  EXPECT_EQ(fine->triangle_count(), 4);
  EXPECT_EQ(fine->vertex_count(), 5);
  expect_valid(*fine);
}

TEST(Nvb, EmptyMarkingReturnsSameMesh) {
  auto m = red_refine(*build_initial_mesh(DomainShape::LShape));
  auto same = nvb_refine(*m, {});
  ASSERT_EQ(same->triangle_count(), m->triangle_count());
  ASSERT_EQ(same->vertex_count(), m->vertex_count());
  for (int t = 0; t < m->triangle_count(); ++t) EXPECT_EQ(same->triangle(t), m->triangle(t));
}

TEST(Nvb, RejectsInvalidMarks) {
  auto m = single_triangle();
  const int bad[] = {1};
  EXPECT_THROW(nvb_refine(*m, bad), IdOutOfRangeError);
}

TEST(Dump, HeaderAndLineCounts) {
  auto m = build_initial_mesh(DomainShape::UnitSquare);
  std::ostringstream os;
  m->write_dump(os);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header, "vertices 4 triangles 2 edges 5");
  int v = 0, t = 0, e = 0;
  for (std::string line; std::getline(is, line);) {
    v += line.rfind("v ", 0) == 0;
    t += line.rfind("t ", 0) == 0;
    e += line.rfind("e ", 0) == 0;
  }
  EXPECT_EQ(v, 4);
  EXPECT_EQ(t, 2);
  EXPECT_EQ(e, 5);
}

TEST(Labels, LongestEdgeTieBrokenBySmallestOppositeVertex) {
  // Right isosceles with equal legs: the hypotenuse is unique.
  std::vector<Point> v{{0, 0}, {1, 0}, {0, 1}};
  std::vector<std::array<int, 3>> tri{{0, 1, 2}};
  EXPECT_EQ(longest_edge_labels(v, tri)[0], 0);
  // Equilateral: all edges tie, so the label is the local index of vertex 0.
  std::vector<Point> w{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
  std::vector<std::array<int, 3>> eq{{2, 0, 1}};
  EXPECT_EQ(longest_edge_labels(w, eq)[0], 1);
}

// Random NVB sequences on every benchmark mesh keep the mesh conforming,
// oriented, area preserving and shape regular.
class NvbProperties : public ::testing::TestWithParam<DomainShape> {};

TEST_P(NvbProperties, RandomRefinementSequences) {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 4; ++trial) {
    MeshPtr m = build_initial_mesh(GetParam());
    const double area = m->total_area();
    const double angle_floor = m->min_angle() / 2;
    for (int step = 0; step < 6; ++step) {
      std::vector<int> marked;
      std::bernoulli_distribution pick(0.25);
      for (int t = 0; t < m->triangle_count(); ++t)
        if (pick(rng)) marked.push_back(t);
      if (marked.empty()) marked.push_back(0);
      MeshPtr next = nvb_refine(*m, marked);
      // Every marked triangle was bisected: none of its children equals it.
      std::vector<int> children(m->triangle_count(), 0);
      for (int p : next->parents()) ++children[p];
      for (int t : marked) EXPECT_GE(children[t], 2);
      m = next;
      expect_valid(*m);
      EXPECT_NEAR(m->total_area(), area, 1e-12 * area);
      EXPECT_GE(m->min_angle(), angle_floor - 1e-12);
      for (int t = 0; t < m->triangle_count(); ++t) EXPECT_GT(m->signed_area(t), 0.0);
    }
  }
}

TEST_P(NvbProperties, RedRefinementPreservesInvariants) {
  MeshPtr m = build_initial_mesh(GetParam());
  const double area = m->total_area();
  for (int k = 0; k < 3; ++k) {
    m = red_refine(*m);
    expect_valid(*m);
    EXPECT_NEAR(m->total_area(), area, 1e-12 * area);
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, NvbProperties,
                         ::testing::Values(DomainShape::UnitSquare, DomainShape::LShape, DomainShape::SlitSquare));
