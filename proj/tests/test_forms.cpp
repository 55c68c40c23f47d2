#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "glfem/error.hpp"
#include "glfem/forms.hpp"

using namespace glfem;

namespace {

MeshPtr reference_triangle() {
  std::vector<Point> v{{0, 0}, {1, 0}, {0, 1}};
  std::vector<std::array<int, 3>> t{{0, 1, 2}};
  return std::make_shared<const Mesh>(v, t, longest_edge_labels(v, t), std::vector<BoundaryTag>{});
}

Field random_field(const Space& space, unsigned seed, double scale = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd c(space.dof_count());
  for (auto& x : c) x = u(rng);
  return Field(space, c);
}

MethodConfig config(Method method, double epsilon = 1.0, double lambda = 1.0) {
  MethodConfig cfg;
  cfg.method = method;
  cfg.epsilon = epsilon;
  cfg.lambda = lambda;
  return cfg;
}

const VectorFunction kZero = [](const Point&) { return Vec2(0, 0); };

BoundaryFunction constant_g(Vec2 value) {
  return [value](const Point&, int) { return value; };
}

Eigen::MatrixXd dense(const SparseOperator& op) { return Eigen::MatrixXd(op); }

}  // namespace

// Hand-built Nitsche matrix of the reference triangle: stiffness plus, for
// each edge, -int (dnu phi_j) phi_i - int (dnu phi_i) phi_j + sigma/|E| int phi_i phi_j.
TEST(NitscheOperator, MatchesHandComputedReferenceTriangle) {
  const double sigma = 10.0;
  Eigen::Matrix3d stiffness{{1, -0.5, -0.5}, {-0.5, 0.5, 0}, {-0.5, 0, 0.5}};
  const std::array<Point, 3> grads{Point(-1, -1), Point(1, 0), Point(0, 1)};
  struct EdgeData {
    int a, b;
    Point normal;
    double length;
  };
  const double r = std::sqrt(0.5);
  const EdgeData edges[] = {{0, 1, {0, -1}, 1.0}, {1, 2, {r, r}, std::sqrt(2.0)}, {2, 0, {-1, 0}, 1.0}};
  Eigen::Matrix3d expected = stiffness;
  for (const auto& e : edges) {
    auto on = [&](int i) { return i == e.a || i == e.b; };
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double int_i = on(i) ? e.length / 2 : 0.0;
        const double int_j = on(j) ? e.length / 2 : 0.0;
        const double int_ij = on(i) && on(j) ? e.length * (i == j ? 2.0 : 1.0) / 6 : 0.0;
        expected(i, j) += -grads[j].dot(e.normal) * int_i - grads[i].dot(e.normal) * int_j + sigma / e.length * int_ij;
      }
  }
  Space space(reference_triangle(), SpaceKind::ContinuousP1);
  const Eigen::MatrixXd a = dense(assemble_nitsche_operator(space, config(Method::Nitsche)));
  EXPECT_LT((a.topLeftCorner(3, 3) - expected).norm(), 1e-13);
  EXPECT_LT((a.bottomRightCorner(3, 3) - expected).norm(), 1e-13);
  EXPECT_LT(a.topRightCorner(3, 3).norm(), 1e-15);
}

TEST(NitscheOperator, SymmetricAndCoercive) {
  Space space(red_refine(*build_initial_mesh(DomainShape::LShape)), SpaceKind::ContinuousP1);
  const Eigen::MatrixXd a = dense(assemble_nitsche_operator(space, config(Method::Nitsche)));
  EXPECT_LT((a - a.transpose()).norm(), 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0);
}

TEST(DgOperator, SymmetricForLambdaOneAndCoercive) {
  Space space(red_refine(*build_initial_mesh(DomainShape::SlitSquare)), SpaceKind::DgP1);
  const Eigen::MatrixXd a = dense(assemble_dg_operator(space, config(Method::Dg)));
  EXPECT_LT((a - a.transpose()).norm(), 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0);
}

TEST(DgOperator, AffineInLambda) {
  Space space(build_initial_mesh(DomainShape::LShape), SpaceKind::DgP1);
  auto op = [&](double lambda) { return dense(assemble_dg_operator(space, config(Method::Dg, 1.0, lambda))); };
  const Eigen::MatrixXd a1 = op(1.0), a0 = op(0.0), am = op(-1.0);
  EXPECT_LT((a0 - 0.5 * (a1 + am)).norm(), 1e-12);
  EXPECT_GT((am - am.transpose()).norm(), 1e-3);
  // The symmetric part for lambda = -1 is stiffness plus penalty.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (am + am.transpose()));
  EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0);
}

TEST(DiffusionOperator, ComponentsDecouple) {
  auto mesh = red_refine(*build_initial_mesh(DomainShape::UnitSquare));
  for (auto method : {Method::Nitsche, Method::Dg}) {
    auto cfg = config(method);
    Space space(mesh, cfg.space_kind());
    const Eigen::MatrixXd a = dense(assemble_diffusion_operator(space, cfg));
    const int n = space.scalar_count();
    EXPECT_EQ(a.topRightCorner(n, n).norm(), 0.0);
    EXPECT_EQ(a.bottomLeftCorner(n, n).norm(), 0.0);
    EXPECT_LT((a.topLeftCorner(n, n) - a.bottomRightCorner(n, n)).norm(), 1e-14);
    EXPECT_TRUE(a.allFinite());
  }
}

TEST(DiffusionOperator, WrongSpaceKindThrows) {
  Space dg(build_initial_mesh(DomainShape::UnitSquare), SpaceKind::DgP1);
  EXPECT_THROW(assemble_nitsche_operator(dg, config(Method::Nitsche)), SpaceMismatchError);
}

TEST(MethodConfig, ValidatesRanges) {
  auto cfg = config(Method::Dg);
  cfg.sigma = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = config(Method::Dg, 1.0, 1.5);
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = config(Method::Dg, -0.1);
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(CubicForm, ConstantFieldExamples) {
  Space space(build_initial_mesh(DomainShape::UnitSquare), SpaceKind::ContinuousP1);
  auto constant = [&](double a, double b) { return interpolate(space, [=](const Point&) { return Vec2(a, b); }); };
  const Field e1 = constant(1, 0), e2 = constant(0, 1);
  EXPECT_NEAR(eval_cubic_form(e1, e1, e1, e1, 1.0), 2.0, 1e-14);
  EXPECT_NEAR(eval_cubic_form(e1, e2, e2, e1, 1.0), 0.0, 1e-14);
  EXPECT_NEAR(eval_cubic_form(e1, e1, e2, e2, 1.0), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(eval_cubic_form(e1, e1, e1, e1, 0.5), 8.0, 1e-13);
}

TEST(CubicForm, SymmetricUnderPairSwap) {
  Space space(red_refine(*build_initial_mesh(DomainShape::LShape)), SpaceKind::DgP1);
  const Field a = random_field(space, 1), b = random_field(space, 2), c = random_field(space, 3),
              d = random_field(space, 4);
  EXPECT_NEAR(eval_cubic_form(a, b, c, d, 0.3), eval_cubic_form(c, d, a, b, 0.3), 1e-10);
  EXPECT_NEAR(eval_cubic_form(a, b, c, d, 0.3), eval_cubic_form(b, a, d, c, 0.3), 1e-10);
}

TEST(CubicForm, VectorAndLinearizationMatchTheForm) {
  Space space(red_refine(*build_initial_mesh(DomainShape::SlitSquare)), SpaceKind::ContinuousP1);
  const double eps = 0.4;
  const Field psi = random_field(space, 5), theta = random_field(space, 6), phi = random_field(space, 7);
  const Eigen::VectorXd v = cubic_vector(psi, eps);
  EXPECT_NEAR(v.dot(phi.coefficients()), eval_cubic_form(psi, psi, psi, phi, eps), 1e-10);
  const SparseOperator lin = assemble_cubic_linearization(psi, psi, eps);
  EXPECT_NEAR(phi.coefficients().dot(lin * theta.coefficients()), 3 * eval_cubic_form(psi, psi, theta, phi, eps),
              1e-10);
  EXPECT_LT((dense(lin) - dense(lin).transpose()).norm(), 1e-12);
}

TEST(ReactionOperator, ConstantFieldAndEpsilonScaling) {
  Space space(build_initial_mesh(DomainShape::UnitSquare), SpaceKind::ContinuousP1);
  const Field e1 = interpolate(space, [](const Point&) { return Vec2(1, 0); });
  for (double eps : {1.0, 0.5, 0.1}) {
    const SparseOperator c = assemble_reaction_operator(space, config(Method::Nitsche, eps));
    EXPECT_NEAR(e1.coefficients().dot(c * e1.coefficients()), -2.0 / (eps * eps), 1e-11 / (eps * eps));
  }
}

TEST(Load, BoundaryTermsOfConstantData) {
  Space space(build_initial_mesh(DomainShape::UnitSquare), SpaceKind::ContinuousP1);
  const Eigen::VectorXd l = assemble_load(space, config(Method::Nitsche), constant_g({1, 0}), kZero);
  // The hats sum to one, so the consistency terms cancel and only sigma/|E| * |E| per edge remains.
  EXPECT_NEAR(l.head(4).sum(), 40.0, 1e-12);
  EXPECT_NEAR(l.tail(4).norm(), 0.0, 1e-15);
}

TEST(Load, SourceTermIntegratesTheArea) {
  auto mesh = build_initial_mesh(DomainShape::LShape);
  for (auto method : {Method::Nitsche, Method::Dg}) {
    auto cfg = config(method);
    Space space(mesh, cfg.space_kind());
    const Eigen::VectorXd l =
        assemble_load(space, cfg, constant_g({0, 0}), [](const Point&) { return Vec2(1, 0); });
    const int n = space.scalar_count();
    EXPECT_NEAR(l.head(n).sum(), 3.0, 1e-13);
    EXPECT_NEAR(l.tail(n).sum(), 0.0, 1e-14);
  }
}

TEST(Load, NonFiniteDataThrows) {
  Space space(build_initial_mesh(DomainShape::UnitSquare), SpaceKind::ContinuousP1);
  auto bad = [](const Point&, int) { return Vec2(std::nan(""), 0); };
  EXPECT_THROW(assemble_load(space, config(Method::Nitsche), bad, kZero), DataEvaluationError);
}

TEST(Residual, VanishesAtTheUnitConstantState) {
  auto mesh = red_refine(*build_initial_mesh(DomainShape::LShape));
  const Vec2 state(0.6, -0.8);
  for (auto method : {Method::Nitsche, Method::Dg}) {
    auto cfg = config(method, 0.3);
    Space space(mesh, cfg.space_kind());
    const Field psi = interpolate(space, [=](const Point&) { return state; });
    EXPECT_LT(residual(psi, cfg, constant_g(state), kZero).lpNorm<Eigen::Infinity>(), 1e-11);
  }
}

TEST(Jacobian, MatchesFiniteDifferences) {
  auto mesh = red_refine(*build_initial_mesh(DomainShape::UnitSquare));
  for (auto method : {Method::Nitsche, Method::Dg}) {
    auto cfg = config(method, 0.5, method == Method::Dg ? -1.0 : 1.0);
    Space space(mesh, cfg.space_kind());
    const auto g = constant_g({1, 0});
    const Field psi = random_field(space, 9);
    const Field dir = random_field(space, 10);
    const Eigen::VectorXd jd = jacobian(psi, cfg) * dir.coefficients();
    const double h = 1e-6;
    Field plus(space, psi.coefficients() + h * dir.coefficients());
    Field minus(space, psi.coefficients() - h * dir.coefficients());
    const Eigen::VectorXd fd = (residual(plus, cfg, g, kZero) - residual(minus, cfg, g, kZero)) / (2 * h);
    EXPECT_LT((fd - jd).norm() / jd.norm(), 1e-7);
  }
}

TEST(Residual, DgWithContinuousFieldSumsToNitsche) {
  auto mesh = red_refine(*build_initial_mesh(DomainShape::SlitSquare));
  Space cg(mesh, SpaceKind::ContinuousP1), dg(mesh, SpaceKind::DgP1);
  const Field psi = random_field(cg, 12);
  const auto g = [](const Point& p, int s) { return Vec2(p.x() + s, p.y() * p.y()); };
  const auto f = [](const Point& p) { return Vec2(std::cos(p.x()), 1.0); };
  const Eigen::VectorXd rn = residual(psi, config(Method::Nitsche, 0.7), g, f);
  const Eigen::VectorXd rd = residual(embed_in_dg(psi, dg), config(Method::Dg, 0.7), g, f);
  Eigen::VectorXd summed = Eigen::VectorXd::Zero(cg.dof_count());
  for (int t = 0; t < mesh->triangle_count(); ++t)
    for (int k = 0; k < 3; ++k)
      for (int c = 0; c < 2; ++c) summed[cg.dof(c, mesh->triangle(t)[k])] += rd[dg.dof(c, dg.scalar_dof(t, k))];
  EXPECT_LT((summed - rn).lpNorm<Eigen::Infinity>(), 1e-11 * rn.lpNorm<Eigen::Infinity>());
}

TEST(NonlinearSystem, CachedAssemblyMatchesFreeFunctions) {
  auto mesh = red_refine(*build_initial_mesh(DomainShape::LShape));
  auto cfg = config(Method::Dg, 0.4);
  Space space(mesh, cfg.space_kind());
  const auto g = constant_g({0.2, 0.3});
  NonlinearSystem sys(space, cfg, g, kZero);
  const Field psi = random_field(space, 13);
  EXPECT_LT((sys.residual(psi) - residual(psi, cfg, g, kZero)).norm(), 1e-11);
  EXPECT_LT((dense(sys.jacobian(psi)) - dense(jacobian(psi, cfg))).norm(), 1e-11);
  Field other(Space(red_refine(*mesh), cfg.space_kind()));
  EXPECT_THROW(sys.residual(other), SpaceMismatchError);
}

TEST(NonlinearSystem, ConsistentAcrossRefinementLevels) {
  // With psi and phi vanishing on the boundary the edge terms drop out and
  // every remaining integral is exact, so N(psi; phi) survives prolongation.
  auto cfg = config(Method::Nitsche, 0.8);
  const auto g = constant_g({0, 0});
  const VectorFunction f = [](const Point&) { return Vec2(1.0, -2.0); };
  MeshPtr mesh = red_refine(*build_initial_mesh(DomainShape::UnitSquare));
  const Space cs(mesh, cfg.space_kind());
  auto interior_only = [&](Field field) {
    for (int v = 0; v < mesh->vertex_count(); ++v)
      if (mesh->vertex_boundary_edge()[v] >= 0)
        for (int c = 0; c < 2; ++c) field.coefficients()[cs.dof(c, v)] = 0.0;
    return field;
  };
  Field psi = interior_only(random_field(cs, 21, 2.0));
  Field phi = interior_only(random_field(cs, 22));
  const double reference = phi.coefficients().dot(residual(psi, cfg, g, f));
  for (int level = 0; level < 3; ++level) {
    mesh = red_refine(*mesh);
    const Space fs(mesh, cfg.space_kind());
    psi = prolong(psi, fs);
    phi = prolong(phi, fs);
    EXPECT_NEAR(phi.coefficients().dot(residual(psi, cfg, g, f)), reference, 1e-11 * std::abs(reference));
  }
}

TEST(WriteOperator, OneLinePerEntry) {
  Space space(build_initial_mesh(DomainShape::UnitSquare), SpaceKind::ContinuousP1);
  SparseOperator a = assemble_nitsche_operator(space, config(Method::Nitsche));
  a.makeCompressed();
  std::ostringstream os;
  write_operator(os, a);
  std::istringstream is(os.str());
  int lines = 0;
  for (std::string line; std::getline(is, line);) ++lines;
  EXPECT_EQ(lines, a.nonZeros());
}
