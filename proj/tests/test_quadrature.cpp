#include <cmath>

#include <gtest/gtest.h>

#include "glfem/quadrature.hpp"

using namespace glfem;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Integral of x^a y^b over the triangle (0,0), (1,0), (0,1).
double reference_monomial(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

double apply(const TriangleRule& rule, int a, int b) {
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.points.size(); ++q)
    sum += rule.weights[q] * std::pow(rule.points[q][1], a) * std::pow(rule.points[q][2], b);
  return 0.5 * sum;
}

void expect_exact_to_degree(const TriangleRule& rule, int degree) {
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b) {
      const double exact = reference_monomial(a, b);
      EXPECT_NEAR(apply(rule, a, b), exact, 1e-14 * exact) << "x^" << a << " y^" << b;
    }
}

}  // namespace

TEST(TriangleRule, Degree4IntegratesQuarticMonomials) {
  const auto& rule = triangle_rule_degree4();
  EXPECT_EQ(rule.points.size(), 6u);
  EXPECT_EQ(rule.degree, 4);
  expect_exact_to_degree(rule, 4);
}

TEST(TriangleRule, Degree6IntegratesSexticMonomials) {
  const auto& rule = triangle_rule_degree6();
  EXPECT_EQ(rule.points.size(), 12u);
  expect_exact_to_degree(rule, 6);
}

TEST(TriangleRule, Degree4IsNotExactForDegree6) {
  // Guards against accidentally handing out the higher order rule.
  const double exact = reference_monomial(6, 0);
  EXPECT_GT(std::abs(apply(triangle_rule_degree4(), 6, 0) - exact), 1e-8);
}

TEST(TriangleRule, WeightsPositiveAndPointsInside) {
  for (const auto* rule : {&triangle_rule_degree4(), &triangle_rule_degree6()}) {
    double total = 0.0;
    for (std::size_t q = 0; q < rule->points.size(); ++q) {
      EXPECT_GT(rule->weights[q], 0.0);
      total += rule->weights[q];
      const auto& b = rule->points[q];
      EXPECT_NEAR(b[0] + b[1] + b[2], 1.0, 1e-15);
      for (double l : b) EXPECT_GT(l, 0.0);
    }
    EXPECT_NEAR(total, 1.0, 1e-15);
  }
}

TEST(EdgeRule, GaussThreeIsExactToDegreeFive) {
  const auto& rule = edge_rule_gauss3();
  EXPECT_EQ(rule.points.size(), 3u);
  for (int k = 0; k <= 5; ++k) {
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) sum += rule.weights[q] * std::pow(rule.points[q], k);
    EXPECT_NEAR(sum, 1.0 / (k + 1), 1e-15) << "s^" << k;
  }
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.points.size(); ++q) sum += rule.weights[q] * std::pow(rule.points[q], 6);
  EXPECT_GT(std::abs(sum - 1.0 / 7), 1e-6);
}
