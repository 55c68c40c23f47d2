#include "glfem/quadrature.hpp"

#include <cmath>

namespace glfem {

namespace {

void add_orbit3(TriangleRule& rule, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  rule.points.push_back({a, a, b});
  rule.points.push_back({a, b, a});
  rule.points.push_back({b, a, a});
  rule.weights.insert(rule.weights.end(), 3, w);
}

void add_orbit6(TriangleRule& rule, double a, double b, double w) {
  const double c = 1.0 - a - b;
  for (const Barycentric& p : {Barycentric{a, b, c}, Barycentric{b, a, c}, Barycentric{a, c, b},
                               Barycentric{c, a, b}, Barycentric{b, c, a}, Barycentric{c, b, a}})
    rule.points.push_back(p);
  rule.weights.insert(rule.weights.end(), 6, w);
}

// Dunavant (1985) rules.
TriangleRule make_degree4() {
  TriangleRule rule;
  rule.degree = 4;
  add_orbit3(rule, 0.445948490915964886318329253883, 0.223381589678011465695007008433);
  add_orbit3(rule, 0.091576213509770743459571463402, 0.109951743655321867638326324900);
  return rule;
}

TriangleRule make_degree6() {
  TriangleRule rule;
  rule.degree = 6;
  add_orbit3(rule, 0.249286745170910421291638553107, 0.116786275726379366025289611386);
  add_orbit3(rule, 0.063089014491502228340331602871, 0.050844906370206816920936809107);
  add_orbit6(rule, 0.053145049844816947353249671631, 0.310352451033784405416607733957,
             0.082851075618373575193553456420);
  return rule;
}

EdgeRule make_gauss3() {
  const double s = std::sqrt(15.0) / 10.0;
  return EdgeRule{{0.5 - s, 0.5, 0.5 + s}, {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0}, 5};
}

}  // namespace

const TriangleRule& triangle_rule_degree4() {
  static const TriangleRule rule = make_degree4();
  return rule;
}

const TriangleRule& triangle_rule_degree6() {
  static const TriangleRule rule = make_degree6();
  return rule;
}

const EdgeRule& edge_rule_gauss3() {
  static const EdgeRule rule = make_gauss3();
  return rule;
}

}  // namespace glfem
