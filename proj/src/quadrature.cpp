#include "pfelast/quadrature.hpp"

#include <cmath>

namespace pfelast {

namespace {

void add_orbit3(TriangleQuadrature& q, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  q.points.push_back({b, a, a});
  q.points.push_back({a, b, a});
  q.points.push_back({a, a, b});
  q.weights.insert(q.weights.end(), 3, w);
}

void add_orbit6(TriangleQuadrature& q, double a, double b, double w) {
  const double c = 1.0 - a - b;
  q.points.push_back({a, b, c});
  q.points.push_back({a, c, b});
  q.points.push_back({b, a, c});
  q.points.push_back({b, c, a});
  q.points.push_back({c, a, b});
  q.points.push_back({c, b, a});
  q.weights.insert(q.weights.end(), 6, w);
}

TriangleQuadrature make_degree5() {
  TriangleQuadrature q;
  q.degree = 5;
  const double s = std::sqrt(15.0);
  q.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  q.weights.push_back(9.0 / 40.0);
  add_orbit3(q, (6.0 - s) / 21.0, (155.0 - s) / 1200.0);
  add_orbit3(q, (6.0 + s) / 21.0, (155.0 + s) / 1200.0);
  return q;
}

// Dunavant's degree-6 rule.
TriangleQuadrature make_degree6() {
  TriangleQuadrature q;
  q.degree = 6;
  add_orbit3(q, 0.249286745170910421291638553107, 0.116786275726379366025289611386);
  add_orbit3(q, 0.063089014491502228340331602871, 0.050844906370206816920936809107);
  add_orbit6(q, 0.053145049844816947353249671631, 0.310352451033784405416607733956,
             0.082851075618373575193553456420);
  return q;
}

} // namespace

const TriangleQuadrature& quadrature_degree5() {
  static const TriangleQuadrature rule = make_degree5();
  return rule;
}

const TriangleQuadrature& quadrature_degree6() {
  static const TriangleQuadrature rule = make_degree6();
  return rule;
}

namespace p2 {

std::array<double, kNodes> values(const std::array<double, 3>& l) {
  return {l[0] * (2.0 * l[0] - 1.0), l[1] * (2.0 * l[1] - 1.0), l[2] * (2.0 * l[2] - 1.0),
          4.0 * l[1] * l[2],         4.0 * l[2] * l[0],         4.0 * l[0] * l[1]};
}

std::array<std::array<double, 2>, kNodes> gradients(const std::array<double, 3>& l,
                                                   const std::array<std::array<double, 2>, 3>& g) {
  std::array<std::array<double, 2>, kNodes> out{};
  for (int c = 0; c < 2; ++c) {
    for (int v = 0; v < 3; ++v) out[v][c] = (4.0 * l[v] - 1.0) * g[v][c];
    out[3][c] = 4.0 * (l[1] * g[2][c] + l[2] * g[1][c]);
    out[4][c] = 4.0 * (l[2] * g[0][c] + l[0] * g[2][c]);
    out[5][c] = 4.0 * (l[0] * g[1][c] + l[1] * g[0][c]);
  }
  return out;
}

} // namespace p2

} // namespace pfelast
