#pragma once

#include <array>
#include <vector>

namespace pfelast {

/// Triangle quadrature in barycentric coordinates; weights sum to 1 and
/// are scaled by the cell area at the point of use.
struct TriangleQuadrature {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int degree = 0;

  [[nodiscard]] std::size_t size() const { return weights.size(); }
};

/// 7-point rule, exact for polynomials of degree 5.
const TriangleQuadrature& quadrature_degree5();
/// 12-point rule, exact for polynomials of degree 6.
const TriangleQuadrature& quadrature_degree6();

/// Quadratic Lagrange basis on a triangle in barycentric coordinates.
/// Local nodes 0..2 are the vertices, node 3+k is the midpoint of the
/// edge opposite vertex k.
namespace p2 {

inline constexpr int kNodes = 6;

std::array<double, kNodes> values(const std::array<double, 3>& bary);

/// Gradients given the (constant) barycentric gradients of the cell.
std::array<std::array<double, 2>, kNodes> gradients(const std::array<double, 3>& bary,
                                                   const std::array<std::array<double, 2>, 3>& grad_bary);

} // namespace p2

} // namespace pfelast
