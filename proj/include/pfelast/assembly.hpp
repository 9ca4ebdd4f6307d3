#pragma once

#include "pfelast/space.hpp"

#include <functional>

namespace pfelast {

/// Poisson ratio and the scaled Lame parameter lambda = nu / (1 - 2 nu)
/// (the first Lame parameter divided by twice the shear modulus).
struct MaterialParameters {
  double nu = 0.0;
  double lambda = 0.0;

  static MaterialParameters from_nu(double nu);
};

/// Exact displacement, its gradient and the matching body force for the
/// weak problem (eps(u), eps(v)) + lambda (div u, div v) = (f, v).
struct ManufacturedProblem {
  std::function<Eigen::Vector2d(const Point&)> displacement;
  /// Row i holds the gradient of component i.
  std::function<Eigen::Matrix2d(const Point&)> displacement_gradient;
  std::function<Eigen::Vector2d(const Point&)> body_force;

  /// u = (sin(pi x) cos(pi y), -cos(pi x) sin(pi y)). Since div u = 0 and
  /// div eps(u) = Laplace(u)/2 = -pi^2 u, the force is f = pi^2 u for every lambda.
  static ManufacturedProblem trigonometric();
  /// u = 0, f = 0.
  static ManufacturedProblem zero();
};

struct PressureMass {
  SparseOperator mass;
  /// Diagonal realization of the L2 projection onto the pressure space:
  /// the exact mass for P0, the mass diagonal for P1.
  Vector diagonal;
};

/// Full-space operators before boundary conditions.
struct AssembledSystem {
  std::shared_ptr<const DofSpace> velocity;
  std::shared_ptr<const DofSpace> pressure;
  SparseOperator A;   ///< (eps(phi_j), eps(phi_i))
  SparseOperator B;   ///< (div phi_j, psi_k), pressure rows
  SparseOperator MQ;  ///< pressure mass
  Vector D;           ///< diagonal stand-in for MQ
  Vector rhs;         ///< (f, phi_i)
};

SparseOperator assemble_epsilon_stiffness(const DofSpace& velocity);
SparseOperator assemble_div(const DofSpace& velocity, const DofSpace& pressure);
PressureMass assemble_pressure_mass(const DofSpace& pressure);
/// Scalar P2 mass matrix.
SparseOperator assemble_scalar_mass(const DofSpace& space);
Vector assemble_load(const ManufacturedProblem& problem, const DofSpace& velocity);

AssembledSystem assemble_system(std::shared_ptr<const Mesh> mesh, ElementKind pressure_kind,
                                const ManufacturedProblem& problem);

/// (A + lambda B^T D^-1 B) v without forming the product.
Vector apply_lambda_operator(const SparseOperator& A, const SparseOperator& B, const Vector& D,
                             double lambda, const Vector& v);
/// Explicit sparse A + lambda B^T D^-1 B.
SparseOperator assemble_lambda_matrix(const SparseOperator& A, const SparseOperator& B, const Vector& D,
                                      double lambda);

/// Nodal interpolant of a vector field into a P2 vector space.
Vector interpolate(const std::function<Eigen::Vector2d(const Point&)>& field, const DofSpace& velocity);

struct ErrorNorms {
  double l2 = 0.0;
  double h1_seminorm = 0.0;
};

/// Errors of a full P2 vector coefficient vector against the exact displacement.
ErrorNorms compute_errors(const Vector& coefficients, const DofSpace& velocity,
                          const ManufacturedProblem& problem);

namespace detail {

struct CellGeometry {
  double area;
  std::array<Point, 3> vertices;
  std::array<std::array<double, 2>, 3> grad_bary;

  [[nodiscard]] Point map(const std::array<double, 3>& bary) const {
    return bary[0] * vertices[0] + bary[1] * vertices[1] + bary[2] * vertices[2];
  }
};

CellGeometry cell_geometry(const Mesh& mesh, int cell);

} // namespace detail

} // namespace pfelast
