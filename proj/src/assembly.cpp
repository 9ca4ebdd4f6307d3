#include "pfelast/assembly.hpp"

#include "pfelast/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pfelast {

using std::numbers::pi;

MaterialParameters MaterialParameters::from_nu(double nu) {
  if (!(nu >= 0.0 && nu < 0.5))
    throw std::invalid_argument("MaterialParameters: Poisson ratio must lie in [0, 0.5), got " +
                                std::to_string(nu));
  return {nu, nu / (1.0 - 2.0 * nu)};
}

ManufacturedProblem ManufacturedProblem::trigonometric() {
  ManufacturedProblem p;
  p.displacement = [](const Point& x) {
    return Eigen::Vector2d(std::sin(pi * x.x()) * std::cos(pi * x.y()),
                           -std::cos(pi * x.x()) * std::sin(pi * x.y()));
  };
  p.displacement_gradient = [](const Point& x) {
    const double sx = std::sin(pi * x.x()), cx = std::cos(pi * x.x());
    const double sy = std::sin(pi * x.y()), cy = std::cos(pi * x.y());
    Eigen::Matrix2d g;
    g << pi * cx * cy, -pi * sx * sy,
         pi * sx * sy, -pi * cx * cy;
    return g;
  };
  p.body_force = [](const Point& x) {
    return Eigen::Vector2d(pi * pi * std::sin(pi * x.x()) * std::cos(pi * x.y()),
                           -pi * pi * std::cos(pi * x.x()) * std::sin(pi * x.y()));
  };
  return p;
}

ManufacturedProblem ManufacturedProblem::zero() {
  ManufacturedProblem p;
  p.displacement = [](const Point&) { return Eigen::Vector2d::Zero().eval(); };
  p.displacement_gradient = [](const Point&) { return Eigen::Matrix2d::Zero().eval(); };
  p.body_force = [](const Point&) { return Eigen::Vector2d::Zero().eval(); };
  return p;
}

namespace detail {

CellGeometry cell_geometry(const Mesh& mesh, int cell) {
  CellGeometry g{};
  const auto& c = mesh.cells[static_cast<std::size_t>(cell)];
  for (int k = 0; k < 3; ++k) g.vertices[k] = mesh.vertices[static_cast<std::size_t>(c[k])];
  const Point& p0 = g.vertices[0];
  const Point& p1 = g.vertices[1];
  const Point& p2 = g.vertices[2];
  const double det = (p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y());
  g.area = 0.5 * det;
  g.grad_bary[0] = {(p1.y() - p2.y()) / det, (p2.x() - p1.x()) / det};
  g.grad_bary[1] = {(p2.y() - p0.y()) / det, (p0.x() - p2.x()) / det};
  g.grad_bary[2] = {(p0.y() - p1.y()) / det, (p1.x() - p0.x()) / det};
  return g;
}

} // namespace detail

namespace {

using Triplets = std::vector<Eigen::Triplet<double, int>>;

void require_vector_space(const DofSpace& space, const char* who) {
  if (space.kind() != ElementKind::P2Vector)
    throw std::invalid_argument(std::string(who) + ": velocity space must be P2 vector");
}

void require_pressure_space(const DofSpace& space, const char* who) {
  if (space.kind() != ElementKind::P0 && space.kind() != ElementKind::P1)
    throw std::invalid_argument(std::string(who) + ": pressure space must be P0 or P1");
}

std::array<double, 3> pressure_values(ElementKind kind, const std::array<double, 3>& bary) {
  if (kind == ElementKind::P0) return {1.0, 0.0, 0.0};
  return bary;
}

SparseOperator from_triplets(int rows, int cols, const Triplets& triplets) {
  SparseOperator m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

} // namespace

SparseOperator assemble_epsilon_stiffness(const DofSpace& velocity) {
  require_vector_space(velocity, "assemble_epsilon_stiffness");
  const Mesh& mesh = velocity.mesh();
  const auto& quad = quadrature_degree5();
  Triplets triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.num_cells()) * 144);

  for (int cell = 0; cell < mesh.num_cells(); ++cell) {
    const auto geo = detail::cell_geometry(mesh, cell);
    Eigen::Matrix<double, 12, 12> local = Eigen::Matrix<double, 12, 12>::Zero();
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const double w = quad.weights[q] * geo.area;
      const auto grads = p2::gradients(quad.points[q], geo.grad_bary);
      for (int i = 0; i < 12; ++i) {
        const int k = i / 2, c = i % 2;
        for (int j = i; j < 12; ++j) {
          const int l = j / 2, d = j % 2;
          double value = grads[k][d] * grads[l][c];
          if (c == d) value += grads[k][0] * grads[l][0] + grads[k][1] * grads[l][1];
          local(i, j) += 0.5 * w * value;
        }
      }
    }
    local.triangularView<Eigen::StrictlyLower>() = local.transpose();

    const auto dofs = velocity.cell_dofs(cell);
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 12; ++j) triplets.emplace_back(dofs[i], dofs[j], local(i, j));
  }
  return from_triplets(velocity.num_dofs(), velocity.num_dofs(), triplets);
}

SparseOperator assemble_div(const DofSpace& velocity, const DofSpace& pressure) {
  require_vector_space(velocity, "assemble_div");
  require_pressure_space(pressure, "assemble_div");
  if (velocity.mesh_ptr() != pressure.mesh_ptr())
    throw std::invalid_argument("assemble_div: velocity and pressure live on different meshes");
  const Mesh& mesh = velocity.mesh();
  const auto& quad = quadrature_degree5();
  const int nq = pressure.dofs_per_cell();
  Triplets triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.num_cells() * nq * 12));

  for (int cell = 0; cell < mesh.num_cells(); ++cell) {
    const auto geo = detail::cell_geometry(mesh, cell);
    Eigen::Matrix<double, 3, 12> local = Eigen::Matrix<double, 3, 12>::Zero();
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const double w = quad.weights[q] * geo.area;
      const auto grads = p2::gradients(quad.points[q], geo.grad_bary);
      const auto psi = pressure_values(pressure.kind(), quad.points[q]);
      for (int m = 0; m < nq; ++m)
        for (int i = 0; i < 12; ++i) local(m, i) += w * psi[m] * grads[i / 2][i % 2];
    }
    const auto vdofs = velocity.cell_dofs(cell);
    const auto qdofs = pressure.cell_dofs(cell);
    for (int m = 0; m < nq; ++m)
      for (int i = 0; i < 12; ++i) triplets.emplace_back(qdofs[m], vdofs[i], local(m, i));
  }
  return from_triplets(pressure.num_dofs(), velocity.num_dofs(), triplets);
}

PressureMass assemble_pressure_mass(const DofSpace& pressure) {
  require_pressure_space(pressure, "assemble_pressure_mass");
  const Mesh& mesh = pressure.mesh();
  Triplets triplets;
  for (int cell = 0; cell < mesh.num_cells(); ++cell) {
    const double area = mesh.signed_area(cell);
    const auto dofs = pressure.cell_dofs(cell);
    if (pressure.kind() == ElementKind::P0) {
      triplets.emplace_back(dofs[0], dofs[0], area);
    } else {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) triplets.emplace_back(dofs[i], dofs[j], area * (i == j ? 2.0 : 1.0) / 12.0);
    }
  }
  PressureMass out;
  out.mass = from_triplets(pressure.num_dofs(), pressure.num_dofs(), triplets);
  out.diagonal = out.mass.diagonal();
  return out;
}

SparseOperator assemble_scalar_mass(const DofSpace& space) {
  if (space.kind() != ElementKind::P2)
    throw std::invalid_argument("assemble_scalar_mass: space must be scalar P2");
  const Mesh& mesh = space.mesh();
  const auto& quad = quadrature_degree5();
  Triplets triplets;
  for (int cell = 0; cell < mesh.num_cells(); ++cell) {
    const double area = mesh.signed_area(cell);
    Eigen::Matrix<double, 6, 6> local = Eigen::Matrix<double, 6, 6>::Zero();
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const auto phi = p2::values(quad.points[q]);
      for (int i = 0; i < 6; ++i)
        for (int j = i; j < 6; ++j) local(i, j) += quad.weights[q] * area * phi[i] * phi[j];
    }
    local.triangularView<Eigen::StrictlyLower>() = local.transpose();
    const auto dofs = space.cell_dofs(cell);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) triplets.emplace_back(dofs[i], dofs[j], local(i, j));
  }
  return from_triplets(space.num_dofs(), space.num_dofs(), triplets);
}

Vector assemble_load(const ManufacturedProblem& problem, const DofSpace& velocity) {
  require_vector_space(velocity, "assemble_load");
  const Mesh& mesh = velocity.mesh();
  const auto& quad = quadrature_degree6();
  Vector rhs = Vector::Zero(velocity.num_dofs());
  for (int cell = 0; cell < mesh.num_cells(); ++cell) {
    const auto geo = detail::cell_geometry(mesh, cell);
    const auto dofs = velocity.cell_dofs(cell);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const double w = quad.weights[q] * geo.area;
      const Eigen::Vector2d f = problem.body_force(geo.map(quad.points[q]));
      const auto phi = p2::values(quad.points[q]);
      for (int i = 0; i < 12; ++i) rhs[dofs[i]] += w * phi[i / 2] * f[i % 2];
    }
  }
  return rhs;
}

AssembledSystem assemble_system(std::shared_ptr<const Mesh> mesh, ElementKind pressure_kind,
                                const ManufacturedProblem& problem) {
  AssembledSystem sys;
  sys.velocity = std::make_shared<const DofSpace>(mesh, ElementKind::P2Vector);
  sys.pressure = std::make_shared<const DofSpace>(mesh, pressure_kind);
  sys.A = assemble_epsilon_stiffness(*sys.velocity);
  sys.B = assemble_div(*sys.velocity, *sys.pressure);
  auto mass = assemble_pressure_mass(*sys.pressure);
  sys.MQ = std::move(mass.mass);
  sys.D = std::move(mass.diagonal);
  sys.rhs = assemble_load(problem, *sys.velocity);
  return sys;
}

Vector apply_lambda_operator(const SparseOperator& A, const SparseOperator& B, const Vector& D,
                             double lambda, const Vector& v) {
  if (lambda < 0.0) throw std::invalid_argument("apply_lambda_operator: lambda must be nonnegative");
  Vector out = A * v;
  if (lambda == 0.0) return out;
  const Vector scaled = (B * v).cwiseQuotient(D);
  out.noalias() += lambda * (B.transpose() * scaled);
  return out;
}

SparseOperator assemble_lambda_matrix(const SparseOperator& A, const SparseOperator& B, const Vector& D,
                                      double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("assemble_lambda_matrix: lambda must be nonnegative");
  const SparseOperator scaled = D.cwiseInverse().asDiagonal() * B;
  SparseOperator penalty = SparseOperator(B.transpose()) * scaled;
  // The product is symmetric in exact arithmetic; average to make it exact.
  const SparseOperator penalty_t = penalty.transpose();
  penalty = 0.5 * (penalty + penalty_t);
  SparseOperator out = A + lambda * penalty;
  out.makeCompressed();
  return out;
}

Vector interpolate(const std::function<Eigen::Vector2d(const Point&)>& field, const DofSpace& velocity) {
  require_vector_space(velocity, "interpolate");
  Vector out(velocity.num_dofs());
  for (int dof = 0; dof < velocity.num_dofs(); dof += 2) {
    const Eigen::Vector2d value = field(velocity.support_point(dof));
    out[dof] = value[0];
    out[dof + 1] = value[1];
  }
  return out;
}

ErrorNorms compute_errors(const Vector& coefficients, const DofSpace& velocity,
                          const ManufacturedProblem& problem) {
  require_vector_space(velocity, "compute_errors");
  if (coefficients.size() != velocity.num_dofs())
    throw std::invalid_argument("compute_errors: coefficient vector has wrong size");
  const Mesh& mesh = velocity.mesh();
  const auto& quad = quadrature_degree6();
  double l2 = 0.0, h1 = 0.0;
  for (int cell = 0; cell < mesh.num_cells(); ++cell) {
    const auto geo = detail::cell_geometry(mesh, cell);
    const auto dofs = velocity.cell_dofs(cell);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const double w = quad.weights[q] * geo.area;
      const auto phi = p2::values(quad.points[q]);
      const auto grads = p2::gradients(quad.points[q], geo.grad_bary);
      Eigen::Vector2d uh = Eigen::Vector2d::Zero();
      Eigen::Matrix2d guh = Eigen::Matrix2d::Zero();
      for (int i = 0; i < 12; ++i) {
        const double coef = coefficients[dofs[i]];
        uh[i % 2] += coef * phi[i / 2];
        guh(i % 2, 0) += coef * grads[i / 2][0];
        guh(i % 2, 1) += coef * grads[i / 2][1];
      }
      const Point x = geo.map(quad.points[q]);
      l2 += w * (problem.displacement(x) - uh).squaredNorm();
      h1 += w * (problem.displacement_gradient(x) - guh).squaredNorm();
    }
  }
  return {std::sqrt(l2), std::sqrt(h1)};
}

} // namespace pfelast
