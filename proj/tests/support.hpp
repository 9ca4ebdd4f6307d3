#pragma once

#include "pfelast/preconditioner.hpp"

#include <memory>
#include <random>

namespace pfelast::testing {

inline Vector random_vector(int size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector v(size);
  for (int i = 0; i < size; ++i) v[i] = normal(rng);
  return v;
}

inline std::shared_ptr<const Mesh> mesh_at(int level) {
  return std::make_shared<const Mesh>(build_uniform_mesh(level));
}

inline ReducedSystem reduced_system(int level, ElementKind pressure) {
  const auto problem = ManufacturedProblem::trigonometric();
  return apply_dirichlet(assemble_system(mesh_at(level), pressure, problem), problem);
}

inline double energy(const SparseOperator& A, const Vector& v) { return std::sqrt(v.dot(A * v)); }

} // namespace pfelast::testing
