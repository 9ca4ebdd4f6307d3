#pragma once

#include "pfelast/mesh.hpp"

#include <memory>
#include <string>
#include <vector>

namespace pfelast {

enum class ElementKind { P0, P1, P2, P2Vector };

std::string to_string(ElementKind kind);

enum class EntityKind { Vertex, Edge, Cell };

struct DofEntity {
  EntityKind kind;
  int index;
  int component;  ///< 0 for scalar spaces
};

/// Degree-of-freedom map of a Lagrange space on a Mesh.
///
/// P2 nodes are numbered vertices first, then edges (midpoints). Vector
/// dofs interleave components: dof = 2 * node + component.
class DofSpace {
public:
  DofSpace(std::shared_ptr<const Mesh> mesh, ElementKind kind);

  [[nodiscard]] ElementKind kind() const { return kind_; }
  [[nodiscard]] const Mesh& mesh() const { return *mesh_; }
  [[nodiscard]] const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  [[nodiscard]] int num_dofs() const { return static_cast<int>(entities_.size()); }
  [[nodiscard]] int components() const { return kind_ == ElementKind::P2Vector ? 2 : 1; }
  [[nodiscard]] int dofs_per_cell() const;
  /// Global dofs of a cell in local order (node-major, then component).
  [[nodiscard]] std::vector<int> cell_dofs(int cell) const;
  [[nodiscard]] const DofEntity& entity(int dof) const { return entities_[static_cast<std::size_t>(dof)]; }
  /// Location of the nodal functional of a dof (cell centroid for P0).
  [[nodiscard]] Point support_point(int dof) const;
  /// Flags dofs on the boundary; empty for scalar spaces.
  [[nodiscard]] const std::vector<bool>& dirichlet_mask() const { return dirichlet_; }

private:
  std::shared_ptr<const Mesh> mesh_;
  ElementKind kind_;
  std::vector<DofEntity> entities_;
  std::vector<bool> dirichlet_;
};

DofSpace build_space(std::shared_ptr<const Mesh> mesh, ElementKind kind);

} // namespace pfelast
