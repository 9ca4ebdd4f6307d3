#include "pfelast/space.hpp"

#include <stdexcept>

namespace pfelast {

std::string to_string(ElementKind kind) {
  switch (kind) {
  case ElementKind::P0: return "P0";
  case ElementKind::P1: return "P1";
  case ElementKind::P2: return "P2";
  case ElementKind::P2Vector: return "P2^2";
  }
  return "?";
}

DofSpace::DofSpace(std::shared_ptr<const Mesh> mesh, ElementKind kind)
    : mesh_(std::move(mesh)), kind_(kind) {
  if (!mesh_) throw std::invalid_argument("DofSpace: null mesh");
  const Mesh& m = *mesh_;
  switch (kind_) {
  case ElementKind::P0:
    for (int c = 0; c < m.num_cells(); ++c) entities_.push_back({EntityKind::Cell, c, 0});
    break;
  case ElementKind::P1:
    for (int v = 0; v < m.num_vertices(); ++v) entities_.push_back({EntityKind::Vertex, v, 0});
    break;
  case ElementKind::P2:
  case ElementKind::P2Vector: {
    const int ncomp = components();
    for (int v = 0; v < m.num_vertices(); ++v)
      for (int c = 0; c < ncomp; ++c) entities_.push_back({EntityKind::Vertex, v, c});
    for (int e = 0; e < m.num_edges(); ++e)
      for (int c = 0; c < ncomp; ++c) entities_.push_back({EntityKind::Edge, e, c});
    break;
  }
  default:
    throw std::invalid_argument("DofSpace: unsupported element kind");
  }

  if (kind_ == ElementKind::P2Vector) {
    dirichlet_.resize(entities_.size());
    for (std::size_t d = 0; d < entities_.size(); ++d) {
      const auto& ent = entities_[d];
      const auto idx = static_cast<std::size_t>(ent.index);
      dirichlet_[d] = ent.kind == EntityKind::Vertex ? m.boundary_vertex[idx] : m.boundary_edge[idx];
    }
  }
}

int DofSpace::dofs_per_cell() const {
  switch (kind_) {
  case ElementKind::P0: return 1;
  case ElementKind::P1: return 3;
  case ElementKind::P2: return 6;
  case ElementKind::P2Vector: return 12;
  }
  return 0;
}

std::vector<int> DofSpace::cell_dofs(int cell) const {
  const Mesh& m = *mesh_;
  const auto c = static_cast<std::size_t>(cell);
  switch (kind_) {
  case ElementKind::P0:
    return {cell};
  case ElementKind::P1:
    return {m.cells[c][0], m.cells[c][1], m.cells[c][2]};
  case ElementKind::P2:
    return {m.cells[c][0], m.cells[c][1], m.cells[c][2], m.num_vertices() + m.cell_edges[c][0],
            m.num_vertices() + m.cell_edges[c][1], m.num_vertices() + m.cell_edges[c][2]};
  case ElementKind::P2Vector: {
    std::vector<int> out;
    out.reserve(12);
    for (int k = 0; k < 6; ++k) {
      const int node = k < 3 ? m.cells[c][static_cast<std::size_t>(k)]
                             : m.num_vertices() + m.cell_edges[c][static_cast<std::size_t>(k - 3)];
      out.push_back(2 * node);
      out.push_back(2 * node + 1);
    }
    return out;
  }
  }
  return {};
}

Point DofSpace::support_point(int dof) const {
  const Mesh& m = *mesh_;
  const auto& ent = entity(dof);
  const auto idx = static_cast<std::size_t>(ent.index);
  switch (ent.kind) {
  case EntityKind::Vertex: return m.vertices[idx];
  case EntityKind::Edge: return m.edge_midpoint(ent.index);
  case EntityKind::Cell:
    return (m.vertices[static_cast<std::size_t>(m.cells[idx][0])] +
            m.vertices[static_cast<std::size_t>(m.cells[idx][1])] +
            m.vertices[static_cast<std::size_t>(m.cells[idx][2])]) / 3.0;
  }
  return Point::Zero();
}

DofSpace build_space(std::shared_ptr<const Mesh> mesh, ElementKind kind) {
  return DofSpace(std::move(mesh), kind);
}

} // namespace pfelast
