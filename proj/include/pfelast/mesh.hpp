#pragma once

#include "pfelast/types.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace pfelast {

/// Largest refinement level accepted by build_uniform_mesh.
inline constexpr int kMaxMeshLevel = 12;

/// Uniform triangulation of the unit square.
///
/// Every grid square of side h = 2^-level is split along its
/// bottom-left to top-right diagonal. Vertices and cells are numbered
/// lexicographically (y first, then x); edges are ordered by midpoint
/// in the same way. Local edge k of a cell joins local vertices
/// (k+1)%3 and (k+2)%3, i.e. it is the edge opposite local vertex k.
struct Mesh {
  int level = 0;
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> cells;
  std::vector<std::array<int, 2>> edges;
  /// Cells sharing each edge; the second entry is -1 on the boundary.
  std::vector<std::array<int, 2>> edge_cells;
  std::vector<std::array<int, 3>> cell_edges;
  std::vector<bool> boundary_vertex;
  std::vector<bool> boundary_edge;

  [[nodiscard]] int num_vertices() const { return static_cast<int>(vertices.size()); }
  [[nodiscard]] int num_cells() const { return static_cast<int>(cells.size()); }
  [[nodiscard]] int num_edges() const { return static_cast<int>(edges.size()); }
  [[nodiscard]] double h() const;
  /// Signed area of a cell (positive for counterclockwise orientation).
  [[nodiscard]] double signed_area(int cell) const;
  [[nodiscard]] Point edge_midpoint(int edge) const;
};

Mesh build_uniform_mesh(int level);

/// Flags vertices and edges lying on the boundary of the unit square.
/// build_uniform_mesh already calls this; it is idempotent.
void classify_boundary(Mesh& mesh);

/// Plain-text dump, one entity per line.
void write_mesh_text(const Mesh& mesh, std::ostream& out);

} // namespace pfelast
