#include "pfelast/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pfelast {

double Mesh::h() const { return std::ldexp(1.0, -level); }

double Mesh::signed_area(int cell) const {
  const auto& c = cells[static_cast<std::size_t>(cell)];
  const Point& a = vertices[static_cast<std::size_t>(c[0])];
  const Point& b = vertices[static_cast<std::size_t>(c[1])];
  const Point& d = vertices[static_cast<std::size_t>(c[2])];
  return 0.5 * ((b.x() - a.x()) * (d.y() - a.y()) - (d.x() - a.x()) * (b.y() - a.y()));
}

Point Mesh::edge_midpoint(int edge) const {
  const auto& e = edges[static_cast<std::size_t>(edge)];
  return 0.5 * (vertices[static_cast<std::size_t>(e[0])] + vertices[static_cast<std::size_t>(e[1])]);
}

Mesh build_uniform_mesh(int level) {
  if (level < 0 || level > kMaxMeshLevel) {
    throw std::invalid_argument("build_uniform_mesh: level " + std::to_string(level) +
                                " outside supported range [0, " +
                                std::to_string(kMaxMeshLevel) + "]");
  }
  Mesh mesh;
  mesh.level = level;
  const int n = 1 << level;
  const double h = mesh.h();
  const auto vid = [n](int i, int j) { return j * (n + 1) + i; };

  mesh.vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      mesh.vertices.emplace_back(i * h, j * h);

  mesh.cells.reserve(static_cast<std::size_t>(2 * n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j);
      const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      mesh.cells.push_back({v00, v10, v11});
      mesh.cells.push_back({v00, v11, v01});
    }
  }

  // Collect unique edges keyed by their sorted vertex pair.
  std::map<std::pair<int, int>, int> edge_index;
  std::vector<std::array<int, 2>> raw_edges;
  for (const auto& c : mesh.cells) {
    for (int k = 0; k < 3; ++k) {
      int a = c[static_cast<std::size_t>((k + 1) % 3)];
      int b = c[static_cast<std::size_t>((k + 2) % 3)];
      if (a > b) std::swap(a, b);
      if (edge_index.emplace(std::make_pair(a, b), -1).second) raw_edges.push_back({a, b});
    }
  }

  // Lexicographic order of midpoints: y first, then x. Midpoint
  // coordinates are dyadic, so the comparison is exact.
  std::vector<int> order(raw_edges.size());
  std::iota(order.begin(), order.end(), 0);
  const auto mid = [&](int e) {
    const auto& r = raw_edges[static_cast<std::size_t>(e)];
    return 0.5 * (mesh.vertices[static_cast<std::size_t>(r[0])] +
                  mesh.vertices[static_cast<std::size_t>(r[1])]);
  };
  std::sort(order.begin(), order.end(), [&](int p, int q) {
    const Point mp = mid(p), mq = mid(q);
    if (mp.y() != mq.y()) return mp.y() < mq.y();
    return mp.x() < mq.x();
  });
  mesh.edges.reserve(raw_edges.size());
  for (int e : order) {
    const auto& r = raw_edges[static_cast<std::size_t>(e)];
    edge_index[{r[0], r[1]}] = static_cast<int>(mesh.edges.size());
    mesh.edges.push_back(r);
  }

  mesh.edge_cells.assign(mesh.edges.size(), {-1, -1});
  mesh.cell_edges.resize(mesh.cells.size());
  for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
    for (int k = 0; k < 3; ++k) {
      int a = mesh.cells[c][static_cast<std::size_t>((k + 1) % 3)];
      int b = mesh.cells[c][static_cast<std::size_t>((k + 2) % 3)];
      if (a > b) std::swap(a, b);
      const int e = edge_index.at({a, b});
      mesh.cell_edges[c][static_cast<std::size_t>(k)] = e;
      auto& adj = mesh.edge_cells[static_cast<std::size_t>(e)];
      if (adj[0] < 0) {
        adj[0] = static_cast<int>(c);
      } else {
        adj[1] = static_cast<int>(c);
      }
    }
  }

  classify_boundary(mesh);
  return mesh;
}

void classify_boundary(Mesh& mesh) {
  const auto on_boundary = [](const Point& p) {
    return p.x() == 0.0 || p.x() == 1.0 || p.y() == 0.0 || p.y() == 1.0;
  };
  mesh.boundary_vertex.assign(mesh.vertices.size(), false);
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
    mesh.boundary_vertex[v] = on_boundary(mesh.vertices[v]);

  // An edge is on the boundary iff it has a single adjacent cell.
  mesh.boundary_edge.assign(mesh.edges.size(), false);
  for (std::size_t e = 0; e < mesh.edges.size(); ++e)
    mesh.boundary_edge[e] = mesh.edge_cells[e][1] < 0;
}

void write_mesh_text(const Mesh& mesh, std::ostream& out) {
  const auto old_precision = out.precision(17);
  out << "level " << mesh.level << '\n';
  out << "vertices " << mesh.num_vertices() << '\n';
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
    out << mesh.vertices[v].x() << ' ' << mesh.vertices[v].y() << ' '
        << (mesh.boundary_vertex[v] ? 1 : 0) << '\n';
  out << "edges " << mesh.num_edges() << '\n';
  for (std::size_t e = 0; e < mesh.edges.size(); ++e)
    out << mesh.edges[e][0] << ' ' << mesh.edges[e][1] << ' '
        << (mesh.boundary_edge[e] ? 1 : 0) << '\n';
  out << "cells " << mesh.num_cells() << '\n';
  for (const auto& c : mesh.cells) out << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  out.precision(old_precision);
}

} // namespace pfelast
