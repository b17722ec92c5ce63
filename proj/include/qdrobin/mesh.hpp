#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "qdrobin/geometry.hpp"

namespace qdrobin {

// Transfinite polar triangulation of a star-shaped domain: concentric rings
// mapped by the boundary parametrization, so boundary nodes lie exactly on
// the curve and scaled domains produce exactly scaled meshes. Node 0 is the
// center; ring i of N holds M nodes at radial fraction i/N.
struct Mesh {
  std::vector<std::array<double, 2>> nodes;
  std::vector<std::array<int, 3>> triangles;        // counterclockwise
  std::vector<std::array<int, 2>> boundary_edges;   // single CCW cycle
  std::vector<int> boundary_nodes;                  // cycle order
  int level = 0;

  int node_count() const { return static_cast<int>(nodes.size()); }
  double triangle_area(int t) const;
  double total_area() const;
};

/// Build the level-l mesh: 2^l rings by 8*2^l angular nodes, ~16*4^l
/// triangles. level must lie in [1, 9].
Mesh build_mesh(const DomainSpec& domain, int level);

/// Plain-text dump: "node <id> <x> <y>", "tri <id> <n1> <n2> <n3>",
/// "bedge <n1> <n2>" lines.
void dump_mesh(const Mesh& mesh, std::ostream& out);

}  // namespace qdrobin
