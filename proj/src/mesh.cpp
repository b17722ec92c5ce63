#include "qdrobin/mesh.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace qdrobin {

double Mesh::triangle_area(int t) const {
  const auto& tri = triangles[t];
  const auto& p0 = nodes[tri[0]];
  const auto& p1 = nodes[tri[1]];
  const auto& p2 = nodes[tri[2]];
  return 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]));
}

double Mesh::total_area() const {
  double s = 0.0;
  for (int t = 0; t < static_cast<int>(triangles.size()); ++t) s += triangle_area(t);
  return s;
}

Mesh build_mesh(const DomainSpec& domain, int level) {
  if (level < 1 || level > 9)
    throw std::invalid_argument("build_mesh: level out of range [1, 9]");
  validate(domain);

  const int n_rings = 1 << level;
  const int n_angular = 8 << level;
  const double dphi = 2.0 * M_PI / n_angular;

  Mesh mesh;
  mesh.level = level;
  mesh.nodes.reserve(1 + n_rings * n_angular);
  mesh.nodes.push_back({0.0, 0.0});

  // ring i, angle j -> node index
  auto idx = [n_angular](int i, int j) {
    return 1 + (i - 1) * n_angular + ((j % n_angular + n_angular) % n_angular);
  };

  for (int i = 1; i <= n_rings; ++i) {
    const double f = static_cast<double>(i) / n_rings;
    for (int j = 0; j < n_angular; ++j) {
      const CurvePoint p = eval_curve(domain, dphi * j);
      mesh.nodes.push_back({f * p.x, f * p.y});
    }
  }

  mesh.triangles.reserve(n_angular * (2 * n_rings - 1));
  for (int j = 0; j < n_angular; ++j)
    mesh.triangles.push_back({0, idx(1, j), idx(1, j + 1)});
  for (int i = 1; i < n_rings; ++i) {
    for (int j = 0; j < n_angular; ++j) {
      const int a = idx(i, j), b = idx(i + 1, j), c = idx(i + 1, j + 1), d = idx(i, j + 1);
      mesh.triangles.push_back({a, b, c});
      mesh.triangles.push_back({a, c, d});
    }
  }

  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t)
    if (!(mesh.triangle_area(t) > 0.0))
      throw std::runtime_error("build_mesh: non-positive triangle area (mesh rejected)");

  mesh.boundary_nodes.reserve(n_angular);
  mesh.boundary_edges.reserve(n_angular);
  for (int j = 0; j < n_angular; ++j) {
    mesh.boundary_nodes.push_back(idx(n_rings, j));
    mesh.boundary_edges.push_back({idx(n_rings, j), idx(n_rings, j + 1)});
  }
  return mesh;
}

void dump_mesh(const Mesh& mesh, std::ostream& out) {
  for (int i = 0; i < mesh.node_count(); ++i)
    out << "node " << i << ' ' << mesh.nodes[i][0] << ' ' << mesh.nodes[i][1] << '\n';
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t)
    out << "tri " << t << ' ' << mesh.triangles[t][0] << ' ' << mesh.triangles[t][1] << ' '
        << mesh.triangles[t][2] << '\n';
  for (const auto& e : mesh.boundary_edges) out << "bedge " << e[0] << ' ' << e[1] << '\n';
}

}  // namespace qdrobin
