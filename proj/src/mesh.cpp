#include "mixedfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mixedfem {

namespace {

constexpr double kAreaFloor = 1e-14;

bool on_unit_square_boundary(const Vec2& p) {
  return p.x() == 0.0 || p.x() == 1.0 || p.y() == 0.0 || p.y() == 1.0;
}

double signed_area_of(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined std::uniform_real_distribution.
double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Mesh::Mesh(std::vector<Vec2> vertices, std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  if (triangles_.empty()) throw std::invalid_argument("mesh has no triangles");
  for (const auto& tri : triangles_) {
    for (int v : tri) {
      if (v < 0 || v >= num_vertices()) throw std::invalid_argument("triangle references a missing vertex");
    }
  }
  build_connectivity();
  classify_boundary();
  if (auto msg = validate(); !msg.empty()) throw std::invalid_argument("invalid mesh: " + msg);
}

void Mesh::build_connectivity() {
  std::map<std::pair<int, int>, int> edge_index;
  tri_edges_.resize(triangles_.size());
  tri_edge_signs_.resize(triangles_.size());
  for (int t = 0; t < num_triangles(); ++t) {
    const auto& tri = triangles_[t];
    for (int k = 0; k < 3; ++k) {
      const int a = tri[(k + 1) % 3];
      const int b = tri[(k + 2) % 3];
      const auto key = std::minmax(a, b);
      auto [it, inserted] = edge_index.try_emplace({key.first, key.second}, num_edges());
      if (inserted) {
        edges_.push_back({key.first, key.second});
        edge_incidence_.push_back(0);
      }
      const int e = it->second;
      ++edge_incidence_[e];
      tri_edges_[t][k] = e;
      tri_edge_signs_[t][k] = a < b ? 1 : -1;
    }
  }
  h_max_ = 0.0;
  for (const auto& e : edges_) {
    h_max_ = std::max(h_max_, (vertices_[e[1]] - vertices_[e[0]]).norm());
  }
}

void Mesh::classify_boundary() {
  boundary_vertex_.assign(vertices_.size(), 0);
  boundary_edge_.assign(edges_.size(), 0);
  for (int e = 0; e < num_edges(); ++e) {
    if (edge_incidence_[e] == 1) {
      boundary_edge_[e] = 1;
      boundary_vertex_[edges_[e][0]] = 1;
      boundary_vertex_[edges_[e][1]] = 1;
    }
  }
}

int Mesh::num_boundary_edges() const {
  return static_cast<int>(std::count(boundary_edge_.begin(), boundary_edge_.end(), 1));
}

int Mesh::num_boundary_vertices() const {
  return static_cast<int>(std::count(boundary_vertex_.begin(), boundary_vertex_.end(), 1));
}

double Mesh::signed_area(int t) const {
  const auto& tri = triangles_[t];
  return signed_area_of(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
}

double Mesh::local_h(int v) const {
  double h = std::numeric_limits<double>::infinity();
  for (const auto& e : edges_) {
    if (e[0] == v || e[1] == v) h = std::min(h, (vertices_[e[1]] - vertices_[e[0]]).norm());
  }
  return h;
}

std::string Mesh::validate() const {
  std::ostringstream msg;
  for (int t = 0; t < num_triangles(); ++t) {
    if (!(signed_area(t) > kAreaFloor)) {
      msg << "triangle " << t << " has non-positive area " << signed_area(t);
      return msg.str();
    }
  }
  for (int e = 0; e < num_edges(); ++e) {
    if (edge_incidence_[e] < 1 || edge_incidence_[e] > 2) {
      msg << "edge " << e << " is shared by " << edge_incidence_[e] << " triangles";
      return msg.str();
    }
  }
  if (num_vertices() - num_edges() + num_triangles() != 1) {
    msg << "Euler characteristic " << num_vertices() - num_edges() + num_triangles() << " != 1";
    return msg.str();
  }
  for (int v = 0; v < num_vertices(); ++v) {
    if (is_boundary_vertex(v) && !on_unit_square_boundary(vertices_[v])) {
      msg << "boundary vertex " << v << " is off the unit-square boundary";
      return msg.str();
    }
  }
  return {};
}

Mesh build_uniform_square(int n) {
  if (n < 1) throw std::invalid_argument("build_uniform_square: n must be >= 1");
  const int side = n + 1;
  std::vector<Vec2> vertices;
  vertices.reserve(static_cast<std::size_t>(side) * side);
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      // i == n gives exactly 1.0, so boundary coordinates are exact.
      vertices.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
    }
  }
  std::vector<Mesh::Triangle> triangles;
  triangles.reserve(2 * static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = i + j * side;
      const int b = a + 1;
      const int c = b + side;
      const int d = a + side;
      triangles.push_back({a, b, c});
      triangles.push_back({a, c, d});
    }
  }
  return Mesh(std::move(vertices), std::move(triangles));
}

Mesh perturb_interior(const Mesh& mesh, double amplitude, std::uint64_t seed) {
  if (!(amplitude >= 0.0 && amplitude < 0.5)) {
    throw std::invalid_argument("perturb_interior: amplitude must lie in [0, 0.5)");
  }
  std::vector<Vec2> vertices = mesh.vertices();
  if (amplitude == 0.0) return Mesh(std::move(vertices), mesh.triangles());

  std::vector<std::vector<int>> vertex_triangles(vertices.size());
  std::vector<double> local_h(vertices.size(), std::numeric_limits<double>::infinity());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int v : mesh.triangle(t)) vertex_triangles[v].push_back(t);
  }
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const auto& ed = mesh.edge(e);
    const double len = (mesh.vertex(ed[1]) - mesh.vertex(ed[0])).norm();
    local_h[ed[0]] = std::min(local_h[ed[0]], len);
    local_h[ed[1]] = std::min(local_h[ed[1]], len);
  }

  constexpr int kMaxRetries = 30;
  std::mt19937_64 rng(seed);
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    // Draw unconditionally so the stream does not depend on which vertices
    // are interior.
    const double radius = amplitude * local_h[v] * std::sqrt(unit_double(rng));
    const double angle = 2.0 * M_PI * unit_double(rng);
    if (mesh.is_boundary_vertex(v)) continue;

    const Vec2 origin = vertices[v];
    Vec2 offset(radius * std::cos(angle), radius * std::sin(angle));
    bool placed = false;
    for (int attempt = 0; attempt < kMaxRetries && !placed; ++attempt) {
      vertices[v] = origin + offset;
      placed = std::all_of(vertex_triangles[v].begin(), vertex_triangles[v].end(), [&](int t) {
        const auto& tri = mesh.triangle(t);
        return signed_area_of(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]) > kAreaFloor;
      });
      offset *= 0.5;
    }
    if (!placed) {
      vertices[v] = origin;
      const bool ok = std::all_of(vertex_triangles[v].begin(), vertex_triangles[v].end(), [&](int t) {
        const auto& tri = mesh.triangle(t);
        return signed_area_of(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]) > kAreaFloor;
      });
      if (!ok) throw std::runtime_error("perturb_interior: could not produce a valid mesh");
    }
  }
  return Mesh(std::move(vertices), mesh.triangles());
}

BoundaryFlags classify_boundary(const Mesh& mesh) {
  BoundaryFlags flags{std::vector<bool>(mesh.num_vertices(), false),
                      std::vector<bool>(mesh.num_edges(), false)};
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (mesh.edge_incidence(e) == 1) {
      flags.edge[e] = true;
      flags.vertex[mesh.edge(e)[0]] = true;
      flags.vertex[mesh.edge(e)[1]] = true;
    }
  }
  return flags;
}

void write_mesh(std::ostream& os, const Mesh& mesh) {
  os.precision(17);
  for (const auto& v : mesh.vertices()) os << "v " << v.x() << ' ' << v.y() << '\n';
  for (const auto& t : mesh.triangles()) os << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

}  // namespace mixedfem
