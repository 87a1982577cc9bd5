#pragma once

#include "mixedfem/common.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace mixedfem {

/// Conforming triangulation of the unit square.
///
/// Triangles are stored counterclockwise. Local edge k of a triangle is the
/// edge opposite local vertex k, traversed from local vertex (k+1)%3 to
/// (k+2)%3. Global edges are oriented from the lower to the higher vertex
/// index; `edge_sign(t, k)` is +1 when the local traversal agrees with the
/// global orientation.
///
/// Immutable after construction.
class Mesh {
 public:
  using Triangle = std::array<int, 3>;
  using Edge = std::array<int, 2>;

  /// Builds connectivity and boundary flags from raw vertex/triangle data.
  /// Throws std::invalid_argument if the input is not a valid triangulation
  /// (non-positive areas, edges shared by more than two triangles, ...).
  Mesh(std::vector<Vec2> vertices, std::vector<Triangle> triangles);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Vec2& vertex(int v) const { return vertices_[v]; }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  const Triangle& triangle(int t) const { return triangles_[t]; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const Edge& edge(int e) const { return edges_[e]; }

  int triangle_edge(int t, int k) const { return tri_edges_[t][k]; }
  int edge_sign(int t, int k) const { return tri_edge_signs_[t][k]; }
  /// Number of triangles sharing edge e (1 on the boundary, 2 inside).
  int edge_incidence(int e) const { return edge_incidence_[e]; }

  bool is_boundary_vertex(int v) const { return boundary_vertex_[v] != 0; }
  bool is_boundary_edge(int e) const { return boundary_edge_[e] != 0; }
  int num_boundary_edges() const;
  int num_boundary_vertices() const;

  double h_max() const { return h_max_; }
  double signed_area(int t) const;
  /// Shortest edge incident to vertex v.
  double local_h(int v) const;

  /// Returns an empty string for a valid mesh, otherwise a description of the
  /// first violated invariant.
  std::string validate() const;

 private:
  void build_connectivity();
  void classify_boundary();

  std::vector<Vec2> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<std::array<int, 3>> tri_edge_signs_;
  std::vector<int> edge_incidence_;
  std::vector<std::uint8_t> boundary_vertex_;
  std::vector<std::uint8_t> boundary_edge_;
  double h_max_ = 0.0;
};

/// n x n subsquares, each split by its lower-left to upper-right diagonal.
Mesh build_uniform_square(int n);

/// Moves interior vertices by a deterministic pseudo-random offset of length at
/// most `amplitude * local_h`. Boundary vertices and connectivity are kept.
/// Offsets that would invert a triangle are halved and retried.
Mesh perturb_interior(const Mesh& mesh, double amplitude, std::uint64_t seed);

struct BoundaryFlags {
  std::vector<bool> vertex;
  std::vector<bool> edge;
};

/// Recomputes boundary flags from incidence counts alone.
BoundaryFlags classify_boundary(const Mesh& mesh);

/// Plain-text dump: "v x y" per vertex, then "t i j k" per triangle.
void write_mesh(std::ostream& os, const Mesh& mesh);

}  // namespace mixedfem
