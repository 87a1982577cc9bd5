#pragma once

#include "mixedfem/common.hpp"
#include "mixedfem/polynomial.hpp"

#include <span>
#include <vector>

namespace mixedfem {

enum class Family { Lagrange, RaviartThomas, Discontinuous };

const char* to_string(Family f);

enum class EntityKind { Vertex, Edge, Interior };

/// Where a degree of freedom lives on the reference triangle. `entity` is the
/// local vertex or edge number; `index` is the node number along the edge
/// (Lagrange, counted in local counterclockwise direction) or the moment
/// order (Raviart-Thomas edge moments, interior moments).
struct DofDescriptor {
  EntityKind kind;
  int entity;
  int index;
};

/// Basis values and first derivatives at a set of points, one row per point
/// and one column per basis function.
struct ScalarTabulation {
  Eigen::MatrixXd values;
  Eigen::MatrixXd grad_x;
  Eigen::MatrixXd grad_y;
};

struct VectorTabulation {
  Eigen::MatrixXd values_x;
  Eigen::MatrixXd values_y;
  Eigen::MatrixXd divergence;
};

/// Basis on the reference triangle (0,0), (1,0), (0,1), dual to its degrees of
/// freedom.
///
///  - Lagrange P_r: point values at the equispaced lattice of order r.
///  - Raviart-Thomas RT_r (r = 1 lowest order, dim r(r+2)): the moments
///      int_0^1 v(x(s)) . nu L_j(2s - 1) ds,  j < r, on each edge, where nu is
///      the edge vector rotated clockwise (the outward normal scaled by the edge
///      length) and L_j the Legendre polynomials; plus int_T v . (m e_i) for
///      monomials m of degree <= r - 2.
///  - Discontinuous P_k: basis orthonormal for 2 * int_T f g, so the first
///      function is the constant 1 and the DOFs are the corresponding moments.
class ReferenceElement {
 public:
  /// Shared immutable instance. Lagrange and RT need 1 <= degree <= 4,
  /// discontinuous 0 <= degree <= 4; anything else throws.
  static const ReferenceElement& get(Family family, int degree);

  Family family() const { return family_; }
  int degree() const { return degree_; }
  int num_dofs() const { return static_cast<int>(dofs_.size()); }
  bool is_vector() const { return family_ == Family::RaviartThomas; }
  const std::vector<DofDescriptor>& dofs() const { return dofs_; }
  /// Polynomial degree of the highest monomial in the local space.
  int polynomial_degree() const { return monomials_.degree(); }

  int dofs_per_vertex() const;
  int dofs_per_edge() const;
  int dofs_per_interior() const;

  /// Lagrange interpolation nodes, one per DOF (empty for other families).
  const std::vector<Vec2>& nodes() const { return nodes_; }

  ScalarTabulation tabulate_scalar(std::span<const Vec2> points) const;
  VectorTabulation tabulate_vector(std::span<const Vec2> points) const;

  /// Applies the DOF functionals to a function given in reference
  /// coordinates. Moments use quadrature of the given degree.
  Eigen::VectorXd apply_dofs(const ScalarFn& f, int quad_degree) const;
  Eigen::VectorXd apply_dofs(const VectorFn& f, int quad_degree) const;

  /// Entry (i, j) = DOF_i(phi_j); the identity up to round-off.
  Eigen::MatrixXd duality_matrix() const;

  /// Local edge k runs from vertex (k+1)%3 to (k+2)%3.
  static Vec2 vertex(int i);
  static Vec2 edge_point(int k, double s);
  /// Edge vector rotated clockwise: outward normal times edge length.
  static Vec2 edge_normal(int k);

 private:
  ReferenceElement(Family family, int degree);

  // Applies the functionals to each column of a spanning set given as
  // coefficient matrices over monomials_.
  Eigen::MatrixXd functionals_on(const Eigen::MatrixXd& cx, const Eigen::MatrixXd& cy, int quad_degree) const;

  Family family_;
  int degree_;
  MonomialSet monomials_;
  std::vector<DofDescriptor> dofs_;
  std::vector<Vec2> nodes_;
  // Basis coefficients over monomials_, one column per basis function. For
  // scalar families only coeff_x_ is used.
  Eigen::MatrixXd coeff_x_;
  Eigen::MatrixXd coeff_y_;
};

/// Tabulations on the reference triangle, the dimension-checked public entry
/// points of this module.
ScalarTabulation eval_lagrange(int r, std::span<const Vec2> points);
VectorTabulation eval_rt(int r, std::span<const Vec2> points);
ScalarTabulation eval_dg(int k, std::span<const Vec2> points);

}  // namespace mixedfem
