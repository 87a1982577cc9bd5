#pragma once

#include "mixedfem/common.hpp"
#include "mixedfem/mesh.hpp"
#include "mixedfem/reference_element.hpp"

#include <memory>
#include <span>
#include <vector>

namespace mixedfem {

enum class Constraint {
  None,
  ZeroTrace,        // Lagrange: boundary nodes eliminated
  ZeroNormalTrace,  // Raviart-Thomas: boundary edge moments eliminated
  MeanZero,         // discontinuous: one multiplier row in assembled systems
};

const char* to_string(Constraint c);

/// Affine map x = origin + J * xhat of one triangle.
struct CellGeometry {
  Vec2 origin;
  Mat2 jacobian;
  Mat2 inverse;
  double det = 0.0;

  Vec2 map(const Vec2& ref) const { return origin + jacobian * ref; }
  Vec2 pullback(const Vec2& x) const { return inverse * (x - origin); }
  double area() const { return 0.5 * det; }
};

CellGeometry cell_geometry(const Mesh& mesh, int t);

/// Global finite element space of one field.
///
/// DOFs on shared vertices and edges get one global index seen identically
/// from both triangles. Lagrange edge nodes are renumbered to follow the
/// global edge orientation. Raviart-Thomas edge moment j picks up the sign
/// edge_sign^(j+1), because the global normal flips with the orientation and
/// the Legendre weight L_j has parity j. Eliminated DOFs map to -1.
class FeSpace {
 public:
  FeSpace(std::shared_ptr<const Mesh> mesh, Family family, int degree, Constraint constraint);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  const ReferenceElement& element() const { return *element_; }
  Family family() const { return element_->family(); }
  int degree() const { return element_->degree(); }
  Constraint constraint() const { return constraint_; }
  bool has_mean_constraint() const { return constraint_ == Constraint::MeanZero; }

  /// Number of free (non-eliminated) DOFs.
  int num_dofs() const { return num_free_; }
  /// Number of DOFs before elimination.
  int num_full_dofs() const { return num_full_; }
  int dofs_per_cell() const { return element_->num_dofs(); }

  std::span<const int> cell_dofs(int t) const {
    return {cell_dofs_.data() + static_cast<std::size_t>(t) * dofs_per_cell(), static_cast<std::size_t>(dofs_per_cell())};
  }
  std::span<const double> cell_signs(int t) const {
    return {cell_signs_.data() + static_cast<std::size_t>(t) * dofs_per_cell(), static_cast<std::size_t>(dofs_per_cell())};
  }
  /// Same layout as cell_dofs but in the numbering before elimination.
  std::span<const int> cell_full_dofs(int t) const {
    return {cell_full_.data() + static_cast<std::size_t>(t) * dofs_per_cell(), static_cast<std::size_t>(dofs_per_cell())};
  }
  /// Eliminated DOFs, in the numbering before elimination.
  const std::vector<int>& constrained_dofs() const { return constrained_; }

 private:
  std::shared_ptr<const Mesh> mesh_;
  const ReferenceElement* element_;
  Constraint constraint_;
  int num_full_ = 0;
  int num_free_ = 0;
  std::vector<int> cell_full_;
  std::vector<int> cell_dofs_;
  std::vector<double> cell_signs_;
  std::vector<int> constrained_;
};

/// Validates the family/constraint pairing and builds the space.
std::shared_ptr<const FeSpace> build_space(std::shared_ptr<const Mesh> mesh, Family family, int degree,
                                           Constraint constraint = Constraint::None);

/// Coefficients over the free DOFs of a space. Eliminated DOFs are zero.
struct FeFunction {
  std::shared_ptr<const FeSpace> space;
  Eigen::VectorXd coeffs;

  explicit FeFunction(std::shared_ptr<const FeSpace> s)
      : space(std::move(s)), coeffs(Eigen::VectorXd::Zero(space->num_dofs())) {}
  FeFunction(std::shared_ptr<const FeSpace> s, Eigen::VectorXd c);

  /// Signed local coefficients of triangle t (zero for eliminated DOFs).
  Eigen::VectorXd local_coefficients(int t) const;
};

/// Point evaluation at a reference point of triangle t. Scalar families use
/// the affine map; Raviart-Thomas uses the contravariant Piola map
/// v = J vhat / det J, div v = div vhat / det J.
double evaluate_scalar(const FeFunction& f, int t, const Vec2& ref);
Vec2 evaluate_gradient(const FeFunction& f, int t, const Vec2& ref);
Vec2 evaluate_vector(const FeFunction& f, int t, const Vec2& ref);
double evaluate_divergence(const FeFunction& f, int t, const Vec2& ref);

/// Field defined cell by cell: (triangle, physical point) -> value.
using CellScalarFn = std::function<double(int, const Vec2&)>;
using CellVectorFn = std::function<Vec2(int, const Vec2&)>;

/// Applies the element DOF functionals cell by cell. Shared DOFs are taken
/// from the first triangle that owns them; eliminated DOFs are dropped.
/// Lagrange uses nodal values, Raviart-Thomas the Piola-pulled-back moments,
/// discontinuous the L^2 moments (i.e. the L^2 projection).
FeFunction interpolate(std::shared_ptr<const FeSpace> space, const CellScalarFn& f, int quad_degree = 20);
FeFunction interpolate(std::shared_ptr<const FeSpace> space, const CellVectorFn& f, int quad_degree = 20);
FeFunction interpolate(std::shared_ptr<const FeSpace> space, const ScalarFn& f, int quad_degree = 20);
FeFunction interpolate(std::shared_ptr<const FeSpace> space, const VectorFn& f, int quad_degree = 20);

}  // namespace mixedfem
