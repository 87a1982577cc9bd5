#pragma once

#include "mixedfem/common.hpp"
#include "mixedfem/space.hpp"

#include <Eigen/Sparse>

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace mixedfem {

/// Compressed row storage; duplicates are summed when built from triplets.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

struct AssemblyOptions {
  /// Quadrature degree; negative selects 2r + 4 from the highest space degree.
  int quad_degree = -1;
  ExecPolicy policy = ExecPolicy::Parallel;
  /// Optional element visiting order (a permutation of the triangles). The
  /// result must not depend on it beyond round-off.
  std::span<const int> order = {};
};

/// Gram matrix of the basis in L^2. Works for scalar and Raviart-Thomas spaces.
SparseMatrix assemble_mass(const FeSpace& space, const AssemblyOptions& opts = {});

/// Entry (i, j) = (curl tau_j, v_i): rows follow the RT space, columns the
/// Lagrange space. The transpose gives (u, curl tau).
SparseMatrix assemble_curl_coupling(const FeSpace& sigma_space, const FeSpace& v_space,
                                    const AssemblyOptions& opts = {});

/// Entry (i, j) = (curl phi_j, curl psi_i) = (grad phi_j, grad psi_i), rows
/// from `test`, columns from `trial`; both Lagrange.
SparseMatrix assemble_curl_curl(const FeSpace& test, const FeSpace& trial, const AssemblyOptions& opts = {});

/// Entry (i, j) = (div v_j, div v_i).
SparseMatrix assemble_divdiv(const FeSpace& v_space, const AssemblyOptions& opts = {});

/// Entry (i, j) = (q_i, div v_j): rows follow the discontinuous space. The
/// discontinuous degree must be one less than the RT degree.
SparseMatrix assemble_div_pressure(const FeSpace& v_space, const FeSpace& p_space,
                                   const AssemblyOptions& opts = {});

/// Entry i = (f, phi_i) by quadrature.
Eigen::VectorXd assemble_load(const FeSpace& space, const ScalarFn& f, const AssemblyOptions& opts = {});
Eigen::VectorXd assemble_load(const FeSpace& space, const VectorFn& f, const AssemblyOptions& opts = {});

/// Entry i = (g, grad phi_i) on a scalar space.
Eigen::VectorXd assemble_gradient_load(const FeSpace& space, const VectorFn& g, const AssemblyOptions& opts = {});

/// Entry i = (v, curl phi_i) on a scalar space.
Eigen::VectorXd assemble_curl_load(const FeSpace& space, const VectorFn& v, const AssemblyOptions& opts = {});

/// Integral of f over the mesh by a triangle rule of the given degree.
double integrate(const Mesh& mesh, const ScalarFn& f, int quad_degree, ExecPolicy policy = ExecPolicy::Parallel);

/// Entry i = integral of phi_i (scalar spaces). Used for mean-value rows.
Eigen::VectorXd assemble_mean_weights(const FeSpace& space, const AssemblyOptions& opts = {});

/// Block operator assembled into one sparse matrix.
///
/// `compose(true)` negates block row 0 (matrix and right-hand side), turning
/// the mixed form [[M, -C^T], [C, D]] into the symmetric [[-M, C^T], [C, D]].
/// A mean constraint appends one row and one column carrying the same weight
/// vector, so symmetry is kept. That row is dense, which sparse LU orderings
/// handle badly on large systems; `pin` is the cheap alternative.
class BlockSystem {
 public:
  explicit BlockSystem(std::vector<int> block_sizes);

  void set_block(int row, int col, const SparseMatrix& block, double scale = 1.0);
  void set_rhs(int row, const Eigen::VectorXd& rhs);
  /// Appends the row weights . x_block = value and its transposed column.
  void add_mean_constraint(int block, const Eigen::VectorXd& weights, double value = 0.0);

  /// Replaces the row and column of one unknown by the identity (value 0).
  /// Fixes a constant null space without the dense row of a mean constraint.
  void pin(int block, int index);

  struct Assembled {
    SparseMatrix matrix;
    Eigen::VectorXd rhs;
  };
  Assembled compose(bool symmetrize) const;

  /// Splits a solution of the composed system into blocks; multiplier
  /// unknowns are dropped.
  std::vector<Eigen::VectorXd> split(const Eigen::VectorXd& x) const;
  int size() const;
  int offset(int block) const { return offsets_[block]; }

 private:
  struct Entry {
    int row;
    int col;
    SparseMatrix block;
    double scale;
  };
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  std::vector<Entry> entries_;
  std::vector<std::optional<Eigen::VectorXd>> rhs_;
  struct Mean {
    int block;
    Eigen::VectorXd weights;
    double value;
  };
  std::vector<Mean> means_;
  std::vector<int> pinned_;
};

/// Largest |A - A^T| entry.
double max_asymmetry(const SparseMatrix& a);

/// Coordinate text dump, one "row col value" line per stored entry.
void write_coordinate(std::ostream& os, const SparseMatrix& a);

}  // namespace mixedfem
