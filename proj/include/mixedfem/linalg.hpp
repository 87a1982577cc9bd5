#pragma once

#include "mixedfem/assembly.hpp"

namespace mixedfem {

struct SolveReport {
  double relative_residual = 0.0;
  int refinement_steps = 0;
};

/// Sparse LU (UMFPACK, fill-reducing ordering, partial pivoting) followed by
/// iterative refinement until ||Ax - b|| / ||b|| <= 1e-10.
///
/// Throws SolverError if the factorization reports a singular matrix or the
/// residual bound cannot be met.
Eigen::VectorXd sparse_direct_solve(const SparseMatrix& a, const Eigen::VectorXd& b, SolveReport* report = nullptr);

struct RankInfo {
  int rank = 0;
  double tolerance = 0.0;
  /// Orthonormal basis of the null space, one column per vector.
  Eigen::MatrixXd null_basis;
};

/// Rank by SVD with threshold 1e-10 * sigma_max. Meant for matrices of a few
/// hundred rows.
RankInfo dense_rank_and_nullspace(const Eigen::MatrixXd& a);

}  // namespace mixedfem
