#include "mixedfem/linalg.hpp"

#include <Eigen/SVD>
#include <Eigen/UmfPackSupport>

#include <sstream>

namespace mixedfem {

Eigen::VectorXd sparse_direct_solve(const SparseMatrix& a, const Eigen::VectorXd& b, SolveReport* report) {
  if (a.rows() != a.cols()) throw std::invalid_argument("sparse_direct_solve: matrix is not square");
  if (a.rows() != b.size()) throw std::invalid_argument("sparse_direct_solve: rhs length mismatch");
  constexpr double kTarget = 1e-10;
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    if (report) *report = {};
    return Eigen::VectorXd::Zero(b.size());
  }

  const Eigen::SparseMatrix<double, Eigen::ColMajor, int> acol = a;
  Eigen::UmfPackLU<Eigen::SparseMatrix<double, Eigen::ColMajor, int>> lu;
  lu.compute(acol);
  if (lu.info() != Eigen::Success) {
    throw SolverError("sparse LU factorization failed (singular matrix of size " + std::to_string(a.rows()) + ")");
  }
  Eigen::VectorXd x = lu.solve(b);
  Eigen::VectorXd r = b - a * x;
  double rel = r.norm() / bnorm;
  int steps = 0;
  while (!(rel <= kTarget) && steps < 5) {
    x += lu.solve(r);
    r = b - a * x;
    rel = r.norm() / bnorm;
    ++steps;
  }
  if (!std::isfinite(rel) || rel > kTarget) {
    std::ostringstream msg;
    msg << "sparse solve residual " << rel << " exceeds " << kTarget << " (matrix nearly singular?)";
    throw SolverError(msg.str());
  }
  if (report) *report = {rel, steps};
  return x;
}

RankInfo dense_rank_and_nullspace(const Eigen::MatrixXd& a) {
  RankInfo info;
  if (a.size() == 0) return info;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double smax = s.size() > 0 ? s[0] : 0.0;
  info.tolerance = 1e-10 * smax;
  info.rank = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s[i] > info.tolerance && s[i] > 0.0) ++info.rank;
  }
  const int n = static_cast<int>(a.cols());
  info.null_basis = svd.matrixV().rightCols(n - info.rank);
  return info;
}

}  // namespace mixedfem
