#pragma once

#include "mixedfem/common.hpp"

#include <utility>
#include <vector>

namespace mixedfem {

/// Monomials x^a y^b with a + b <= degree, ordered by total degree and then by
/// the power of y: 1, x, y, x^2, xy, y^2, ...
class MonomialSet {
 public:
  explicit MonomialSet(int degree);

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(exponents_.size()); }
  const std::pair<int, int>& exponent(int i) const { return exponents_[i]; }
  /// Index of x^a y^b.
  static int index(int a, int b) { return (a + b) * (a + b + 1) / 2 + b; }
  static int count(int degree) { return (degree + 1) * (degree + 2) / 2; }

  Eigen::VectorXd values(const Vec2& p) const;
  /// Column 0 is d/dx, column 1 is d/dy.
  Eigen::MatrixX2d gradients(const Vec2& p) const;

 private:
  int degree_;
  std::vector<std::pair<int, int>> exponents_;
};

/// Legendre polynomial P_n on [-1, 1].
double legendre(int n, double x);

}  // namespace mixedfem
