#include "mixedfem/polynomial.hpp"

#include <stdexcept>

namespace mixedfem {

MonomialSet::MonomialSet(int degree) : degree_(degree) {
  if (degree < 0) throw std::invalid_argument("MonomialSet: negative degree");
  for (int d = 0; d <= degree; ++d) {
    for (int b = 0; b <= d; ++b) exponents_.emplace_back(d - b, b);
  }
}

Eigen::VectorXd MonomialSet::values(const Vec2& p) const {
  std::vector<double> xp(degree_ + 1, 1.0);
  std::vector<double> yp(degree_ + 1, 1.0);
  for (int k = 1; k <= degree_; ++k) {
    xp[k] = xp[k - 1] * p.x();
    yp[k] = yp[k - 1] * p.y();
  }
  Eigen::VectorXd v(size());
  for (int i = 0; i < size(); ++i) v[i] = xp[exponents_[i].first] * yp[exponents_[i].second];
  return v;
}

Eigen::MatrixX2d MonomialSet::gradients(const Vec2& p) const {
  std::vector<double> xp(degree_ + 1, 1.0);
  std::vector<double> yp(degree_ + 1, 1.0);
  for (int k = 1; k <= degree_; ++k) {
    xp[k] = xp[k - 1] * p.x();
    yp[k] = yp[k - 1] * p.y();
  }
  Eigen::MatrixX2d g(size(), 2);
  for (int i = 0; i < size(); ++i) {
    const auto [a, b] = exponents_[i];
    g(i, 0) = a > 0 ? a * xp[a - 1] * yp[b] : 0.0;
    g(i, 1) = b > 0 ? b * xp[a] * yp[b - 1] : 0.0;
  }
  return g;
}

double legendre(int n, double x) {
  if (n == 0) return 1.0;
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace mixedfem
