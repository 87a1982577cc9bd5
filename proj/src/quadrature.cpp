#include "mixedfem/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace mixedfem {

namespace {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1] by Newton
// iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
}

}  // namespace

LineRule gauss_line(int degree) {
  if (degree < 0) throw std::invalid_argument("gauss_line: negative degree");
  const int n = degree / 2 + 1;
  LineRule rule;
  gauss_legendre(n, rule.points, rule.weights);
  for (int i = 0; i < n; ++i) {
    rule.points[i] = 0.5 * (rule.points[i] + 1.0);
    rule.weights[i] *= 0.5;
  }
  rule.degree = 2 * n - 1;
  return rule;
}

QuadratureRule triangle_quadrature(int d) {
  if (d < 1 || d > 20) throw std::invalid_argument("triangle_quadrature: degree must be in [1, 20]");
  QuadratureRule rule;
  rule.degree = d;
  if (d == 1) {
    rule.points.emplace_back(1.0 / 3.0, 1.0 / 3.0);
    rule.weights.push_back(0.5);
    return rule;
  }
  // (s, t) in [0,1]^2 -> (x, y) = (s (1 - t), t), Jacobian (1 - t). The
  // integrand picks up one extra degree in t.
  const LineRule rs = gauss_line(d);
  const LineRule rt = gauss_line(d + 1);
  for (std::size_t j = 0; j < rt.points.size(); ++j) {
    const double t = rt.points[j];
    for (std::size_t i = 0; i < rs.points.size(); ++i) {
      rule.points.emplace_back(rs.points[i] * (1.0 - t), t);
      rule.weights.push_back(rs.weights[i] * rt.weights[j] * (1.0 - t));
    }
  }
  return rule;
}

const QuadratureRule& cached_triangle_quadrature(int d) {
  static std::array<QuadratureRule, 21> cache;
  static std::array<std::once_flag, 21> flags;
  if (d < 1 || d > 20) throw std::invalid_argument("triangle_quadrature: degree must be in [1, 20]");
  std::call_once(flags[d], [d] { cache[d] = triangle_quadrature(d); });
  return cache[d];
}

}  // namespace mixedfem
