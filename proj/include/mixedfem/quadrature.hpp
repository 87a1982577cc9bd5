#pragma once

#include "mixedfem/common.hpp"

#include <vector>

namespace mixedfem {

/// Gauss-Legendre rule on [0, 1], weights sum to 1.
struct LineRule {
  std::vector<double> points;
  std::vector<double> weights;
  int degree = 0;
};

/// Rule on the reference triangle (0,0), (1,0), (0,1); weights sum to 1/2.
struct QuadratureRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  int degree = 0;

  int size() const { return static_cast<int>(points.size()); }
};

/// Gauss-Legendre rule exact for polynomials of degree <= `degree` on [0, 1].
LineRule gauss_line(int degree);

/// Triangle rule exact for all x^a y^b with a + b <= d, 1 <= d <= 20.
///
/// d = 1 is the centroid rule. Higher degrees use a Gauss-Legendre rule
/// collapsed onto the triangle (Duffy map), so every weight is positive and
/// every point is interior; this costs a few more points than the tabulated
/// symmetric rules.
QuadratureRule triangle_quadrature(int d);

/// Cached, thread-safe access to triangle_quadrature(d).
const QuadratureRule& cached_triangle_quadrature(int d);

}  // namespace mixedfem
