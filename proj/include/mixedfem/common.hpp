#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>

namespace mixedfem {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

using ScalarFn = std::function<double(const Vec2&)>;
using VectorFn = std::function<Vec2(const Vec2&)>;

/// Selects the OpenMP element loop or the serial reference loop.
/// Both produce bitwise-identical results.
enum class ExecPolicy { Serial, Parallel };

/// Raised when a sparse factorization is singular or a solve misses its
/// residual bound. Usually means a boundary condition or constraint is wrong.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an analytic load disagrees with its finite-difference check.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 90 degree clockwise rotation: (a, b) -> (b, -a).
inline Vec2 rotate_cw(const Vec2& v) { return {v.y(), -v.x()}; }

}  // namespace mixedfem
