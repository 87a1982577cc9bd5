#pragma once

#include "mixedfem/common.hpp"

#include <memory>
#include <vector>

namespace mixedfem {

/// Function of one variable whose derivatives of every order are known in
/// closed form.
class Univariate {
 public:
  using Impl = std::function<double(double x, int order)>;

  explicit Univariate(Impl impl) : impl_(std::move(impl)) {}

  static Univariate constant(double c);
  /// sin(k pi x) and cos(k pi x).
  static Univariate sin_pi(double k = 1.0);
  static Univariate cos_pi(double k = 1.0);
  /// sin^2(pi x).
  static Univariate sin_squared_pi();
  /// sum_i coeffs[i] x^i.
  static Univariate polynomial(std::vector<double> coeffs);
  /// Product of polynomials given by their coefficient lists.
  static Univariate polynomial_product(const std::vector<std::vector<double>>& factors);

  double operator()(double x, int order = 0) const { return impl_(x, order); }

 private:
  Impl impl_;
};

/// Finite sum of terms c * f(x) * g(y), differentiated exactly.
class ScalarField {
 public:
  ScalarField() = default;

  static ScalarField separable(double c, Univariate fx, Univariate fy);
  static ScalarField constant(double c);

  double operator()(const Vec2& p) const;
  ScalarField derivative(int dx, int dy) const;
  bool is_zero() const { return terms_.empty(); }
  ScalarFn fn() const;

  ScalarField operator+(const ScalarField& o) const;
  ScalarField operator-(const ScalarField& o) const;
  ScalarField operator-() const;
  ScalarField operator*(double s) const;

 private:
  struct Term {
    double coef;
    std::shared_ptr<const Univariate> fx;
    std::shared_ptr<const Univariate> fy;
    int dx;
    int dy;
  };
  std::vector<Term> terms_;
};

inline ScalarField operator*(double s, const ScalarField& f) { return f * s; }

struct VectorField {
  ScalarField x;
  ScalarField y;

  Vec2 operator()(const Vec2& p) const { return {x(p), y(p)}; }
  VectorFn fn() const;
  VectorField operator+(const VectorField& o) const { return {x + o.x, y + o.y}; }
  VectorField operator-(const VectorField& o) const { return {x - o.x, y - o.y}; }
  VectorField operator*(double s) const { return {x * s, y * s}; }
};

ScalarField d_dx(const ScalarField& f);
ScalarField d_dy(const ScalarField& f);
VectorField grad(const ScalarField& f);
/// (d/dy, -d/dx)
VectorField curl(const ScalarField& f);
ScalarField div(const VectorField& u);
/// du_y/dx - du_x/dy
ScalarField rot(const VectorField& u);
ScalarField laplacian(const ScalarField& f);

}  // namespace mixedfem
