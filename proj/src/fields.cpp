#include "mixedfem/fields.hpp"

#include <cmath>

namespace mixedfem {

Univariate Univariate::constant(double c) {
  return Univariate([c](double, int order) { return order == 0 ? c : 0.0; });
}

Univariate Univariate::sin_pi(double k) {
  const double w = k * M_PI;
  return Univariate([w](double x, int order) { return std::pow(w, order) * std::sin(w * x + order * M_PI_2); });
}

Univariate Univariate::cos_pi(double k) {
  const double w = k * M_PI;
  return Univariate([w](double x, int order) { return std::pow(w, order) * std::cos(w * x + order * M_PI_2); });
}

Univariate Univariate::sin_squared_pi() {
  // sin^2(pi x) = (1 - cos(2 pi x)) / 2
  return Univariate([](double x, int order) {
    if (order == 0) {
      const double s = std::sin(M_PI * x);
      return s * s;
    }
    const double w = 2.0 * M_PI;
    return -0.5 * std::pow(w, order) * std::cos(w * x + order * M_PI_2);
  });
}

Univariate Univariate::polynomial(std::vector<double> coeffs) {
  return Univariate([c = std::move(coeffs)](double x, int order) {
    double sum = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= order; --i) {
      double falling = 1.0;
      for (int k = 0; k < order; ++k) falling *= i - k;
      sum = sum * x + c[i] * falling;
    }
    return sum;
  });
}

Univariate Univariate::polynomial_product(const std::vector<std::vector<double>>& factors) {
  std::vector<double> prod{1.0};
  for (const auto& f : factors) {
    std::vector<double> next(prod.size() + f.size() - 1, 0.0);
    for (std::size_t i = 0; i < prod.size(); ++i) {
      for (std::size_t j = 0; j < f.size(); ++j) next[i + j] += prod[i] * f[j];
    }
    prod = std::move(next);
  }
  return polynomial(std::move(prod));
}

ScalarField ScalarField::separable(double c, Univariate fx, Univariate fy) {
  ScalarField f;
  f.terms_.push_back({c, std::make_shared<const Univariate>(std::move(fx)),
                      std::make_shared<const Univariate>(std::move(fy)), 0, 0});
  return f;
}

ScalarField ScalarField::constant(double c) {
  return separable(c, Univariate::constant(1.0), Univariate::constant(1.0));
}

double ScalarField::operator()(const Vec2& p) const {
  double sum = 0.0;
  for (const Term& t : terms_) sum += t.coef * (*t.fx)(p.x(), t.dx) * (*t.fy)(p.y(), t.dy);
  return sum;
}

ScalarField ScalarField::derivative(int dx, int dy) const {
  ScalarField out = *this;
  for (Term& t : out.terms_) {
    t.dx += dx;
    t.dy += dy;
  }
  return out;
}

ScalarFn ScalarField::fn() const {
  return [f = *this](const Vec2& p) { return f(p); };
}

ScalarField ScalarField::operator+(const ScalarField& o) const {
  ScalarField out = *this;
  out.terms_.insert(out.terms_.end(), o.terms_.begin(), o.terms_.end());
  return out;
}

ScalarField ScalarField::operator-(const ScalarField& o) const { return *this + (-o); }

ScalarField ScalarField::operator-() const { return *this * -1.0; }

ScalarField ScalarField::operator*(double s) const {
  ScalarField out = *this;
  for (Term& t : out.terms_) t.coef *= s;
  return out;
}

VectorFn VectorField::fn() const {
  return [f = *this](const Vec2& p) { return f(p); };
}

ScalarField d_dx(const ScalarField& f) { return f.derivative(1, 0); }
ScalarField d_dy(const ScalarField& f) { return f.derivative(0, 1); }
VectorField grad(const ScalarField& f) { return {d_dx(f), d_dy(f)}; }
VectorField curl(const ScalarField& f) { return {d_dy(f), -d_dx(f)}; }
ScalarField div(const VectorField& u) { return d_dx(u.x) + d_dy(u.y); }
ScalarField rot(const VectorField& u) { return d_dx(u.y) - d_dy(u.x); }
ScalarField laplacian(const ScalarField& f) { return f.derivative(2, 0) + f.derivative(0, 2); }

}  // namespace mixedfem
