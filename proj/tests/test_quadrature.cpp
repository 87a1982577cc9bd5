#include "mixedfem/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace mixedfem;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// integral of x^a y^b over the reference triangle: a! b! / (a + b + 2)!
double monomial_integral(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

}  // namespace

TEST_CASE("Gauss-Legendre on [0,1] integrates monomials up to its degree") {
  for (int d = 1; d <= 41; ++d) {
    const LineRule rule = gauss_line(d);
    double wsum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 0; k <= d; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.points.size(); ++i) s += rule.weights[i] * std::pow(rule.points[i], k);
      CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("triangle rules are exact to their degree with positive weights") {
  for (int d = 1; d <= 20; ++d) {
    const QuadratureRule& rule = cached_triangle_quadrature(d);
    CHECK(rule.degree >= d);
    double wsum = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      CHECK(rule.weights[q] > 0.0);
      const Vec2& p = rule.points[q];
      CHECK(p.x() > 0.0);
      CHECK(p.y() > 0.0);
      CHECK(p.x() + p.y() < 1.0);
      wsum += rule.weights[q];
    }
    CHECK(wsum == doctest::Approx(0.5).epsilon(1e-14));
    for (int a = 0; a <= d; ++a) {
      for (int b = 0; a + b <= d; ++b) {
        double s = 0.0;
        for (int q = 0; q < rule.size(); ++q) {
          s += rule.weights[q] * std::pow(rule.points[q].x(), a) * std::pow(rule.points[q].y(), b);
        }
        CHECK(s == doctest::Approx(monomial_integral(a, b)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("centroid rule and range errors") {
  const QuadratureRule r = triangle_quadrature(1);
  REQUIRE(r.size() == 1);
  CHECK(r.points[0].x() == doctest::Approx(1.0 / 3));
  CHECK(r.points[0].y() == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(triangle_quadrature(0), std::invalid_argument);
  CHECK_THROWS_AS(triangle_quadrature(21), std::invalid_argument);
}

TEST_CASE("a degree-d rule is not exact one degree higher in general") {
  // guards against a rule silently reporting more exactness than it has
  const QuadratureRule r = triangle_quadrature(1);
  double s = 0.0;
  for (int q = 0; q < r.size(); ++q) s += r.weights[q] * r.points[q].x() * r.points[q].x();
  CHECK(std::abs(s - monomial_integral(2, 0)) > 1e-3);
}
