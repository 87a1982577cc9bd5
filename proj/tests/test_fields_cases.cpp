#include "mixedfem/cases.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace mixedfem;

namespace {

constexpr double pi = std::numbers::pi;

const std::vector<Vec2>& probes() {
  static const std::vector<Vec2> pts{{0.3, 0.7}, {0.125, 0.9}, {0.61, 0.2}};
  return pts;
}

std::vector<Vec2> boundary_points() {
  std::vector<Vec2> pts;
  for (double s : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    pts.push_back({s, 0.0});
    pts.push_back({s, 1.0});
    pts.push_back({0.0, s});
    pts.push_back({1.0, s});
  }
  return pts;
}

}  // namespace

TEST_CASE("univariate derivatives") {
  const Univariate s = Univariate::sin_pi(2.0);
  CHECK(s(0.3) == doctest::Approx(std::sin(0.6 * pi)));
  CHECK(s(0.3, 1) == doctest::Approx(2 * pi * std::cos(0.6 * pi)));
  CHECK(s(0.3, 2) == doctest::Approx(-4 * pi * pi * std::sin(0.6 * pi)));
  CHECK(s(0.3, 5) == doctest::Approx(std::pow(2 * pi, 5) * std::cos(0.6 * pi)));
  const Univariate c = Univariate::cos_pi();
  CHECK(c(0.2, 3) == doctest::Approx(std::pow(pi, 3) * std::sin(0.2 * pi)));
  const Univariate sq = Univariate::sin_squared_pi();
  // sin^2 = (1 - cos 2 pi x) / 2
  CHECK(sq(0.4) == doctest::Approx(std::pow(std::sin(0.4 * pi), 2)));
  CHECK(sq(0.4, 4) == doctest::Approx(-0.5 * std::pow(2 * pi, 4) * std::cos(0.8 * pi)));
  const Univariate p = Univariate::polynomial({1, -2, 0, 3});
  CHECK(p(2.0) == doctest::Approx(1 - 4 + 24));
  CHECK(p(2.0, 1) == doctest::Approx(-2 + 36));
  CHECK(p(2.0, 3) == doctest::Approx(18));
  CHECK(p(2.0, 4) == 0.0);
  const Univariate q = Univariate::polynomial_product({{1, 1}, {-1, 1}});  // x^2 - 1
  CHECK(q(3.0) == doctest::Approx(8));
  CHECK(q(3.0, 2) == doctest::Approx(2));
  CHECK(Univariate::constant(4.0)(0.1, 1) == 0.0);
}

TEST_CASE("scalar field algebra and derivatives") {
  const ScalarField a = ScalarField::separable(2.0, Univariate::sin_pi(), Univariate::polynomial({0, 0, 1}));
  const ScalarField b = ScalarField::constant(3.0);
  const Vec2 p(0.3, 0.4);
  CHECK(a(p) == doctest::Approx(2 * std::sin(0.3 * pi) * 0.16));
  CHECK((a + b)(p) == doctest::Approx(a(p) + 3));
  CHECK((a - b)(p) == doctest::Approx(a(p) - 3));
  CHECK((-a)(p) == doctest::Approx(-a(p)));
  CHECK((2.5 * a)(p) == doctest::Approx(2.5 * a(p)));
  CHECK(a.derivative(1, 1)(p) == doctest::Approx(2 * pi * std::cos(0.3 * pi) * 0.8));
  CHECK(d_dy(d_dy(a))(p) == doctest::Approx(4 * std::sin(0.3 * pi)));
  CHECK(d_dx(b)(p) == 0.0);
  CHECK(laplacian(a)(p) == doctest::Approx(-2 * pi * pi * std::sin(0.3 * pi) * 0.16 + 4 * std::sin(0.3 * pi)));
  const VectorField c = curl(a);
  CHECK(c.x(p) == doctest::Approx(d_dy(a)(p)));
  CHECK(c.y(p) == doctest::Approx(-d_dx(a)(p)));
  // rot curl = -Laplacian, div curl = 0
  CHECK(rot(c)(p) == doctest::Approx(-laplacian(a)(p)));
  CHECK(std::abs(div(c)(p)) < 1e-12);
  CHECK(a.fn()(p) == a(p));
}

TEST_CASE("catalog lookup") {
  CHECK(find_case("electric-trig").bc == BoundaryCondition::Electric);
  CHECK_THROWS_AS(find_case("nope"), std::invalid_argument);
  CHECK(default_case(ProblemKind::VectorLaplacian, BoundaryCondition::Magnetic).name == "magnetic-trig");
  CHECK(default_case(ProblemKind::VectorLaplacian, BoundaryCondition::Dirichlet).name == "dirichlet-trig");
  CHECK(default_case(ProblemKind::Stokes, BoundaryCondition::Electric).name == "stokes-poly");
  CHECK(default_case(ProblemKind::Biharmonic, BoundaryCondition::Electric).name == "biharmonic-sin2");
  CHECK(parse_problem("vlap") == ProblemKind::VectorLaplacian);
  CHECK(std::string(to_string(parse_problem("stokes"))) == "stokes");
  CHECK_THROWS_AS(parse_problem("heat"), std::invalid_argument);
}

TEST_CASE("trigonometric vector Laplacian loads are 2 pi^2 u") {
  for (const char* name : {"electric-trig", "magnetic-trig", "dirichlet-trig"}) {
    const ManufacturedCase& c = find_case(name);
    const VectorField f = derive_load(c).f;
    for (const Vec2& p : probes()) {
      CHECK(f.x(p) == doctest::Approx(2 * pi * pi * c.u.x(p)));
      CHECK(f.y(p) == doctest::Approx(2 * pi * pi * c.u.y(p)));
    }
  }
  const ManufacturedCase& e = find_case("electric-trig");
  const Vec2 p(0.3, 0.7);
  CHECK(e.sigma(p) == doctest::Approx(pi * std::cos(0.3 * pi) * std::cos(0.7 * pi)));
}

TEST_CASE("manufactured solutions satisfy their boundary conditions") {
  const auto bpts = boundary_points();
  const auto normal = [](const Vec2& p) {
    if (p.x() == 0.0) return Vec2(-1, 0);
    if (p.x() == 1.0) return Vec2(1, 0);
    if (p.y() == 0.0) return Vec2(0, -1);
    return Vec2(0, 1);
  };
  const ManufacturedCase& e = find_case("electric-trig");
  const ManufacturedCase& m = find_case("magnetic-trig");
  const ManufacturedCase& d = find_case("dirichlet-trig");
  const ManufacturedCase& s = find_case("stokes-poly");
  const ManufacturedCase& b = find_case("biharmonic-sin2");
  const ScalarField div_e = div(e.u);
  const VectorField grad_U = grad(b.U);
  for (const Vec2& p : bpts) {
    const Vec2 n = normal(p);
    const Vec2 t = rotate_cw(n);
    CHECK(std::abs(e.u(p).dot(t)) < 1e-14);
    CHECK(std::abs(div_e(p)) < 1e-13);
    CHECK(std::abs(m.u(p).dot(n)) < 1e-14);
    CHECK(std::abs(m.sigma(p)) < 1e-13);
    CHECK(d.u(p).norm() < 1e-14);
    CHECK(s.u(p).norm() < 1e-14);
    CHECK(std::abs(b.U(p)) < 1e-14);
    CHECK(grad_U(p).norm() < 1e-13);
  }
}

TEST_CASE("Stokes case is divergence free with the expected load") {
  const ManufacturedCase& c = find_case("stokes-poly");
  const VectorField f = derive_load(c).f;
  const ScalarField d = div(c.u);
  // values from an independent symbolic computation
  const double fx[] = {0.30703999999999987, 0.11472070312500005, -0.570883702};
  const double fy[] = {0.3070400000000001, 0.04996249999999999, -0.018709920000000047};
  const double rot_u[] = {-0.045864000000000016, 0.016574609374999997, -0.017355167200000007};
  for (std::size_t i = 0; i < probes().size(); ++i) {
    const Vec2& p = probes()[i];
    CHECK(std::abs(d(p)) < 1e-14);
    CHECK(f.x(p) == doctest::Approx(fx[i]).epsilon(1e-12));
    CHECK(f.y(p) == doctest::Approx(fy[i]).epsilon(1e-12));
    CHECK(c.sigma(p) == doctest::Approx(rot_u[i]).epsilon(1e-12));
  }
  CHECK(c.p(Vec2(0.5, 0.5)) == 0.0);
  CHECK(c.p(Vec2(1.0, 0.5)) == doctest::Approx(1.0 / 32));
}

TEST_CASE("biharmonic load is the bi-Laplacian") {
  const Load load = derive_load(find_case("biharmonic-sin2"));
  CHECK(load.g(Vec2(0.3, 0.7)) == doctest::Approx(389.63636413600995).epsilon(1e-12));
  CHECK(load.g(Vec2(0.125, 0.9)) == doctest::Approx(300.84674473577064).epsilon(1e-12));
  CHECK(load.f.x.is_zero());
}

TEST_CASE("finite-difference load check accepts the catalog and rejects a wrong sigma") {
  for (const ManufacturedCase& c : case_catalog()) {
    const LoadCheck check = validate_load(c);
    INFO(c.name << ": " << check.detail);
    CHECK(check.passed);
    CHECK(check.worst < 1e-6);
  }
  ManufacturedCase broken = find_case("electric-trig");
  broken.sigma = broken.sigma * 1.01;
  CHECK_FALSE(validate_load(broken).passed);
}
