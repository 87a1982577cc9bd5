#include "mixedfem/space.hpp"

#include <doctest.h>

#include <cmath>

using namespace mixedfem;

namespace {

std::shared_ptr<const Mesh> square(int n) { return std::make_shared<const Mesh>(build_uniform_square(n)); }

int lagrange_count(int n, int r) {
  const int nv = (n + 1) * (n + 1), ne = 3 * n * n + 2 * n, nt = 2 * n * n;
  return nv + (r - 1) * ne + (r - 1) * (r - 2) / 2 * nt;
}

int rt_count(int n, int r) { return r * (3 * n * n + 2 * n) + r * (r - 1) * 2 * n * n; }

// reference point of triangle t that maps to x (x assumed inside)
Vec2 ref_of(const Mesh& m, int t, const Vec2& x) { return cell_geometry(m, t).pullback(x); }

}  // namespace

TEST_CASE("global DOF counts") {
  for (int n : {1, 2, 5}) {
    const auto mesh = square(n);
    for (int r = 1; r <= 4; ++r) {
      const auto lag = build_space(mesh, Family::Lagrange, r);
      const auto lag0 = build_space(mesh, Family::Lagrange, r, Constraint::ZeroTrace);
      const auto rt = build_space(mesh, Family::RaviartThomas, r);
      const auto rt0 = build_space(mesh, Family::RaviartThomas, r, Constraint::ZeroNormalTrace);
      const auto dg = build_space(mesh, Family::Discontinuous, r - 1);
      CHECK(lag->num_dofs() == lagrange_count(n, r));
      CHECK(lag0->num_dofs() == lagrange_count(n, r) - 4 * n * r);
      CHECK(lag0->num_full_dofs() == lagrange_count(n, r));
      CHECK(rt->num_dofs() == rt_count(n, r));
      CHECK(rt0->num_dofs() == rt_count(n, r) - 4 * n * r);
      CHECK(dg->num_dofs() == r * (r + 1) / 2 * 2 * n * n);
      CHECK(static_cast<int>(rt0->constrained_dofs().size()) == 4 * n * r);
    }
  }
}

TEST_CASE("incompatible constraints are rejected") {
  const auto mesh = square(2);
  CHECK_THROWS_AS(build_space(mesh, Family::Lagrange, 1, Constraint::ZeroNormalTrace), std::invalid_argument);
  CHECK_THROWS_AS(build_space(mesh, Family::RaviartThomas, 1, Constraint::ZeroTrace), std::invalid_argument);
  CHECK_THROWS_AS(build_space(mesh, Family::Lagrange, 1, Constraint::MeanZero), std::invalid_argument);
  CHECK_NOTHROW(build_space(mesh, Family::Discontinuous, 0, Constraint::MeanZero));
  CHECK_THROWS_AS(build_space(nullptr, Family::Lagrange, 1), std::invalid_argument);
}

TEST_CASE("cell geometry maps reference vertices to mesh vertices") {
  const Mesh m = perturb_interior(build_uniform_square(4), 0.3, 5);
  for (int t = 0; t < m.num_triangles(); ++t) {
    const CellGeometry g = cell_geometry(m, t);
    for (int k = 0; k < 3; ++k) CHECK((g.map(ReferenceElement::vertex(k)) - m.vertex(m.triangle(t)[k])).norm() < 1e-14);
    CHECK(g.area() == doctest::Approx(m.signed_area(t)));
    CHECK((g.jacobian * g.inverse - Mat2::Identity()).norm() < 1e-13);
  }
}

TEST_CASE("Lagrange interpolation reproduces polynomials of degree r") {
  const auto mesh = std::make_shared<const Mesh>(perturb_interior(build_uniform_square(3), 0.25, 9));
  for (int r = 1; r <= 4; ++r) {
    const auto space = build_space(mesh, Family::Lagrange, r);
    const ScalarFn p = [r](const Vec2& x) { return std::pow(x.x() - 0.3, r) + std::pow(x.y(), r) + x.x() * std::pow(x.y(), r - 1); };
    const FeFunction f = interpolate(space, p);
    for (int t = 0; t < mesh->num_triangles(); ++t) {
      const CellGeometry g = cell_geometry(*mesh, t);
      for (const Vec2& ref : {Vec2(0.2, 0.3), Vec2(0.7, 0.1)}) {
        CHECK(evaluate_scalar(f, t, ref) == doctest::Approx(p(g.map(ref))).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("Raviart-Thomas interpolation reproduces full P_{r-1} vectors and div") {
  const auto mesh = std::make_shared<const Mesh>(perturb_interior(build_uniform_square(3), 0.25, 11));
  for (int r = 1; r <= 4; ++r) {
    const auto space = build_space(mesh, Family::RaviartThomas, r);
    const int k = r - 1;
    const VectorFn v = [k](const Vec2& x) {
      return Vec2(std::pow(x.x(), k) + 0.5 * std::pow(x.y(), k), 1.0 - std::pow(x.x() + x.y(), k));
    };
    const ScalarFn dv = [k](const Vec2& x) {
      return k == 0 ? 0.0 : k * std::pow(x.x(), k - 1) - k * std::pow(x.x() + x.y(), k - 1);
    };
    const FeFunction f = interpolate(space, v);
    for (int t = 0; t < mesh->num_triangles(); ++t) {
      const CellGeometry g = cell_geometry(*mesh, t);
      for (const Vec2& ref : {Vec2(0.2, 0.3), Vec2(0.6, 0.2)}) {
        CHECK((evaluate_vector(f, t, ref) - v(g.map(ref))).norm() < 1e-11);
        CHECK(evaluate_divergence(f, t, ref) == doctest::Approx(dv(g.map(ref))).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("discontinuous interpolation is exact on P_k and gives cell means") {
  const auto mesh = square(3);
  const auto dg0 = build_space(mesh, Family::Discontinuous, 0);
  const ScalarFn f = [](const Vec2& x) { return x.x() * x.x(); };
  const FeFunction means = interpolate(dg0, f);
  for (int t = 0; t < mesh->num_triangles(); ++t) {
    const auto& tri = mesh->triangle(t);
    // mean of x^2 over a triangle: (sum x_i^2 + sum_{i<j} x_i x_j) / 6
    const double a = mesh->vertex(tri[0]).x(), b = mesh->vertex(tri[1]).x(), c = mesh->vertex(tri[2]).x();
    const double mean = (a * a + b * b + c * c + a * b + b * c + a * c) / 6;
    CHECK(evaluate_scalar(means, t, Vec2(0.3, 0.3)) == doctest::Approx(mean));
  }
  const auto dg2 = build_space(mesh, Family::Discontinuous, 2);
  const FeFunction exact = interpolate(dg2, f);
  CHECK(evaluate_scalar(exact, 4, Vec2(0.1, 0.6)) == doctest::Approx(f(cell_geometry(*mesh, 4).map(Vec2(0.1, 0.6)))));
}

TEST_CASE("Lagrange functions are continuous across interior edges") {
  const auto mesh = std::make_shared<const Mesh>(perturb_interior(build_uniform_square(4), 0.2, 3));
  for (int r = 1; r <= 4; ++r) {
    const auto space = build_space(mesh, Family::Lagrange, r);
    Eigen::VectorXd c(space->num_dofs());
    for (int i = 0; i < c.size(); ++i) c[i] = std::cos(0.7 * i);
    const FeFunction f(space, c);
    for (int t = 0; t < mesh->num_triangles(); ++t) {
      for (int k = 0; k < 3; ++k) {
        const int e = mesh->triangle_edge(t, k);
        if (mesh->is_boundary_edge(e)) continue;
        const Vec2 x = 0.37 * mesh->vertex(mesh->edge(e)[0]) + 0.63 * mesh->vertex(mesh->edge(e)[1]);
        for (int s = 0; s < mesh->num_triangles(); ++s) {
          if (s == t) continue;
          for (int j = 0; j < 3; ++j) {
            if (mesh->triangle_edge(s, j) != e) continue;
            CHECK(evaluate_scalar(f, t, ref_of(*mesh, t, x)) ==
                  doctest::Approx(evaluate_scalar(f, s, ref_of(*mesh, s, x))).epsilon(1e-11));
          }
        }
      }
    }
  }
}

TEST_CASE("Raviart-Thomas functions have continuous normal components") {
  const auto mesh = std::make_shared<const Mesh>(perturb_interior(build_uniform_square(4), 0.2, 4));
  for (int r = 1; r <= 4; ++r) {
    const auto space = build_space(mesh, Family::RaviartThomas, r);
    Eigen::VectorXd c(space->num_dofs());
    for (int i = 0; i < c.size(); ++i) c[i] = std::sin(1.3 * i + 0.2);
    const FeFunction f(space, c);
    std::vector<std::vector<int>> owners(mesh->num_edges());
    for (int t = 0; t < mesh->num_triangles(); ++t) {
      for (int k = 0; k < 3; ++k) owners[mesh->triangle_edge(t, k)].push_back(t);
    }
    for (int e = 0; e < mesh->num_edges(); ++e) {
      if (owners[e].size() != 2) continue;
      const Vec2 a = mesh->vertex(mesh->edge(e)[0]), b = mesh->vertex(mesh->edge(e)[1]);
      const Vec2 n = rotate_cw(b - a);
      for (double s : {0.15, 0.5, 0.9}) {
        const Vec2 x = (1 - s) * a + s * b;
        const int t0 = owners[e][0], t1 = owners[e][1];
        const double j0 = evaluate_vector(f, t0, ref_of(*mesh, t0, x)).dot(n);
        const double j1 = evaluate_vector(f, t1, ref_of(*mesh, t1, x)).dot(n);
        CHECK(j0 == doctest::Approx(j1).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("zero-trace spaces vanish on the boundary") {
  const auto mesh = square(3);
  const auto lag0 = build_space(mesh, Family::Lagrange, 3, Constraint::ZeroTrace);
  const auto rt0 = build_space(mesh, Family::RaviartThomas, 3, Constraint::ZeroNormalTrace);
  const FeFunction s(lag0, Eigen::VectorXd::Ones(lag0->num_dofs()));
  const FeFunction v(rt0, Eigen::VectorXd::Ones(rt0->num_dofs()));
  for (int t = 0; t < mesh->num_triangles(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int e = mesh->triangle_edge(t, k);
      if (!mesh->is_boundary_edge(e)) continue;
      const Vec2 ref = ReferenceElement::edge_point(k, 0.3);
      CHECK(std::abs(evaluate_scalar(s, t, ref)) < 1e-12);
      const Vec2 a = mesh->vertex(mesh->edge(e)[0]), b = mesh->vertex(mesh->edge(e)[1]);
      CHECK(std::abs(evaluate_vector(v, t, ref).dot(rotate_cw(b - a))) < 1e-12);
    }
  }
}

TEST_CASE("coefficient vectors must match the space") {
  const auto space = build_space(square(1), Family::Lagrange, 1);
  CHECK_THROWS_AS(FeFunction(space, Eigen::VectorXd::Zero(3)), std::invalid_argument);
  const VectorFn v = [](const Vec2&) { return Vec2(1, 0); };
  CHECK_THROWS_AS(interpolate(space, v), std::invalid_argument);
}
