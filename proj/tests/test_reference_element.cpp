#include "mixedfem/quadrature.hpp"
#include "mixedfem/reference_element.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace mixedfem;

namespace {

std::vector<Vec2> sample_points() {
  return {{0.1, 0.2}, {0.6, 0.3}, {0.25, 0.7}, {1.0 / 3, 1.0 / 3}, {0.05, 0.9}};
}

}  // namespace

TEST_CASE("DOF counts per family") {
  for (int r = 1; r <= 4; ++r) {
    CHECK(ReferenceElement::get(Family::Lagrange, r).num_dofs() == (r + 1) * (r + 2) / 2);
    CHECK(ReferenceElement::get(Family::RaviartThomas, r).num_dofs() == r * (r + 2));
    CHECK(ReferenceElement::get(Family::RaviartThomas, r).dofs_per_edge() == r);
    CHECK(ReferenceElement::get(Family::RaviartThomas, r).dofs_per_interior() == r * (r - 1));
    CHECK(ReferenceElement::get(Family::Lagrange, r).dofs_per_edge() == r - 1);
  }
  for (int k = 0; k <= 4; ++k) CHECK(ReferenceElement::get(Family::Discontinuous, k).num_dofs() == (k + 1) * (k + 2) / 2);
  CHECK_THROWS(ReferenceElement::get(Family::Lagrange, 0));
  CHECK_THROWS(ReferenceElement::get(Family::RaviartThomas, 5));
  CHECK_THROWS(ReferenceElement::get(Family::Discontinuous, -1));
}

TEST_CASE("bases are dual to their degrees of freedom") {
  for (Family f : {Family::Lagrange, Family::RaviartThomas}) {
    for (int r = 1; r <= 4; ++r) {
      const auto& el = ReferenceElement::get(f, r);
      const Eigen::MatrixXd d = el.duality_matrix();
      CHECK((d - Eigen::MatrixXd::Identity(d.rows(), d.cols())).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
  for (int k = 0; k <= 4; ++k) {
    // the monomial representation loses a few digits at k = 4
    const Eigen::MatrixXd d = ReferenceElement::get(Family::Discontinuous, k).duality_matrix();
    CHECK((d - Eigen::MatrixXd::Identity(d.rows(), d.cols())).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("lowest-order Raviart-Thomas basis is x minus the opposite vertex") {
  const std::vector<Vec2> pts = sample_points();
  const VectorTabulation tab = eval_rt(1, pts);
  REQUIRE(tab.values_x.cols() == 3);
  for (std::size_t q = 0; q < pts.size(); ++q) {
    for (int k = 0; k < 3; ++k) {
      const Vec2 expected = pts[q] - ReferenceElement::vertex(k);
      CHECK(tab.values_x(q, k) == doctest::Approx(expected.x()));
      CHECK(tab.values_y(q, k) == doctest::Approx(expected.y()));
      CHECK(tab.divergence(q, k) == doctest::Approx(2.0));
    }
  }
}

TEST_CASE("edge normals are outward and scaled by edge length") {
  for (int k = 0; k < 3; ++k) {
    const Vec2 a = ReferenceElement::edge_point(k, 0.0);
    const Vec2 b = ReferenceElement::edge_point(k, 1.0);
    CHECK((a - ReferenceElement::vertex((k + 1) % 3)).norm() < 1e-15);
    CHECK((b - ReferenceElement::vertex((k + 2) % 3)).norm() < 1e-15);
    const Vec2 nu = ReferenceElement::edge_normal(k);
    CHECK(nu.norm() == doctest::Approx((b - a).norm()));
    CHECK(nu.dot(b - a) == doctest::Approx(0.0));
    // points away from the opposite vertex
    CHECK(nu.dot(a - ReferenceElement::vertex(k)) > 0.0);
  }
}

TEST_CASE("linear Lagrange basis is the barycentric coordinates") {
  const std::vector<Vec2> pts = sample_points();
  const ScalarTabulation tab = eval_lagrange(1, pts);
  for (std::size_t q = 0; q < pts.size(); ++q) {
    const double x = pts[q].x(), y = pts[q].y();
    CHECK(tab.values(q, 0) == doctest::Approx(1 - x - y));
    CHECK(tab.values(q, 1) == doctest::Approx(x));
    CHECK(tab.values(q, 2) == doctest::Approx(y));
    CHECK(tab.grad_x(q, 0) == doctest::Approx(-1.0));
    CHECK(tab.grad_y(q, 2) == doctest::Approx(1.0));
  }
}

TEST_CASE("Lagrange bases form a partition of unity and are nodal") {
  const std::vector<Vec2> pts = sample_points();
  for (int r = 1; r <= 4; ++r) {
    const auto& el = ReferenceElement::get(Family::Lagrange, r);
    const ScalarTabulation tab = el.tabulate_scalar(pts);
    for (std::size_t q = 0; q < pts.size(); ++q) {
      CHECK(tab.values.row(q).sum() == doctest::Approx(1.0));
      CHECK(std::abs(tab.grad_x.row(q).sum()) < 1e-11);
      CHECK(std::abs(tab.grad_y.row(q).sum()) < 1e-11);
    }
    const ScalarTabulation at_nodes = el.tabulate_scalar(el.nodes());
    CHECK((at_nodes.values - Eigen::MatrixXd::Identity(el.num_dofs(), el.num_dofs())).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("discontinuous basis is orthonormal for twice the reference integral") {
  const QuadratureRule& rule = cached_triangle_quadrature(10);
  for (int k = 0; k <= 4; ++k) {
    const ScalarTabulation tab = eval_dg(k, rule.points);
    const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), rule.size());
    const Eigen::MatrixXd gram = 2.0 * tab.values.transpose() * w.asDiagonal() * tab.values;
    CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((tab.values.col(0).array() - 1.0).abs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("tabulated derivatives agree with differences of values") {
  const double h = 1e-6;
  const std::vector<Vec2> pts = sample_points();
  std::vector<Vec2> px, mx, py, my;
  for (const Vec2& p : pts) {
    px.push_back(p + Vec2(h, 0));
    mx.push_back(p - Vec2(h, 0));
    py.push_back(p + Vec2(0, h));
    my.push_back(p - Vec2(0, h));
  }
  for (int r = 1; r <= 4; ++r) {
    const auto& el = ReferenceElement::get(Family::Lagrange, r);
    const ScalarTabulation t = el.tabulate_scalar(pts);
    const Eigen::MatrixXd dx = (el.tabulate_scalar(px).values - el.tabulate_scalar(mx).values) / (2 * h);
    const Eigen::MatrixXd dy = (el.tabulate_scalar(py).values - el.tabulate_scalar(my).values) / (2 * h);
    const double scale = std::max(1.0, std::max(t.grad_x.cwiseAbs().maxCoeff(), t.grad_y.cwiseAbs().maxCoeff()));
    CHECK((dx - t.grad_x).cwiseAbs().maxCoeff() < 1e-6 * scale);
    CHECK((dy - t.grad_y).cwiseAbs().maxCoeff() < 1e-6 * scale);

    const auto& rt = ReferenceElement::get(Family::RaviartThomas, r);
    const VectorTabulation v = rt.tabulate_vector(pts);
    const Eigen::MatrixXd div = (rt.tabulate_vector(px).values_x - rt.tabulate_vector(mx).values_x) / (2 * h) +
                                (rt.tabulate_vector(py).values_y - rt.tabulate_vector(my).values_y) / (2 * h);
    CHECK((div - v.divergence).cwiseAbs().maxCoeff() < 1e-6 * std::max(1.0, v.divergence.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("Raviart-Thomas normal components on an edge depend only on edge moments") {
  // v.nu on edge k lies in P_{r-1}(e) and vanishes for every basis function
  // not attached to that edge
  for (int r = 1; r <= 4; ++r) {
    const auto& rt = ReferenceElement::get(Family::RaviartThomas, r);
    for (int k = 0; k < 3; ++k) {
      std::vector<Vec2> pts;
      for (double s : {0.1, 0.35, 0.5, 0.8}) pts.push_back(ReferenceElement::edge_point(k, s));
      const VectorTabulation tab = rt.tabulate_vector(pts);
      const Vec2 nu = ReferenceElement::edge_normal(k);
      for (int j = 0; j < rt.num_dofs(); ++j) {
        const DofDescriptor& d = rt.dofs()[j];
        if (d.kind == EntityKind::Edge && d.entity == k) continue;
        for (std::size_t q = 0; q < pts.size(); ++q) {
          CHECK(std::abs(tab.values_x(q, j) * nu.x() + tab.values_y(q, j) * nu.y()) < 1e-11);
        }
      }
    }
  }
}

TEST_CASE("apply_dofs reproduces basis coefficients of a local polynomial") {
  const auto& el = ReferenceElement::get(Family::RaviartThomas, 3);
  Eigen::VectorXd c(el.num_dofs());
  for (int i = 0; i < c.size(); ++i) c[i] = std::sin(1.0 + i);
  const VectorFn v = [&](const Vec2& p) {
    const std::vector<Vec2> pt{p};
    const VectorTabulation t = el.tabulate_vector(pt);
    return Vec2(t.values_x.row(0).dot(c), t.values_y.row(0).dot(c));
  };
  CHECK((el.apply_dofs(v, 10) - c).cwiseAbs().maxCoeff() < 1e-11);
}
