#include "mixedfem/reference_element.hpp"

#include "mixedfem/quadrature.hpp"

#include <array>
#include <memory>
#include <stdexcept>
#include <string>

namespace mixedfem {

const char* to_string(Family f) {
  switch (f) {
    case Family::Lagrange: return "lagrange";
    case Family::RaviartThomas: return "raviart_thomas";
    case Family::Discontinuous: return "discontinuous";
  }
  return "?";
}

namespace {

constexpr int kMaxDegree = 4;

void check_degree(Family family, int degree) {
  const int lo = family == Family::Discontinuous ? 0 : 1;
  if (degree < lo || degree > kMaxDegree) {
    throw std::invalid_argument(std::string("unsupported degree ") + std::to_string(degree) + " for " +
                                to_string(family) + " element");
  }
}

}  // namespace

Vec2 ReferenceElement::vertex(int i) {
  static const std::array<Vec2, 3> v{Vec2(0.0, 0.0), Vec2(1.0, 0.0), Vec2(0.0, 1.0)};
  return v[i];
}

Vec2 ReferenceElement::edge_point(int k, double s) {
  const Vec2 a = vertex((k + 1) % 3);
  const Vec2 b = vertex((k + 2) % 3);
  return a + s * (b - a);
}

Vec2 ReferenceElement::edge_normal(int k) {
  return rotate_cw(vertex((k + 2) % 3) - vertex((k + 1) % 3));
}

const ReferenceElement& ReferenceElement::get(Family family, int degree) {
  check_degree(family, degree);
  using Table = std::array<std::array<std::unique_ptr<ReferenceElement>, kMaxDegree + 1>, 3>;
  static const Table table = [] {
    Table t;
    for (int f = 0; f < 3; ++f) {
      const auto fam = static_cast<Family>(f);
      for (int d = fam == Family::Discontinuous ? 0 : 1; d <= kMaxDegree; ++d) {
        t[f][d].reset(new ReferenceElement(fam, d));
      }
    }
    return t;
  }();
  return *table[static_cast<int>(family)][degree];
}

ReferenceElement::ReferenceElement(Family family, int degree)
    : family_(family), degree_(degree), monomials_(degree) {
  // RT_r needs x * P_{r-1}, so all three families use monomials up to degree.
  const int nm = monomials_.size();
  const int quad = 2 * monomials_.degree() + 2;

  switch (family) {
    case Family::Lagrange: {
      const int r = degree;
      for (int v = 0; v < 3; ++v) {
        dofs_.push_back({EntityKind::Vertex, v, 0});
        nodes_.push_back(vertex(v));
      }
      for (int k = 0; k < 3; ++k) {
        for (int j = 1; j < r; ++j) {
          dofs_.push_back({EntityKind::Edge, k, j - 1});
          nodes_.push_back(edge_point(k, static_cast<double>(j) / r));
        }
      }
      int m = 0;
      for (int j = 1; j < r; ++j) {
        for (int i = 1; i + j < r; ++i) {
          dofs_.push_back({EntityKind::Interior, 0, m++});
          nodes_.emplace_back(static_cast<double>(i) / r, static_cast<double>(j) / r);
        }
      }
      const Eigen::MatrixXd span = Eigen::MatrixXd::Identity(nm, nm);
      const Eigen::MatrixXd vandermonde = functionals_on(span, Eigen::MatrixXd(), quad);
      coeff_x_ = vandermonde.fullPivLu().inverse();
      break;
    }
    case Family::Discontinuous: {
      for (int i = 0; i < nm; ++i) dofs_.push_back({EntityKind::Interior, 0, i});
      const QuadratureRule& rule = cached_triangle_quadrature(quad);
      Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(nm, nm);
      for (int q = 0; q < rule.size(); ++q) {
        const Eigen::VectorXd m = monomials_.values(rule.points[q]);
        gram += 2.0 * rule.weights[q] * m * m.transpose();
      }
      // phi = L^{-1} m with gram = L L^T, so phi_0 = m_0 / sqrt(gram_00) = 1.
      Eigen::LLT<Eigen::MatrixXd> llt(gram);
      const Eigen::MatrixXd linv =
          llt.matrixL().solve(Eigen::MatrixXd::Identity(nm, nm));
      coeff_x_ = linv.transpose();
      break;
    }
    case Family::RaviartThomas: {
      const int r = degree;
      for (int k = 0; k < 3; ++k) {
        for (int j = 0; j < r; ++j) dofs_.push_back({EntityKind::Edge, k, j});
      }
      for (int m = 0; m < r * (r - 1); ++m) dofs_.push_back({EntityKind::Interior, 0, m});

      // Spanning set: P_{r-1}^2 plus x * (homogeneous P_{r-1}).
      const int n_low = MonomialSet::count(r - 1);
      const int n_span = 2 * n_low + r;
      Eigen::MatrixXd cx = Eigen::MatrixXd::Zero(nm, n_span);
      Eigen::MatrixXd cy = Eigen::MatrixXd::Zero(nm, n_span);
      for (int i = 0; i < n_low; ++i) {
        cx(i, 2 * i) = 1.0;
        cy(i, 2 * i + 1) = 1.0;
      }
      for (int b = 0; b < r; ++b) {
        const int a = r - 1 - b;
        cx(MonomialSet::index(a + 1, b), 2 * n_low + b) = 1.0;
        cy(MonomialSet::index(a, b + 1), 2 * n_low + b) = 1.0;
      }
      const Eigen::MatrixXd vandermonde = functionals_on(cx, cy, quad);
      const Eigen::MatrixXd inv = vandermonde.fullPivLu().inverse();
      coeff_x_ = cx * inv;
      coeff_y_ = cy * inv;
      break;
    }
  }
}

int ReferenceElement::dofs_per_vertex() const { return family_ == Family::Lagrange ? 1 : 0; }

int ReferenceElement::dofs_per_edge() const {
  switch (family_) {
    case Family::Lagrange: return degree_ - 1;
    case Family::RaviartThomas: return degree_;
    case Family::Discontinuous: return 0;
  }
  return 0;
}

int ReferenceElement::dofs_per_interior() const {
  return num_dofs() - 3 * dofs_per_vertex() - 3 * dofs_per_edge();
}

ScalarTabulation ReferenceElement::tabulate_scalar(std::span<const Vec2> points) const {
  if (is_vector()) throw std::logic_error("tabulate_scalar called on a vector element");
  const int np = static_cast<int>(points.size());
  const int nm = monomials_.size();
  Eigen::MatrixXd mv(np, nm), mx(np, nm), my(np, nm);
  for (int p = 0; p < np; ++p) {
    mv.row(p) = monomials_.values(points[p]).transpose();
    const Eigen::MatrixX2d g = monomials_.gradients(points[p]);
    mx.row(p) = g.col(0).transpose();
    my.row(p) = g.col(1).transpose();
  }
  return {mv * coeff_x_, mx * coeff_x_, my * coeff_x_};
}

VectorTabulation ReferenceElement::tabulate_vector(std::span<const Vec2> points) const {
  if (!is_vector()) throw std::logic_error("tabulate_vector called on a scalar element");
  const int np = static_cast<int>(points.size());
  const int nm = monomials_.size();
  Eigen::MatrixXd mv(np, nm), mx(np, nm), my(np, nm);
  for (int p = 0; p < np; ++p) {
    mv.row(p) = monomials_.values(points[p]).transpose();
    const Eigen::MatrixX2d g = monomials_.gradients(points[p]);
    mx.row(p) = g.col(0).transpose();
    my.row(p) = g.col(1).transpose();
  }
  return {mv * coeff_x_, mv * coeff_y_, mx * coeff_x_ + my * coeff_y_};
}

Eigen::VectorXd ReferenceElement::apply_dofs(const ScalarFn& f, int quad_degree) const {
  if (is_vector()) throw std::logic_error("scalar functionals requested on a vector element");
  Eigen::VectorXd out(num_dofs());
  if (family_ == Family::Lagrange) {
    for (int i = 0; i < num_dofs(); ++i) out[i] = f(nodes_[i]);
    return out;
  }
  const QuadratureRule& rule = cached_triangle_quadrature(std::min(quad_degree, 20));
  out.setZero();
  const ScalarTabulation tab = tabulate_scalar(rule.points);
  for (int q = 0; q < rule.size(); ++q) {
    out += 2.0 * rule.weights[q] * f(rule.points[q]) * tab.values.row(q).transpose();
  }
  return out;
}

Eigen::VectorXd ReferenceElement::apply_dofs(const VectorFn& f, int quad_degree) const {
  if (!is_vector()) throw std::logic_error("vector functionals requested on a scalar element");
  const int r = degree_;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(num_dofs());
  const LineRule line = gauss_line(std::min(quad_degree, 40));
  for (int k = 0; k < 3; ++k) {
    const Vec2 nu = edge_normal(k);
    for (std::size_t q = 0; q < line.points.size(); ++q) {
      const double s = line.points[q];
      const double flux = f(edge_point(k, s)).dot(nu) * line.weights[q];
      for (int j = 0; j < r; ++j) out[k * r + j] += flux * legendre(j, 2.0 * s - 1.0);
    }
  }
  if (r >= 2) {
    const MonomialSet test(r - 2);
    const QuadratureRule& rule = cached_triangle_quadrature(std::min(std::max(quad_degree, 1), 20));
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 v = f(rule.points[q]) * rule.weights[q];
      const Eigen::VectorXd m = test.values(rule.points[q]);
      for (int i = 0; i < test.size(); ++i) {
        out[3 * r + 2 * i] += v.x() * m[i];
        out[3 * r + 2 * i + 1] += v.y() * m[i];
      }
    }
  }
  return out;
}

Eigen::MatrixXd ReferenceElement::functionals_on(const Eigen::MatrixXd& cx, const Eigen::MatrixXd& cy,
                                                 int quad_degree) const {
  const int ncols = static_cast<int>(cx.cols());
  Eigen::MatrixXd out(num_dofs(), ncols);
  for (int c = 0; c < ncols; ++c) {
    if (is_vector()) {
      const Eigen::VectorXd ax = cx.col(c);
      const Eigen::VectorXd ay = cy.col(c);
      out.col(c) = apply_dofs(
          VectorFn([&](const Vec2& p) {
            const Eigen::VectorXd m = monomials_.values(p);
            return Vec2(m.dot(ax), m.dot(ay));
          }),
          quad_degree);
    } else {
      const Eigen::VectorXd ax = cx.col(c);
      out.col(c) = apply_dofs(ScalarFn([&](const Vec2& p) { return monomials_.values(p).dot(ax); }), quad_degree);
    }
  }
  return out;
}

Eigen::MatrixXd ReferenceElement::duality_matrix() const {
  return functionals_on(coeff_x_, coeff_y_, 2 * monomials_.degree() + 2);
}

ScalarTabulation eval_lagrange(int r, std::span<const Vec2> points) {
  return ReferenceElement::get(Family::Lagrange, r).tabulate_scalar(points);
}

VectorTabulation eval_rt(int r, std::span<const Vec2> points) {
  return ReferenceElement::get(Family::RaviartThomas, r).tabulate_vector(points);
}

ScalarTabulation eval_dg(int k, std::span<const Vec2> points) {
  return ReferenceElement::get(Family::Discontinuous, k).tabulate_scalar(points);
}

}  // namespace mixedfem
