#include "mixedfem/cases.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mixedfem {

const char* to_string(ProblemKind p) {
  switch (p) {
    case ProblemKind::VectorLaplacian: return "vlap";
    case ProblemKind::Biharmonic: return "biharmonic";
    case ProblemKind::Stokes: return "stokes";
  }
  return "?";
}

ProblemKind parse_problem(const std::string& s) {
  if (s == "vlap") return ProblemKind::VectorLaplacian;
  if (s == "biharmonic") return ProblemKind::Biharmonic;
  if (s == "stokes") return ProblemKind::Stokes;
  throw std::invalid_argument("unknown problem '" + s + "'");
}

namespace {

using U1 = Univariate;

ManufacturedCase vector_case(std::string name, std::optional<BoundaryCondition> bc, VectorField u) {
  ManufacturedCase c{std::move(name), ProblemKind::VectorLaplacian, bc, u, rot(u), {}, {}};
  return c;
}

std::vector<ManufacturedCase> build_catalog() {
  std::vector<ManufacturedCase> cases;

  cases.push_back(vector_case("electric-trig", BoundaryCondition::Electric,
                              {ScalarField::separable(1.0, U1::cos_pi(), U1::sin_pi()),
                               ScalarField::separable(2.0, U1::sin_pi(), U1::cos_pi())}));
  cases.push_back(vector_case("magnetic-trig", BoundaryCondition::Magnetic,
                              {ScalarField::separable(1.0, U1::sin_pi(), U1::cos_pi()),
                               ScalarField::separable(2.0, U1::cos_pi(), U1::sin_pi())}));
  {
    const ScalarField s = ScalarField::separable(1.0, U1::sin_pi(), U1::sin_pi());
    cases.push_back(vector_case("dirichlet-trig", BoundaryCondition::Dirichlet, {s, s}));
  }
  // vanishes identically, so it fits every boundary condition
  cases.push_back(vector_case("zero", std::nullopt, {ScalarField::constant(0.0), ScalarField::constant(0.0)}));

  {
    // u = (-2 x^2 (x-1)^2 y (2y-1)(y-1), 2 y^2 (y-1)^2 x (2x-1)(x-1))
    const U1 x2x1sq = U1::polynomial_product({{0, 0, 1}, {1, -2, 1}});
    const U1 y2y1y1 = U1::polynomial_product({{0, 1}, {-1, 2}, {-1, 1}});
    VectorField u{ScalarField::separable(-2.0, x2x1sq, y2y1y1), ScalarField::separable(2.0, y2y1y1, x2x1sq)};
    // p = (x - 1/2)^5 + (y - 1/2)^5
    const U1 quintic = U1::polynomial_product(std::vector<std::vector<double>>(5, {-0.5, 1.0}));
    const ScalarField p = ScalarField::separable(1.0, quintic, U1::constant(1.0)) +
                          ScalarField::separable(1.0, U1::constant(1.0), quintic);
    cases.push_back({"stokes-poly", ProblemKind::Stokes, BoundaryCondition::Dirichlet, u, rot(u), p, {}});
  }
  {
    const ScalarField U = ScalarField::separable(1.0, U1::sin_squared_pi(), U1::sin_squared_pi());
    cases.push_back({"biharmonic-sin2", ProblemKind::Biharmonic, std::nullopt, {}, -laplacian(U), {}, U});
  }
  return cases;
}

}  // namespace

const std::vector<ManufacturedCase>& case_catalog() {
  static const std::vector<ManufacturedCase> catalog = build_catalog();
  return catalog;
}

const ManufacturedCase& find_case(const std::string& name) {
  for (const ManufacturedCase& c : case_catalog()) {
    if (c.name == name) return c;
  }
  throw std::invalid_argument("unknown case '" + name + "'");
}

const ManufacturedCase& default_case(ProblemKind problem, BoundaryCondition bc) {
  switch (problem) {
    case ProblemKind::Stokes: return find_case("stokes-poly");
    case ProblemKind::Biharmonic: return find_case("biharmonic-sin2");
    case ProblemKind::VectorLaplacian: break;
  }
  switch (bc) {
    case BoundaryCondition::Electric: return find_case("electric-trig");
    case BoundaryCondition::Magnetic: return find_case("magnetic-trig");
    case BoundaryCondition::Dirichlet: return find_case("dirichlet-trig");
  }
  throw std::invalid_argument("default_case: bad boundary condition");
}

Load derive_load(const ManufacturedCase& c) {
  Load load;
  switch (c.problem) {
    case ProblemKind::VectorLaplacian: load.f = curl(rot(c.u)) - grad(div(c.u)); break;
    case ProblemKind::Stokes: load.f = curl(rot(c.u)) + grad(c.p); break;
    case ProblemKind::Biharmonic: load.g = laplacian(laplacian(c.U)); break;
  }
  return load;
}

namespace {

constexpr double kStep = 1e-3;

// fourth-order central first differences along a unit direction
template <class F>
double fd1(const F& f, const Vec2& p, const Vec2& dir) {
  const double h = kStep;
  return (-f(p + 2 * h * dir) + 8 * f(p + h * dir) - 8 * f(p - h * dir) + f(p - 2 * h * dir)) / (12 * h);
}

template <class F>
double fd2(const F& f, const Vec2& p, const Vec2& dir) {
  const double h = kStep;
  return (-f(p + 2 * h * dir) + 16 * f(p + h * dir) - 30 * f(p) + 16 * f(p - h * dir) - f(p - 2 * h * dir)) /
         (12 * h * h);
}

const Vec2 ex(1.0, 0.0);
const Vec2 ey(0.0, 1.0);

double fd_rot(const ScalarFn& ux, const ScalarFn& uy, const Vec2& p) { return fd1(uy, p, ex) - fd1(ux, p, ey); }

double fd_laplacian(const ScalarFn& f, const Vec2& p) { return fd2(f, p, ex) + fd2(f, p, ey); }

// second derivatives of a scalar field: (xx, xy, yy)
struct Hessian {
  double xx, xy, yy;
};

Hessian fd_hessian(const ScalarFn& f, const Vec2& p) {
  const ScalarFn fy = [&](const Vec2& q) { return fd1(f, q, ey); };
  return {fd2(f, p, ex), fd1(fy, p, ex), fd2(f, p, ey)};
}

// curl rot u - grad div u from second differences of u
Vec2 fd_vector_laplacian(const ScalarFn& ux, const ScalarFn& uy, const Vec2& p) {
  const Hessian hx = fd_hessian(ux, p);
  const Hessian hy = fd_hessian(uy, p);
  // rot u = dx uy - dy ux, div u = dx ux + dy uy
  const double rot_y = hy.xy - hx.yy;
  const double rot_x = hy.xx - hx.xy;
  const double div_x = hx.xx + hy.xy;
  const double div_y = hx.xy + hy.yy;
  return {rot_y - div_x, -rot_x - div_y};
}

class Comparison {
 public:
  void add(double analytic, double approx) {
    scale_ = std::max(scale_, std::abs(analytic));
    diff_ = std::max(diff_, std::abs(analytic - approx));
  }
  double relative() const { return diff_ / std::max(1.0, scale_); }

 private:
  double scale_ = 0.0;
  double diff_ = 0.0;
};

}  // namespace

LoadCheck validate_load(const ManufacturedCase& c, int samples, double tol, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::vector<Vec2> points(samples);
  for (Vec2& p : points) p = Vec2(coord(rng), coord(rng));

  const Load load = derive_load(c);
  LoadCheck out;
  std::ostringstream detail;
  auto record = [&](const char* what, const Comparison& cmp) {
    const double rel = cmp.relative();
    out.worst = std::max(out.worst, rel);
    if (rel > tol) out.passed = false;
    detail << what << " " << rel << "; ";
  };

  if (c.problem == ProblemKind::Biharmonic) {
    // chained: sigma against U, then g against sigma
    const ScalarFn U = c.U.fn();
    const ScalarFn sigma = c.sigma.fn();
    Comparison cs, cg;
    for (const Vec2& p : points) {
      cs.add(c.sigma(p), -fd_laplacian(U, p));
      cg.add(load.g(p), -fd_laplacian(sigma, p));
    }
    record("sigma", cs);
    record("g", cg);
  } else {
    const ScalarFn ux = c.u.x.fn();
    const ScalarFn uy = c.u.y.fn();
    const ScalarFn p_fn = c.p.fn();
    Comparison cs, cf;
    for (const Vec2& p : points) {
      cs.add(c.sigma(p), fd_rot(ux, uy, p));
      Vec2 f = fd_vector_laplacian(ux, uy, p);
      if (c.problem == ProblemKind::Stokes) {
        // div u = 0, so the grad div part above vanishes up to truncation
        const Vec2 gp(fd1(p_fn, p, ex), fd1(p_fn, p, ey));
        const Hessian hx = fd_hessian(ux, p);
        const Hessian hy = fd_hessian(uy, p);
        f += Vec2(hx.xx + hy.xy, hx.xy + hy.yy) + gp;
      }
      const Vec2 fa = load.f(p);
      cf.add(fa.x(), f.x());
      cf.add(fa.y(), f.y());
    }
    record("sigma", cs);
    record("f", cf);
  }
  out.detail = detail.str();
  return out;
}

}  // namespace mixedfem
