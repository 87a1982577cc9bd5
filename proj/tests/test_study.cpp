#include "mixedfem/study.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace mixedfem;

namespace {

ConvergenceReport sample_report() {
  ConvergenceReport r;
  r.case_name = "sample";
  r.norms = {Norm::L2_u, Norm::L2_sigma};
  r.add_level(4, std::sqrt(2.0) / 4, {1e-2, 4e-3});
  r.add_level(8, std::sqrt(2.0) / 8, {2.5e-3, 5e-4});
  r.add_level(16, std::sqrt(2.0) / 16, {6.25e-4, 0.0});
  return r;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("L2 error of the zero function is the norm of the exact field") {
  const auto mesh = std::make_shared<const Mesh>(perturb_interior(build_uniform_square(5), 0.25, 2));
  const FeFunction zero_s(build_space(mesh, Family::Lagrange, 1));
  const FeFunction zero_v(build_space(mesh, Family::RaviartThomas, 1));
  // ||x|| = sqrt(1/3), ||(x, y)|| = sqrt(2/3), ||grad(xy)|| = sqrt(2/3)
  CHECK(l2_error(zero_s, [](const Vec2& x) { return x.x(); }, 4) == doctest::Approx(std::sqrt(1.0 / 3)));
  CHECK(l2_error(zero_v, [](const Vec2& x) { return x; }, 4) == doctest::Approx(std::sqrt(2.0 / 3)));
  CHECK(div_l2_error(zero_v, [](const Vec2&) { return 2.0; }, 2) == doctest::Approx(2.0));
  CHECK(gradient_l2_error(zero_s, [](const Vec2& x) { return Vec2(x.y(), x.x()); }, 4) ==
        doctest::Approx(std::sqrt(2.0 / 3)));
  CHECK_THROWS_AS(l2_error(zero_v, [](const Vec2&) { return 0.0; }, 4), std::invalid_argument);
  CHECK_THROWS_AS(div_l2_error(zero_s, [](const Vec2&) { return 0.0; }, 4), std::invalid_argument);
}

TEST_CASE("fields that lie in the discrete spaces have zero error") {
  // u = (-y, x) is in RT_2, sigma = rot u = 2 and p = x - 1/2 are exact too
  ManufacturedCase c;
  c.name = "rigid-rotation";
  c.problem = ProblemKind::Stokes;
  c.u = {ScalarField::separable(-1.0, Univariate::constant(1.0), Univariate::polynomial({0, 1})),
         ScalarField::separable(1.0, Univariate::polynomial({0, 1}), Univariate::constant(1.0))};
  c.sigma = rot(c.u);
  c.p = ScalarField::separable(1.0, Univariate::polynomial({-0.5, 1}), Univariate::constant(1.0));
  const auto mesh = std::make_shared<const Mesh>(perturb_interior(build_uniform_square(4), 0.25, 3));
  SolutionFields f;
  f.u = interpolate(build_space(mesh, Family::RaviartThomas, 2), c.u.fn());
  f.sigma = interpolate(build_space(mesh, Family::Lagrange, 2), c.sigma.fn());
  f.p = interpolate(build_space(mesh, Family::Discontinuous, 1), c.p.fn());
  for (double e : error_norms(f, c, study_norms(ProblemKind::Stokes))) CHECK(e <= 1e-12);
}

TEST_CASE("error norms are bitwise identical in serial and parallel") {
  const auto mesh = std::make_shared<const Mesh>(perturb_interior(build_uniform_square(16), 0.25, 5));
  const ManufacturedCase& c = find_case("electric-trig");
  const FeFunction u = interpolate(build_space(mesh, Family::RaviartThomas, 2), c.u.fn());
  CHECK(l2_error(u, c.u.fn(), 10, ExecPolicy::Serial) == l2_error(u, c.u.fn(), 10, ExecPolicy::Parallel));
  const ScalarFn d = div(c.u).fn();
  CHECK(div_l2_error(u, d, 10, ExecPolicy::Serial) == div_l2_error(u, d, 10, ExecPolicy::Parallel));
}

TEST_CASE("rates are log ratios over level ratios and blank where undefined") {
  const ConvergenceReport r = sample_report();
  REQUIRE(r.rows.size() == 3);
  CHECK_FALSE(r.rows[0].rates[0].has_value());
  CHECK(*r.rows[1].rates[0] == doctest::Approx(2.0));
  CHECK(*r.rows[1].rates[1] == doctest::Approx(std::log2(8.0)));
  CHECK(*r.rows[2].rates[0] == doctest::Approx(2.0));
  CHECK_FALSE(r.rows[2].rates[1].has_value());
  CHECK(r.column(Norm::L2_sigma) == 1);
  CHECK(r.column(Norm::L2_p) == -1);

  ConvergenceReport tiny;
  tiny.norms = {Norm::L2_u};
  tiny.add_level(4, 0.1, {1e-13});
  tiny.add_level(12, 0.05, {1e-14});
  CHECK_FALSE(tiny.rows[1].rates[0].has_value());
  ConvergenceReport odd;
  odd.norms = {Norm::L2_u};
  odd.add_level(4, 0.1, {9e-2});
  odd.add_level(12, 0.05, {1e-2});
  CHECK(*odd.rows[1].rates[0] == doctest::Approx(2.0));
  CHECK_THROWS_AS(odd.add_level(24, 0.01, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("emit_table with no rows prints only the header") {
  ConvergenceReport r;
  r.norms = study_norms(ProblemKind::VectorLaplacian);
  CHECK(emit_table(r, TableFormat::Csv) ==
        "n,h,err_u,rate_u,err_divu,rate_divu,err_sigma,rate_sigma,err_curlsigma,rate_curlsigma\n");
  const auto md = lines_of(emit_table(r, TableFormat::Markdown));
  REQUIRE(md.size() == 2);
  CHECK(md[1].find("---") != std::string::npos);
}

TEST_CASE("emit_table with one row leaves the rates blank") {
  ConvergenceReport r;
  r.norms = {Norm::L2_p};
  r.add_level(8, 0.17677669529663687, {1.234567e-3});
  CHECK(emit_table(r, TableFormat::Csv) == "n,h,err_p,rate_p\n8,1.77e-01,1.23e-03,\n");
  const auto md = lines_of(emit_table(r, TableFormat::Markdown));
  REQUIRE(md.size() == 3);
  CHECK(md[2] == "| 8 | 1.77e-01 | 1.23e-03 |  |");
}

TEST_CASE("CSV output parses back to the printed values") {
  const ConvergenceReport r = sample_report();
  const std::string csv = emit_table(r, TableFormat::Csv);
  const ConvergenceReport back = parse_csv(csv);
  REQUIRE(back.rows.size() == r.rows.size());
  CHECK(back.norms == r.norms);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    CHECK(back.rows[i].n == r.rows[i].n);
    CHECK(back.rows[i].h == doctest::Approx(r.rows[i].h).epsilon(0.01));
    for (std::size_t j = 0; j < r.norms.size(); ++j) {
      CHECK(back.rows[i].errors[j] == doctest::Approx(r.rows[i].errors[j]).epsilon(0.01));
      CHECK(back.rows[i].rates[j].has_value() == r.rows[i].rates[j].has_value());
    }
  }
  CHECK(emit_table(back, TableFormat::Csv) == csv);
  CHECK_THROWS_AS(parse_csv("x,y\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("n,h,err_u,rate_u\n4,0.1,1e-2\n"), std::invalid_argument);
  CHECK(parse_csv("").rows.empty());
}

TEST_CASE("option parsers") {
  CHECK(parse_mesh_kind("perturbed") == MeshKind::Perturbed);
  CHECK(parse_table_format("markdown") == TableFormat::Markdown);
  CHECK_THROWS_AS(parse_mesh_kind("random"), std::invalid_argument);
  CHECK_THROWS_AS(parse_table_format("json"), std::invalid_argument);
  CHECK(study_norms(ProblemKind::Stokes).back() == Norm::L2_p);
  CHECK(study_norms(ProblemKind::Biharmonic).front() == Norm::H1_U);
}

TEST_CASE("run_study validates its input") {
  CHECK_THROWS_AS(run_study(ProblemKind::VectorLaplacian, BoundaryCondition::Electric, 1, {8, 4}, MeshKind::Uniform),
                  std::invalid_argument);
  StudyOptions wrong;
  wrong.case_name = "stokes-poly";
  CHECK_THROWS_AS(
      run_study(ProblemKind::VectorLaplacian, BoundaryCondition::Electric, 1, {4}, MeshKind::Uniform, wrong),
      std::invalid_argument);
  StudyOptions zero;
  zero.case_name = "zero";
  const ConvergenceReport z =
      run_study(ProblemKind::VectorLaplacian, BoundaryCondition::Magnetic, 1, {2, 4}, MeshKind::Uniform, zero);
  for (const LevelRecord& rec : z.rows) {
    for (double e : rec.errors) CHECK(e == 0.0);
  }
}

TEST_CASE("error_norms needs every requested field") {
  SolutionFields empty;
  CHECK_THROWS_AS(error_norms(empty, find_case("electric-trig"), {Norm::L2_u}), std::invalid_argument);
}

TEST_CASE("reference values: electric sigma at n=64 and Dirichlet div u at n=32") {
  const ManufacturedCase& e = find_case("electric-trig");
  const SolutionFields fe =
      solve_case(ProblemKind::VectorLaplacian, BoundaryCondition::Electric, 2, make_mesh(MeshKind::Uniform, 64, 0, 0), e);
  CHECK(error_norms(fe, e, {Norm::L2_sigma})[0] == doctest::Approx(3.37e-6).epsilon(0.05));

  const ManufacturedCase& d = find_case("dirichlet-trig");
  const SolutionFields fd = solve_case(ProblemKind::VectorLaplacian, BoundaryCondition::Dirichlet, 2,
                                       make_mesh(MeshKind::Uniform, 32, 0, 0), d);
  CHECK(error_norms(fd, d, {Norm::L2_div_u})[0] == doctest::Approx(5.33e-3).epsilon(0.05));
}

TEST_CASE("perturbed meshes are reproducible from the seed") {
  const auto a = make_mesh(MeshKind::Perturbed, 6, 0.25, 9);
  const auto b = make_mesh(MeshKind::Perturbed, 6, 0.25, 9);
  for (int v = 0; v < a->num_vertices(); ++v) CHECK(a->vertex(v) == b->vertex(v));
}
