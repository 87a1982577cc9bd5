#include "mixedfem/verify.hpp"

#include "mixedfem/linalg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace mixedfem {

namespace {

using U1 = Univariate;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string rate_str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string tag(int n, int r) { return "n=" + std::to_string(n) + " r=" + std::to_string(r); }

std::shared_ptr<const Mesh> uniform(int n) { return std::make_shared<const Mesh>(build_uniform_square(n)); }

double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

double rel_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return max_abs(a - b) / std::max(1.0, std::max(max_abs(a), max_abs(b)));
}

double observed_rate(double coarse, double fine, int nc, int nf) {
  return std::log(coarse / fine) / std::log(double(nf) / nc);
}

}  // namespace

const std::vector<GoldenTable>& golden_tables() {
  static const std::vector<GoldenTable> tables = [] {
    const std::vector<Norm> vlap{Norm::L2_u, Norm::L2_div_u, Norm::L2_sigma, Norm::L2_curl_sigma};
    std::vector<GoldenTable> t;
    t.push_back({"table1-electric",
                 ProblemKind::VectorLaplacian,
                 BoundaryCondition::Electric,
                 2,
                 vlap,
                 {16, 32, 64, 128},
                 {{2.14e-03, 1.17e-02, 2.16e-04, 2.63e-02},
                  {5.37e-04, 2.93e-03, 2.70e-05, 6.60e-03},
                  {1.34e-04, 7.33e-04, 3.37e-06, 1.65e-03},
                  {3.36e-05, 1.83e-04, 4.16e-07, 4.14e-04}},
                 {{1.99, 1.99, 3.03, 1.98}, {1.99, 2.00, 3.00, 1.99}, {2.00, 2.00, 3.00, 2.00}, {2.00, 2.00, 3.02, 2.00}},
                 0.05,
                 {0.05, 0.05, 0.1, 0.05}});
    t.push_back({"table2-dirichlet",
                 ProblemKind::VectorLaplacian,
                 BoundaryCondition::Dirichlet,
                 2,
                 vlap,
                 {16, 32, 64, 128},
                 {{1.22e-03, 1.55e-02, 1.90e-02, 2.53e+00},
                  {3.05e-04, 5.33e-03, 6.36e-03, 1.68e+00},
                  {7.63e-05, 1.85e-03, 2.18e-03, 1.14e+00},
                  {1.91e-05, 6.49e-04, 7.58e-04, 7.89e-01}},
                 {{2.01, 1.58, 1.62, 0.63}, {2.00, 1.54, 1.58, 0.60}, {2.00, 1.52, 1.54, 0.56}, {2.00, 1.51, 1.52, 0.53}},
                 0.05,
                 {0.1, 0.1, 0.1, 0.1}});
    // The published rows agree with meshes n = 8..64 (u, sigma, curl sigma
    // match to all printed digits there).
    t.push_back({"table4-stokes",
                 ProblemKind::Stokes,
                 BoundaryCondition::Dirichlet,
                 2,
                 {Norm::L2_u, Norm::L2_p, Norm::L2_sigma, Norm::L2_curl_sigma},
                 {8, 16, 32, 64},
                 {{3.26e-04, 2.34e-03, 2.70e-03, 1.67e-01},
                  {8.35e-05, 8.05e-04, 9.70e-04, 1.24e-01},
                  {2.10e-05, 2.74e-04, 3.47e-04, 8.96e-02},
                  {5.27e-06, 9.39e-05, 1.24e-04, 6.42e-02}},
                 {{1.9, 1.3, 1.3, 0.2}, {2.0, 1.5, 1.5, 0.4}, {2.0, 1.6, 1.5, 0.5}, {2.0, 1.6, 1.5, 0.5}},
                 0.10,
                 {0.15, 0.15, 0.15, 0.15}});
    return t;
  }();
  return tables;
}

std::vector<CheckResult> check_rate_stability(const ConvergenceReport& report, double band) {
  std::vector<CheckResult> out;
  if (report.rows.size() < 3) return out;
  const LevelRecord& last = report.rows[report.rows.size() - 1];
  const LevelRecord& prev = report.rows[report.rows.size() - 2];
  for (std::size_t i = 0; i < report.norms.size(); ++i) {
    if (!last.rates[i] || !prev.rates[i]) continue;
    const double d = std::abs(*last.rates[i] - *prev.rates[i]);
    out.push_back({report.case_name + " rate stability " + column_name(report.norms[i]), d <= band,
                   "|" + rate_str(*last.rates[i]) + " - " + rate_str(*prev.rates[i]) + "| = " + rate_str(d)});
  }
  return out;
}

std::vector<CheckResult> check_golden_table(const GoldenTable& table, int max_level) {
  std::vector<int> levels;
  for (int n : table.levels) {
    if (n <= max_level) levels.push_back(n);
  }
  std::vector<CheckResult> out;
  if (levels.empty()) return out;

  StudyOptions opts;
  const ConvergenceReport report =
      run_study(table.problem, table.bc, table.degree, levels, MeshKind::Uniform, opts);
  for (std::size_t j = 0; j < table.norms.size(); ++j) {
    const int col = report.column(table.norms[j]);
    for (std::size_t row = 0; row < levels.size(); ++row) {
      const double got = report.rows[row].errors[col];
      const double want = table.errors[row][j];
      const double rel = std::abs(got - want) / want;
      out.push_back({table.name + " err_" + column_name(table.norms[j]) + " n=" + std::to_string(levels[row]),
                     rel <= table.error_tolerance,
                     num(got) + " vs " + num(want) + " (" + rate_str(100 * rel) + "%)"});
    }
    const std::size_t last = levels.size() - 1;
    if (last > 0) {
      const double got = *report.rows[last].rates[col];
      const double want = table.rates[last][j];
      out.push_back({table.name + " rate_" + column_name(table.norms[j]) + " n=" + std::to_string(levels[last]),
                     std::abs(got - want) <= table.rate_tolerance[j],
                     rate_str(got) + " vs " + rate_str(want) + " +- " + rate_str(table.rate_tolerance[j])});
    }
  }
  for (CheckResult& c : check_rate_stability(report)) out.push_back(std::move(c));
  return out;
}

std::vector<CheckResult> check_commuting_projections(double tol) {
  std::vector<CheckResult> out;
  // v with zero normal trace: (sin(pi x)(1 + y^2), (1 + x) sin(pi y))
  const VectorField v0{ScalarField::separable(1.0, U1::sin_pi(), U1::polynomial({1, 0, 1})),
                       ScalarField::separable(1.0, U1::polynomial({1, 1}), U1::sin_pi())};
  // general v: (cos(pi x) sin(2 pi y) + x y, (1 + 2 x^2) cos(pi y))
  const VectorField v{ScalarField::separable(1.0, U1::cos_pi(), U1::sin_pi(2.0)) +
                          ScalarField::separable(1.0, U1::polynomial({0, 1}), U1::polynomial({0, 1})),
                      ScalarField::separable(1.0, U1::polynomial({1, 0, 2}), U1::cos_pi())};
  // zero trace U = sin(pi x) sin(pi y) + sin(2 pi x) sin(pi y) / 2
  const ScalarField U = ScalarField::separable(1.0, U1::sin_pi(), U1::sin_pi()) +
                        ScalarField::separable(0.5, U1::sin_pi(2.0), U1::sin_pi());

  // same quadrature on both sides of each identity
  AssemblyOptions exact;
  exact.quad_degree = 20;

  for (int n : {4, 8}) {
    const auto mesh = uniform(n);
    for (int r : {1, 2}) {
      const auto v_full = build_space(mesh, Family::RaviartThomas, r);
      const auto v_zero = build_space(mesh, Family::RaviartThomas, r, Constraint::ZeroNormalTrace);
      const auto s_space = build_space(mesh, Family::Discontinuous, r - 1);
      const auto sigma0 = build_space(mesh, Family::Lagrange, r, Constraint::ZeroTrace);

      {
        const FeFunction pi_v = interpolate_rt_canonical(v_full, v.fn());
        const FeFunction lhs = project_l2(
            s_space, CellScalarFn([&](int t, const Vec2& x) {
              const CellGeometry g = cell_geometry(*mesh, t);
              return evaluate_divergence(pi_v, t, g.pullback(x));
            }));
        const FeFunction rhs = project_l2(s_space, div(v).fn());
        const double d = rel_diff(lhs.coeffs, rhs.coeffs);
        out.push_back({"div Pi v = P_S div v " + tag(n, r), d <= tol, "max diff " + num(d)});
      }
      {
        const ProjectionPV pv = project_pvh(v_zero, v0.fn(), div(v0).fn(), exact);
        const FeFunction lhs = project_l2(
            s_space, CellScalarFn([&](int t, const Vec2& x) {
              const CellGeometry g = cell_geometry(*mesh, t);
              return evaluate_divergence(pv.value, t, g.pullback(x));
            }));
        const FeFunction rhs = project_l2(s_space, div(v0).fn());
        const double d = rel_diff(lhs.coeffs, rhs.coeffs);
        out.push_back({"div P_V v = P_S div v " + tag(n, r), d <= tol, "max diff " + num(d)});
      }
      {
        const ProjectionPV pv = project_pvh(v_zero, curl(U).fn(), ScalarField().fn(), exact);
        const FeFunction pu = project_elliptic_sigma(sigma0, U.fn(), grad(U).fn(), exact);
        const Eigen::VectorXd curl_pu = discrete_curl_matrix(*sigma0, v_zero) * pu.coeffs;
        const double d = rel_diff(pv.value.coeffs, curl_pu);
        out.push_back({"P_V curl U = curl P_Sigma U " + tag(n, r), d <= tol, "max diff " + num(d)});
      }
    }
  }
  return out;
}

std::vector<CheckResult> check_projection_rates(double band) {
  const std::vector<int> levels{8, 16, 32};
  const int r = 2;
  const ScalarField s = ScalarField::separable(1.0, U1::sin_pi(), U1::constant(1.0));
  const ScalarField U = ScalarField::separable(1.0, U1::sin_pi(), U1::sin_pi());
  const VectorField w = curl(U);
  const VectorField v0{ScalarField::separable(1.0, U1::sin_pi(), U1::polynomial({1, 0, 1})),
                       ScalarField::separable(1.0, U1::polynomial({1, 1}), U1::sin_pi())};

  std::vector<double> e_ps, e_psig, e_pi, e_pv;
  for (int n : levels) {
    const auto mesh = uniform(n);
    const auto s_space = build_space(mesh, Family::Discontinuous, 1);
    e_ps.push_back(l2_error(project_l2(s_space, s.fn()), s.fn(), 12));
    const auto sigma0 = build_space(mesh, Family::Lagrange, r, Constraint::ZeroTrace);
    e_psig.push_back(l2_error(project_elliptic_sigma(sigma0, U.fn(), grad(U).fn()), U.fn(), 12));
    const auto v_full = build_space(mesh, Family::RaviartThomas, r);
    e_pi.push_back(l2_error(interpolate_rt_canonical(v_full, w.fn()), w.fn(), 12));
    const auto v_zero = build_space(mesh, Family::RaviartThomas, r, Constraint::ZeroNormalTrace);
    e_pv.push_back(div_l2_error(project_pvh(v_zero, v0.fn(), div(v0).fn()).value, div(v0).fn(), 12));
  }
  std::vector<CheckResult> out;
  auto add = [&](const std::string& name, const std::vector<double>& e, double expected) {
    const double rate = observed_rate(e[e.size() - 2], e.back(), levels[levels.size() - 2], levels.back());
    out.push_back({name, std::abs(rate - expected) <= band,
                   "rate " + rate_str(rate) + " expected " + rate_str(expected) + " +- " + rate_str(band)});
  };
  add("P_S rate (k=1)", e_ps, 2.0);
  add("P_Sigma rate (r=2)", e_psig, 3.0);
  add("Pi^V rate (r=2)", e_pi, 2.0);
  add("div P_V rate (r=2)", e_pv, 2.0);
  return out;
}

std::vector<CheckResult> check_sequence_dimensions() {
  std::vector<CheckResult> out;
  for (int n : {1, 2, 4, 8}) {
    const auto mesh = uniform(n);
    for (int r = 1; r <= 4; ++r) {
      const int sigma = build_space(mesh, Family::Lagrange, r)->num_dofs();
      const int sigma0 = build_space(mesh, Family::Lagrange, r, Constraint::ZeroTrace)->num_dofs();
      const int v = build_space(mesh, Family::RaviartThomas, r)->num_dofs();
      const int v0 = build_space(mesh, Family::RaviartThomas, r, Constraint::ZeroNormalTrace)->num_dofs();
      const int s = build_space(mesh, Family::Discontinuous, r - 1)->num_dofs();
      const int s_hat = s - 1;
      out.push_back({"dim V0 = dim Sigma0 + dim S^ " + tag(n, r), v0 == sigma0 + s_hat,
                     std::to_string(v0) + " vs " + std::to_string(sigma0) + " + " + std::to_string(s_hat)});
      out.push_back({"dim V = dim Sigma - 1 + dim S " + tag(n, r), v == sigma - 1 + s,
                     std::to_string(v) + " vs " + std::to_string(sigma) + " - 1 + " + std::to_string(s)});
    }
  }
  return out;
}

std::vector<CheckResult> check_dense_ranks() {
  std::vector<CheckResult> out;
  const auto mesh = uniform(2);
  for (int r : {1, 2}) {
    const auto s_space = build_space(mesh, Family::Discontinuous, r - 1);
    const auto sigma = build_space(mesh, Family::Lagrange, r);
    const auto sigma0 = build_space(mesh, Family::Lagrange, r, Constraint::ZeroTrace);
    for (bool zero : {true, false}) {
      const auto v = build_space(mesh, Family::RaviartThomas, r,
                                 zero ? Constraint::ZeroNormalTrace : Constraint::None);
      const Eigen::MatrixXd b = Eigen::MatrixXd(assemble_div_pressure(*v, *s_space));
      const Eigen::MatrixXd d = Eigen::MatrixXd(assemble_divdiv(*v));
      const int want_rank = s_space->num_dofs() - (zero ? 1 : 0);
      const int want_null = zero ? sigma0->num_dofs() : sigma->num_dofs() - 1;
      const RankInfo rb = dense_rank_and_nullspace(b);
      const RankInfo rd = dense_rank_and_nullspace(d);
      const std::string which = zero ? " (zero normal trace) " : " (full) ";
      out.push_back({"div block row rank" + which + tag(2, r), rb.rank == want_rank,
                     "rank " + std::to_string(rb.rank) + " expected " + std::to_string(want_rank)});
      const int null = static_cast<int>(d.cols()) - rd.rank;
      out.push_back({"divdiv nullity" + which + tag(2, r), null == want_null,
                     "nullity " + std::to_string(null) + " expected " + std::to_string(want_null)});
    }
  }
  return out;
}

std::vector<CheckResult> check_stokes_divergence(double tol) {
  std::vector<CheckResult> out;
  const ManufacturedCase& c = find_case("stokes-poly");
  const Load load = derive_load(c);
  for (int r : {1, 2}) {
    for (int n : {4, 8}) {
      const StokesSolution s = solve_stokes_vvp(uniform(n), r, load.f.fn());
      const double d = div_l2_error(s.u, [](const Vec2&) { return 0.0; }, 2 * r + 2);
      out.push_back({"Stokes ||div u_h|| " + tag(n, r), d <= tol, num(d)});
    }
  }
  return out;
}

std::vector<CheckResult> check_zero_load() {
  std::vector<CheckResult> out;
  const auto mesh = uniform(4);
  const VectorFn zero_v = [](const Vec2&) { return Vec2(0.0, 0.0); };
  const ScalarFn zero_s = [](const Vec2&) { return 0.0; };
  for (int r : {1, 2}) {
    for (BoundaryCondition bc : {BoundaryCondition::Electric, BoundaryCondition::Magnetic, BoundaryCondition::Dirichlet}) {
      const auto s = solve_vector_laplacian(mesh, r, bc, zero_v);
      const double m = std::max(max_abs(s.sigma.coeffs), max_abs(s.u.coeffs));
      out.push_back({std::string("zero load vlap ") + to_string(bc) + " r=" + std::to_string(r), m == 0.0, num(m)});
    }
    const auto b = solve_biharmonic_cr(mesh, r, zero_s);
    const double mb = std::max(max_abs(b.sigma.coeffs), max_abs(b.U.coeffs));
    out.push_back({"zero load biharmonic r=" + std::to_string(r), mb == 0.0, num(mb)});
    const auto st = solve_stokes_vvp(mesh, r, zero_v);
    const double ms = std::max({max_abs(st.sigma.coeffs), max_abs(st.u.coeffs), max_abs(st.p.coeffs)});
    out.push_back({"zero load Stokes r=" + std::to_string(r), ms == 0.0, num(ms)});
  }
  return out;
}

std::vector<CheckResult> check_biharmonic_rates() {
  const ConvergenceReport rep =
      run_study(ProblemKind::Biharmonic, BoundaryCondition::Dirichlet, 2, {8, 16, 32, 64}, MeshKind::Uniform);
  const double h1 = *rep.rows.back().rates[rep.column(Norm::H1_U)];
  const double sig = *rep.rows.back().rates[rep.column(Norm::L2_sigma)];
  return {{"biharmonic H1 rate (r=2)", std::abs(h1 - 2.0) <= 0.15, "rate " + rate_str(h1) + " expected 2 +- 0.15"},
          {"biharmonic sigma rate (r=2)", sig >= 1.0 && sig <= 1.6, "rate " + rate_str(sig) + " expected in [1, 1.6]"}};
}

std::vector<CheckResult> check_lowest_order_dirichlet() {
  const std::vector<int> levels{16, 32, 64, 128};
  const ConvergenceReport uni =
      run_study(ProblemKind::VectorLaplacian, BoundaryCondition::Dirichlet, 1, levels, MeshKind::Uniform);
  const ConvergenceReport per =
      run_study(ProblemKind::VectorLaplacian, BoundaryCondition::Dirichlet, 1, levels, MeshKind::Perturbed);
  const double s = *uni.rows.back().rates[uni.column(Norm::L2_sigma)];
  const double c = *per.rows.back().rates[per.column(Norm::L2_curl_sigma)];
  return {{"r=1 uniform sigma rate", s >= 0.9, "rate " + rate_str(s) + " expected >= 0.9"},
          {"r=1 perturbed curl sigma rate", c <= 0.2, "rate " + rate_str(c) + " expected <= 0.2"}};
}

std::vector<CheckResult> check_stokes_fine_levels() {
  const ConvergenceReport rep =
      run_study(ProblemKind::Stokes, BoundaryCondition::Dirichlet, 2, {16, 32, 64, 128}, MeshKind::Uniform);
  const double c = *rep.rows.back().rates[rep.column(Norm::L2_curl_sigma)];
  return {{"Stokes levels 16..128 curl sigma rate", std::abs(c - 0.5) <= 0.1,
           "rate " + rate_str(c) + " expected 0.5 +- 0.1"}};
}

std::vector<CheckResult> check_case_loads() {
  std::vector<CheckResult> out;
  for (const ManufacturedCase& c : case_catalog()) {
    const LoadCheck check = validate_load(c);
    out.push_back({"load of " + c.name, check.passed, check.detail});
  }
  return out;
}

Suite parse_suite(const std::string& s) {
  if (s == "projections") return Suite::Projections;
  if (s == "sequences") return Suite::Sequences;
  if (s == "golden-tables") return Suite::GoldenTables;
  throw std::invalid_argument("unknown suite '" + s + "'");
}

std::vector<CheckResult> run_suite(Suite suite, int max_level) {
  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> more) {
    for (CheckResult& c : more) out.push_back(std::move(c));
  };
  switch (suite) {
    case Suite::Projections:
      append(check_commuting_projections());
      append(check_projection_rates());
      break;
    case Suite::Sequences:
      append(check_sequence_dimensions());
      append(check_dense_ranks());
      append(check_stokes_divergence());
      append(check_zero_load());
      append(check_case_loads());
      break;
    case Suite::GoldenTables:
      for (const GoldenTable& t : golden_tables()) append(check_golden_table(t, max_level));
      if (max_level >= 128) append(check_stokes_fine_levels());
      append(check_biharmonic_rates());
      append(check_lowest_order_dirichlet());
      break;
  }
  return out;
}

}  // namespace mixedfem
