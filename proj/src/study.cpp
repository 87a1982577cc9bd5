#include "mixedfem/study.hpp"

#include "mixedfem/parallel.hpp"
#include "mixedfem/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace mixedfem {

namespace {

template <class CellFn>
double root_of_cell_sum(const Mesh& mesh, ExecPolicy policy, CellFn&& cell) {
  std::vector<double> parts(mesh.num_triangles(), 0.0);
  for_each_index(mesh.num_triangles(), policy, [&](int t) { parts[t] = cell(t); });
  double sum = 0.0;
  for (double v : parts) sum += v;
  return std::sqrt(sum);
}

const QuadratureRule& rule_for(int quad_degree) { return cached_triangle_quadrature(std::clamp(quad_degree, 1, 20)); }

void require_scalar(const FeFunction& f, const char* what) {
  if (f.space->element().is_vector()) throw std::invalid_argument(std::string(what) + ": needs a scalar field");
}

void require_vector(const FeFunction& f, const char* what) {
  if (!f.space->element().is_vector()) throw std::invalid_argument(std::string(what) + ": needs an RT field");
}

}  // namespace

double l2_error(const FeFunction& fh, const ScalarFn& exact, int quad_degree, ExecPolicy policy) {
  require_scalar(fh, "l2_error");
  const QuadratureRule& rule = rule_for(quad_degree);
  const ScalarTabulation tab = fh.space->element().tabulate_scalar(rule.points);
  const Mesh& mesh = fh.space->mesh();
  return root_of_cell_sum(mesh, policy, [&](int t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const Eigen::VectorXd vals = tab.values * fh.local_coefficients(t);
    double s = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      const double e = vals[q] - exact(g.map(rule.points[q]));
      s += rule.weights[q] * e * e;
    }
    return g.det * s;
  });
}

double l2_error(const FeFunction& fh, const VectorFn& exact, int quad_degree, ExecPolicy policy) {
  require_vector(fh, "l2_error");
  const QuadratureRule& rule = rule_for(quad_degree);
  const VectorTabulation tab = fh.space->element().tabulate_vector(rule.points);
  const Mesh& mesh = fh.space->mesh();
  return root_of_cell_sum(mesh, policy, [&](int t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const Eigen::VectorXd c = fh.local_coefficients(t);
    const Eigen::VectorXd vx = tab.values_x * c;
    const Eigen::VectorXd vy = tab.values_y * c;
    double s = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 v = g.jacobian * Vec2(vx[q], vy[q]) / g.det;
      s += rule.weights[q] * (v - exact(g.map(rule.points[q]))).squaredNorm();
    }
    return g.det * s;
  });
}

double div_l2_error(const FeFunction& fh, const ScalarFn& exact_div, int quad_degree, ExecPolicy policy) {
  require_vector(fh, "div_l2_error");
  const QuadratureRule& rule = rule_for(quad_degree);
  const VectorTabulation tab = fh.space->element().tabulate_vector(rule.points);
  const Mesh& mesh = fh.space->mesh();
  return root_of_cell_sum(mesh, policy, [&](int t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const Eigen::VectorXd d = tab.divergence * fh.local_coefficients(t);
    double s = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      const double e = d[q] / g.det - exact_div(g.map(rule.points[q]));
      s += rule.weights[q] * e * e;
    }
    return g.det * s;
  });
}

double gradient_l2_error(const FeFunction& fh, const VectorFn& exact_grad, int quad_degree, ExecPolicy policy) {
  require_scalar(fh, "gradient_l2_error");
  const QuadratureRule& rule = rule_for(quad_degree);
  const ScalarTabulation tab = fh.space->element().tabulate_scalar(rule.points);
  const Mesh& mesh = fh.space->mesh();
  return root_of_cell_sum(mesh, policy, [&](int t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const Eigen::VectorXd c = fh.local_coefficients(t);
    const Eigen::VectorXd gx = tab.grad_x * c;
    const Eigen::VectorXd gy = tab.grad_y * c;
    double s = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 grad = g.inverse.transpose() * Vec2(gx[q], gy[q]);
      s += rule.weights[q] * (grad - exact_grad(g.map(rule.points[q]))).squaredNorm();
    }
    return g.det * s;
  });
}

const char* column_name(Norm n) {
  switch (n) {
    case Norm::L2_u: return "u";
    case Norm::L2_div_u: return "divu";
    case Norm::L2_sigma: return "sigma";
    case Norm::L2_curl_sigma: return "curlsigma";
    case Norm::H1_U: return "h1U";
    case Norm::L2_p: return "p";
  }
  return "?";
}

namespace {

Norm norm_from_column(const std::string& s) {
  for (Norm n : {Norm::L2_u, Norm::L2_div_u, Norm::L2_sigma, Norm::L2_curl_sigma, Norm::H1_U, Norm::L2_p}) {
    if (s == column_name(n)) return n;
  }
  throw std::invalid_argument("unknown column '" + s + "'");
}

const FeFunction& need(const std::optional<FeFunction>& f, Norm n) {
  if (!f) throw std::invalid_argument(std::string("error_norms: no discrete field for ") + column_name(n));
  return *f;
}

}  // namespace

std::vector<double> error_norms(const SolutionFields& fields, const ManufacturedCase& c, const std::vector<Norm>& which,
                                ExecPolicy policy) {
  int r = 0;
  for (const auto* f : {&fields.u, &fields.sigma, &fields.p, &fields.U}) {
    if (*f) r = std::max(r, (*f)->space->degree());
  }
  const int q = std::min(2 * r + 6, 20);
  std::vector<double> out;
  for (Norm n : which) {
    switch (n) {
      case Norm::L2_u: out.push_back(l2_error(need(fields.u, n), c.u.fn(), q, policy)); break;
      case Norm::L2_div_u: out.push_back(div_l2_error(need(fields.u, n), div(c.u).fn(), q, policy)); break;
      case Norm::L2_sigma: out.push_back(l2_error(need(fields.sigma, n), c.sigma.fn(), q, policy)); break;
      case Norm::L2_curl_sigma:
        out.push_back(gradient_l2_error(need(fields.sigma, n), grad(c.sigma).fn(), q, policy));
        break;
      case Norm::H1_U: {
        const FeFunction& U = need(fields.U, n);
        const double e0 = l2_error(U, c.U.fn(), q, policy);
        const double e1 = gradient_l2_error(U, grad(c.U).fn(), q, policy);
        out.push_back(std::sqrt(e0 * e0 + e1 * e1));
        break;
      }
      case Norm::L2_p: out.push_back(l2_error(need(fields.p, n), c.p.fn(), q, policy)); break;
    }
  }
  return out;
}

std::vector<Norm> study_norms(ProblemKind problem) {
  switch (problem) {
    case ProblemKind::VectorLaplacian: return {Norm::L2_u, Norm::L2_div_u, Norm::L2_sigma, Norm::L2_curl_sigma};
    case ProblemKind::Stokes:
      return {Norm::L2_u, Norm::L2_div_u, Norm::L2_sigma, Norm::L2_curl_sigma, Norm::L2_p};
    case ProblemKind::Biharmonic: return {Norm::H1_U, Norm::L2_sigma, Norm::L2_curl_sigma};
  }
  return {};
}

void ConvergenceReport::add_level(int n, double h, std::vector<double> errors) {
  if (errors.size() != norms.size()) throw std::invalid_argument("add_level: one error per norm expected");
  LevelRecord rec{n, h, std::move(errors), std::vector<std::optional<double>>(norms.size())};
  if (!rows.empty()) {
    const LevelRecord& prev = rows.back();
    for (std::size_t i = 0; i < norms.size(); ++i) {
      if (prev.errors[i] < 1e-12 || rec.errors[i] <= 0.0) continue;
      rec.rates[i] = std::log(prev.errors[i] / rec.errors[i]) / std::log(double(n) / prev.n);
    }
  }
  rows.push_back(std::move(rec));
}

int ConvergenceReport::column(Norm n) const {
  for (std::size_t i = 0; i < norms.size(); ++i) {
    if (norms[i] == n) return static_cast<int>(i);
  }
  return -1;
}

MeshKind parse_mesh_kind(const std::string& s) {
  if (s == "uniform") return MeshKind::Uniform;
  if (s == "perturbed") return MeshKind::Perturbed;
  throw std::invalid_argument("unknown mesh kind '" + s + "'");
}

std::shared_ptr<const Mesh> make_mesh(MeshKind kind, int n, double amplitude, std::uint64_t seed) {
  Mesh mesh = build_uniform_square(n);
  if (kind == MeshKind::Perturbed) mesh = perturb_interior(mesh, amplitude, seed);
  return std::make_shared<const Mesh>(std::move(mesh));
}

SolutionFields solve_case(ProblemKind problem, BoundaryCondition bc, int r, std::shared_ptr<const Mesh> mesh,
                          const ManufacturedCase& c, const SolveOptions& opts) {
  const Load load = derive_load(c);
  SolutionFields out;
  switch (problem) {
    case ProblemKind::VectorLaplacian: {
      auto s = solve_vector_laplacian(mesh, r, bc, load.f.fn(), opts);
      out.sigma = std::move(s.sigma);
      out.u = std::move(s.u);
      break;
    }
    case ProblemKind::Stokes: {
      auto s = solve_stokes_vvp(mesh, r, load.f.fn(), opts);
      out.sigma = std::move(s.sigma);
      out.u = std::move(s.u);
      out.p = std::move(s.p);
      break;
    }
    case ProblemKind::Biharmonic: {
      auto s = solve_biharmonic_cr(mesh, r, load.g.fn(), opts);
      out.sigma = std::move(s.sigma);
      out.U = std::move(s.U);
      break;
    }
  }
  return out;
}

ConvergenceReport run_study(ProblemKind problem, BoundaryCondition bc, int r, const std::vector<int>& levels,
                            MeshKind mesh_kind, const StudyOptions& opts) {
  const ManufacturedCase& c = opts.case_name ? find_case(*opts.case_name) : default_case(problem, bc);
  if (c.problem != problem && c.name != "zero") {
    throw std::invalid_argument("case '" + c.name + "' belongs to problem " + to_string(c.problem));
  }
  const LoadCheck check = validate_load(c);
  if (!check.passed) throw ValidationError("load of case '" + c.name + "' fails the difference check: " + check.detail);
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] <= levels[i - 1]) throw std::invalid_argument("run_study: levels must increase");
  }

  ConvergenceReport report;
  report.case_name = c.name;
  report.norms = study_norms(problem);
  for (int n : levels) {
    const auto mesh = make_mesh(mesh_kind, n, opts.amplitude, opts.seed);
    SolutionFields fields;
    try {
      fields = solve_case(problem, bc, r, mesh, c, opts.solve);
    } catch (const SolverError& e) {
      throw SolverError("level n=" + std::to_string(n) + ": " + e.what());
    }
    report.add_level(n, mesh->h_max(), error_norms(fields, c, report.norms, opts.solve.assembly.policy));
  }
  return report;
}

TableFormat parse_table_format(const std::string& s) {
  if (s == "csv") return TableFormat::Csv;
  if (s == "markdown") return TableFormat::Markdown;
  throw std::invalid_argument("unknown table format '" + s + "'");
}

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string emit_table(const ConvergenceReport& report, TableFormat format) {
  std::vector<std::string> header{"n", "h"};
  for (Norm n : report.norms) {
    header.push_back(std::string("err_") + column_name(n));
    header.push_back(std::string("rate_") + column_name(n));
  }
  std::vector<std::vector<std::string>> rows;
  for (const LevelRecord& rec : report.rows) {
    std::vector<std::string> row{std::to_string(rec.n), fmt("%.2e", rec.h)};
    for (std::size_t i = 0; i < report.norms.size(); ++i) {
      row.push_back(fmt("%.2e", rec.errors[i]));
      row.push_back(rec.rates[i] ? fmt("%.2f", *rec.rates[i]) : "");
    }
    rows.push_back(std::move(row));
  }

  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    if (format == TableFormat::Csv) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    } else {
      os << "|";
      for (const std::string& c : cells) os << ' ' << c << " |";
    }
    os << '\n';
  };
  line(header);
  if (format == TableFormat::Markdown) line(std::vector<std::string>(header.size(), "---"));
  for (const auto& row : rows) line(row);
  return os.str();
}

ConvergenceReport parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };

  ConvergenceReport report;
  if (!std::getline(is, line)) return report;
  const auto header = split(line);
  if (header.size() < 2 || header[0] != "n" || header[1] != "h" || header.size() % 2 != 0) {
    throw std::invalid_argument("parse_csv: bad header");
  }
  for (std::size_t i = 2; i < header.size(); i += 2) {
    if (header[i].rfind("err_", 0) != 0) throw std::invalid_argument("parse_csv: bad column " + header[i]);
    report.norms.push_back(norm_from_column(header[i].substr(4)));
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw std::invalid_argument("parse_csv: ragged row");
    LevelRecord rec;
    rec.n = std::stoi(cells[0]);
    rec.h = std::stod(cells[1]);
    for (std::size_t i = 2; i < cells.size(); i += 2) {
      rec.errors.push_back(std::stod(cells[i]));
      rec.rates.push_back(cells[i + 1].empty() ? std::nullopt : std::optional<double>(std::stod(cells[i + 1])));
    }
    report.rows.push_back(std::move(rec));
  }
  return report;
}

}  // namespace mixedfem
