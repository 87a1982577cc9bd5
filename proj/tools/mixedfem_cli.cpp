#include "mixedfem/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace mixedfem;

namespace {

constexpr int kOk = 0;
constexpr int kToleranceFailure = 1;
constexpr int kSolverFailure = 2;

struct MeshSpec {
  MeshKind kind = MeshKind::Uniform;
  int n = 8;
  std::uint64_t seed = 1;
};

// uniform:N or perturbed:N:SEED
MeshSpec parse_mesh_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  MeshSpec spec;
  if (parts.size() == 2 && parts[0] == "uniform") {
    spec.n = std::stoi(parts[1]);
  } else if (parts.size() == 3 && parts[0] == "perturbed") {
    spec.kind = MeshKind::Perturbed;
    spec.n = std::stoi(parts[1]);
    spec.seed = std::stoull(parts[2]);
  } else {
    throw std::invalid_argument("mesh must be uniform:N or perturbed:N:SEED, got '" + text + "'");
  }
  if (spec.n < 1) throw std::invalid_argument("mesh size must be positive");
  return spec;
}

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> levels;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) levels.push_back(std::stoi(p));
  if (levels.empty()) throw std::invalid_argument("no levels given");
  return levels;
}

void dump_field(std::ostream& os, const char* name, const FeFunction& f) {
  os << "field " << name << ' ' << to_string(f.space->family()) << ' ' << f.space->degree() << ' '
     << f.coeffs.size() << '\n';
  os.precision(17);
  for (int i = 0; i < f.coeffs.size(); ++i) os << f.coeffs[i] << '\n';
}

int run_solve(const std::string& problem, const std::string& bc, int degree, const std::string& mesh_text,
              const std::string& case_name, const std::string& dump_path) {
  const ProblemKind kind = parse_problem(problem);
  const BoundaryCondition mode = parse_boundary_condition(bc);
  const MeshSpec spec = parse_mesh_spec(mesh_text);
  const ManufacturedCase& c = case_name.empty() ? default_case(kind, mode) : find_case(case_name);

  const LoadCheck check = validate_load(c);
  if (!check.passed) throw ValidationError("load of case '" + c.name + "' fails the difference check: " + check.detail);

  const auto mesh = make_mesh(spec.kind, spec.n, 0.25, spec.seed);
  const SolutionFields fields = solve_case(kind, mode, degree, mesh, c);
  const std::vector<Norm> norms = study_norms(kind);
  const std::vector<double> errors = error_norms(fields, c, norms);

  std::cout << "case " << c.name << ", n=" << spec.n << ", h=" << mesh->h_max() << ", r=" << degree << '\n';
  for (std::size_t i = 0; i < norms.size(); ++i) std::cout << "err_" << column_name(norms[i]) << ' ' << errors[i] << '\n';

  if (!dump_path.empty()) {
    std::ofstream os(dump_path);
    if (!os) throw std::runtime_error("cannot write " + dump_path);
    write_mesh(os, *mesh);
    if (fields.sigma) dump_field(os, "sigma", *fields.sigma);
    if (fields.u) dump_field(os, "u", *fields.u);
    if (fields.p) dump_field(os, "p", *fields.p);
    if (fields.U) dump_field(os, "U", *fields.U);
  }
  return kOk;
}

int run_study_cmd(const std::string& problem, const std::string& bc, int degree, const std::string& levels,
                  const std::string& mesh_kind, const std::string& format, const std::string& out_path) {
  const ConvergenceReport report = run_study(parse_problem(problem), parse_boundary_condition(bc), degree,
                                             parse_levels(levels), parse_mesh_kind(mesh_kind));
  const std::string table = emit_table(report, parse_table_format(format));
  if (out_path.empty()) {
    std::cout << table;
  } else {
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot write " + out_path);
    os << table;
  }
  return kOk;
}

int run_verify(const std::string& suite, int max_level) {
  const std::vector<CheckResult> results = run_suite(parse_suite(suite), max_level);
  int failed = 0;
  for (const CheckResult& c : results) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " : " << c.detail << '\n';
    if (!c.passed) ++failed;
  }
  std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed ? kToleranceFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed finite elements for the vector Laplacian, biharmonic and Stokes problems"};
  app.require_subcommand(1);

  std::string problem = "vlap", bc = "electric", mesh = "uniform:8", case_name, dump, levels = "16,32,64,128",
              mesh_kind = "uniform", format = "csv", out, suite;
  int degree = 2;
  int max_level = 1 << 30;

  const std::vector<std::string> problems{"vlap", "biharmonic", "stokes"};
  const std::vector<std::string> bcs{"electric", "magnetic", "dirichlet"};

  CLI::App* solve = app.add_subcommand("solve", "Solve one manufactured case and print its errors");
  solve->add_option("--problem", problem)->check(CLI::IsMember(problems));
  solve->add_option("--bc", bc)->check(CLI::IsMember(bcs));
  solve->add_option("--degree", degree)->check(CLI::Range(1, 4));
  solve->add_option("--mesh", mesh, "uniform:N or perturbed:N:SEED");
  solve->add_option("--case", case_name, "manufactured case (default depends on problem and bc)");
  solve->add_option("--dump-fields", dump, "write mesh and coefficient vectors to this file");

  CLI::App* study = app.add_subcommand("study", "Convergence study over several mesh levels");
  study->add_option("--problem", problem)->check(CLI::IsMember(problems));
  study->add_option("--bc", bc)->check(CLI::IsMember(bcs));
  study->add_option("--degree", degree)->check(CLI::Range(1, 4));
  study->add_option("--levels", levels, "comma separated, increasing");
  study->add_option("--mesh-kind", mesh_kind)->check(CLI::IsMember({"uniform", "perturbed"}));
  study->add_option("--format", format)->check(CLI::IsMember({"csv", "markdown"}));
  study->add_option("--out", out);

  CLI::App* verify = app.add_subcommand("verify", "Run a property or regression suite");
  verify->add_option("--suite", suite)->required()->check(CLI::IsMember({"projections", "sequences", "golden-tables"}));
  verify->add_option("--max-level", max_level, "skip table rows with n above this");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(problem, bc, degree, mesh, case_name, dump);
    if (*study) return run_study_cmd(problem, bc, degree, levels, mesh_kind, format, out);
    return run_verify(suite, max_level);
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kToleranceFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
}
