#pragma once

#include "mixedfem/cases.hpp"
#include "mixedfem/problems.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mixedfem {

// ---------------------------------------------------------------------------
// Error norms. Each is the square root of an element-summed quadrature of the
// squared pointwise error; per-cell contributions may be computed in parallel
// and are summed in cell order.

double l2_error(const FeFunction& fh, const ScalarFn& exact, int quad_degree,
                ExecPolicy policy = ExecPolicy::Parallel);
double l2_error(const FeFunction& fh, const VectorFn& exact, int quad_degree,
                ExecPolicy policy = ExecPolicy::Parallel);
/// RT field: || div fh - exact ||.
double div_l2_error(const FeFunction& fh, const ScalarFn& exact_div, int quad_degree,
                    ExecPolicy policy = ExecPolicy::Parallel);
/// Scalar field: || grad fh - exact_grad ||, which equals the curl error.
double gradient_l2_error(const FeFunction& fh, const VectorFn& exact_grad, int quad_degree,
                         ExecPolicy policy = ExecPolicy::Parallel);

enum class Norm { L2_u, L2_div_u, L2_sigma, L2_curl_sigma, H1_U, L2_p };

/// Column stem used in tables: u, divu, sigma, curlsigma, h1U, p.
const char* column_name(Norm n);

/// Discrete fields of one solve; unused members stay empty.
struct SolutionFields {
  std::optional<FeFunction> u;
  std::optional<FeFunction> sigma;
  std::optional<FeFunction> p;
  std::optional<FeFunction> U;
};

/// Quadrature degree 2r + 6 (capped at the largest rule), r the highest
/// degree among the present fields.
std::vector<double> error_norms(const SolutionFields& fields, const ManufacturedCase& c, const std::vector<Norm>& which,
                                ExecPolicy policy = ExecPolicy::Parallel);

/// Norms tabulated for a problem, in column order.
std::vector<Norm> study_norms(ProblemKind problem);

// ---------------------------------------------------------------------------

struct LevelRecord {
  int n = 0;
  double h = 0.0;
  std::vector<double> errors;
  /// Empty on the first row and where the coarser error is below 1e-12.
  std::vector<std::optional<double>> rates;
};

struct ConvergenceReport {
  std::string case_name;
  std::vector<Norm> norms;
  std::vector<LevelRecord> rows;

  /// Appends a level and fills its rates from the previous row:
  /// log(e_coarse / e_fine) / log(n_fine / n_coarse), i.e. log2 for dyadic levels.
  void add_level(int n, double h, std::vector<double> errors);
  /// Index of a norm in `norms`, or -1.
  int column(Norm n) const;
};

enum class MeshKind { Uniform, Perturbed };

MeshKind parse_mesh_kind(const std::string& s);

struct StudyOptions {
  /// Interior perturbation for MeshKind::Perturbed.
  double amplitude = 0.25;
  std::uint64_t seed = 1;
  SolveOptions solve;
  /// Overrides the problem's default manufactured case.
  std::optional<std::string> case_name;
};

std::shared_ptr<const Mesh> make_mesh(MeshKind kind, int n, double amplitude, std::uint64_t seed);

/// Solves one problem on one mesh and returns its discrete fields.
SolutionFields solve_case(ProblemKind problem, BoundaryCondition bc, int r, std::shared_ptr<const Mesh> mesh,
                          const ManufacturedCase& c, const SolveOptions& opts = {});

/// One solve per level, coarse to fine. The load is checked by finite
/// differences first (ValidationError); solver failures are rethrown with the
/// level attached.
ConvergenceReport run_study(ProblemKind problem, BoundaryCondition bc, int r, const std::vector<int>& levels,
                            MeshKind mesh_kind, const StudyOptions& opts = {});

enum class TableFormat { Csv, Markdown };

TableFormat parse_table_format(const std::string& s);

/// Errors and h in "%.2e", rates in "%.2f"; rates blank where undefined.
std::string emit_table(const ConvergenceReport& report, TableFormat format);

/// Inverse of the CSV form of emit_table (values carry the printed precision).
ConvergenceReport parse_csv(const std::string& text);

}  // namespace mixedfem
