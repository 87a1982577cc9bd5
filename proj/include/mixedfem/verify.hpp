#pragma once

#include "mixedfem/study.hpp"

#include <string>
#include <vector>

namespace mixedfem {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Published error table: rows coarse to fine, one error and rate per norm.
struct GoldenTable {
  std::string name;
  ProblemKind problem;
  BoundaryCondition bc;
  int degree;
  std::vector<Norm> norms;
  std::vector<int> levels;
  std::vector<std::vector<double>> errors;
  std::vector<std::vector<double>> rates;
  double error_tolerance;  // relative
  std::vector<double> rate_tolerance;  // per norm, on the final row
};

/// Tables 1, 2 and 4: electric and Dirichlet vector Laplacian and Stokes, r = 2.
const std::vector<GoldenTable>& golden_tables();

/// Runs the study for one table and compares every error and the final-row
/// rates. Levels above max_level are skipped; the rate check then uses the
/// published rate of the last kept row.
std::vector<CheckResult> check_golden_table(const GoldenTable& table, int max_level = 1 << 30);

/// Also checks |rate(finest) - rate(second finest)| <= 0.15 per norm.
std::vector<CheckResult> check_rate_stability(const ConvergenceReport& report, double band = 0.15);

/// div Pi v = P_S div v, div P_V v = P_S div v, P_V curl U = curl P_Sigma U
/// on n in {4, 8}, r in {1, 2}.
std::vector<CheckResult> check_commuting_projections(double tol = 1e-9);

/// Convergence orders of P_S, P_Sigma (zero trace), Pi^V and div P_V.
std::vector<CheckResult> check_projection_rates(double band = 0.15);

/// Dimension identities of the discrete sequences for n in {1, 2, 4, 8},
/// r in 1..4.
std::vector<CheckResult> check_sequence_dimensions();

/// Dense rank of the divergence block and null space of div-div on n = 2.
std::vector<CheckResult> check_dense_ranks();

/// Stokes velocities are pointwise divergence free.
std::vector<CheckResult> check_stokes_divergence(double tol = 1e-10);

/// f = 0 gives identically zero discrete solutions.
std::vector<CheckResult> check_zero_load();

/// Biharmonic r = 2 over levels 8..64: H1 rate 2 +- 0.15, sigma rate in [1, 1.6].
std::vector<CheckResult> check_biharmonic_rates();

/// r = 1 Dirichlet: sigma rate >= 0.9 on uniform meshes, curl sigma rate
/// <= 0.2 on perturbed meshes.
std::vector<CheckResult> check_lowest_order_dirichlet();

/// Stokes r = 2 over levels 16..128: curl sigma rate 0.5 +- 0.1 on the finest row.
std::vector<CheckResult> check_stokes_fine_levels();

/// Finite-difference check of every catalog load.
std::vector<CheckResult> check_case_loads();

enum class Suite { Projections, Sequences, GoldenTables };

Suite parse_suite(const std::string& s);

/// projections: commuting identities and projection rates.
/// sequences: dimensions, dense ranks, Stokes divergence, zero loads, case loads.
/// golden-tables: Tables 1, 2, 4 and their rate stability, the fine-level
/// Stokes rate, biharmonic rates, lowest-order Dirichlet behaviour.
std::vector<CheckResult> run_suite(Suite suite, int max_level = 1 << 30);

}  // namespace mixedfem
