#include "mixedfem/problems.hpp"

#include <stdexcept>

namespace mixedfem {

const char* to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Electric: return "electric";
    case BoundaryCondition::Magnetic: return "magnetic";
    case BoundaryCondition::Dirichlet: return "dirichlet";
  }
  return "?";
}

BoundaryCondition parse_boundary_condition(const std::string& s) {
  if (s == "electric") return BoundaryCondition::Electric;
  if (s == "magnetic") return BoundaryCondition::Magnetic;
  if (s == "dirichlet") return BoundaryCondition::Dirichlet;
  throw std::invalid_argument("unknown boundary condition '" + s + "'");
}

namespace {

SparseMatrix transposed(const SparseMatrix& a) { return SparseMatrix(a.transpose()); }

Eigen::VectorXd solve_system(const BlockSystem& system, const SolveOptions& opts, SolveReport& report,
                             const char* what) {
  const BlockSystem::Assembled assembled = system.compose(opts.symmetrize);
  try {
    return sparse_direct_solve(assembled.matrix, assembled.rhs, &report);
  } catch (const SolverError& e) {
    throw SolverError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

VectorLaplaceSolution solve_vector_laplacian(std::shared_ptr<const Mesh> mesh, int r, BoundaryCondition bc,
                                             const VectorFn& f, const SolveOptions& opts) {
  const auto sigma_space = build_space(mesh, Family::Lagrange, r,
                                       bc == BoundaryCondition::Magnetic ? Constraint::ZeroTrace : Constraint::None);
  const auto v_space = build_space(
      mesh, Family::RaviartThomas, r,
      bc == BoundaryCondition::Electric ? Constraint::None : Constraint::ZeroNormalTrace);

  const SparseMatrix mass = assemble_mass(*sigma_space, opts.assembly);
  const SparseMatrix curl = assemble_curl_coupling(*sigma_space, *v_space, opts.assembly);
  const SparseMatrix divdiv = assemble_divdiv(*v_space, opts.assembly);

  BlockSystem system({sigma_space->num_dofs(), v_space->num_dofs()});
  system.set_block(0, 0, mass);
  system.set_block(0, 1, transposed(curl), -1.0);
  system.set_block(1, 0, curl);
  system.set_block(1, 1, divdiv);
  system.set_rhs(1, assemble_load(*v_space, f, opts.assembly));

  SolveReport report;
  const auto parts = system.split(solve_system(system, opts, report, "vector Laplacian"));
  return {FeFunction(sigma_space, parts[0]), FeFunction(v_space, parts[1]), bc, report};
}

BiharmonicSolution solve_biharmonic_cr(std::shared_ptr<const Mesh> mesh, int r, const ScalarFn& g,
                                       const SolveOptions& opts) {
  const auto sigma_space = build_space(mesh, Family::Lagrange, r, Constraint::None);
  const auto u_space = build_space(mesh, Family::Lagrange, r, Constraint::ZeroTrace);

  const SparseMatrix mass = assemble_mass(*sigma_space, opts.assembly);
  // rows: zero-trace space, columns: full space
  const SparseMatrix stiffness = assemble_curl_curl(*u_space, *sigma_space, opts.assembly);

  BlockSystem system({sigma_space->num_dofs(), u_space->num_dofs()});
  system.set_block(0, 0, mass);
  system.set_block(0, 1, transposed(stiffness), -1.0);
  system.set_block(1, 0, stiffness);
  system.set_rhs(1, assemble_load(*u_space, g, opts.assembly));

  SolveReport report;
  const auto parts = system.split(solve_system(system, opts, report, "Ciarlet-Raviart biharmonic"));
  return {FeFunction(sigma_space, parts[0]), FeFunction(u_space, parts[1]), report};
}

StokesSolution solve_stokes_vvp(std::shared_ptr<const Mesh> mesh, int r, const VectorFn& f,
                                const SolveOptions& opts) {
  const auto sigma_space = build_space(mesh, Family::Lagrange, r, Constraint::None);
  const auto v_space = build_space(mesh, Family::RaviartThomas, r, Constraint::ZeroNormalTrace);
  const auto p_space = build_space(mesh, Family::Discontinuous, r - 1, Constraint::MeanZero);

  const SparseMatrix mass = assemble_mass(*sigma_space, opts.assembly);
  const SparseMatrix curl = assemble_curl_coupling(*sigma_space, *v_space, opts.assembly);
  const SparseMatrix div = assemble_div_pressure(*v_space, *p_space, opts.assembly);

  BlockSystem system({sigma_space->num_dofs(), v_space->num_dofs(), p_space->num_dofs()});
  system.set_block(0, 0, mass);
  system.set_block(0, 1, transposed(curl), -1.0);
  system.set_block(1, 0, curl);
  system.set_block(1, 2, transposed(div), -1.0);
  system.set_block(2, 1, div, -1.0);
  system.pin(2, constant_mode_dof(*p_space));
  system.set_rhs(1, assemble_load(*v_space, f, opts.assembly));

  SolveReport report;
  const auto parts = system.split(solve_system(system, opts, report, "Stokes"));
  FeFunction p(p_space, parts[2]);
  remove_mean(p);
  return {FeFunction(sigma_space, parts[0]), FeFunction(v_space, parts[1]), std::move(p), report};
}

}  // namespace mixedfem
