#pragma once

#include "mixedfem/assembly.hpp"
#include "mixedfem/linalg.hpp"
#include "mixedfem/space.hpp"

#include <memory>
#include <optional>
#include <string>

namespace mixedfem {

enum class BoundaryCondition { Electric, Magnetic, Dirichlet };

const char* to_string(BoundaryCondition bc);
BoundaryCondition parse_boundary_condition(const std::string& s);

struct SolveOptions {
  /// Negate the first block row so the saddle matrix is symmetric.
  bool symmetrize = true;
  AssemblyOptions assembly;
};

/// sigma_h in the Lagrange space of degree r, u_h in RT_r.
///  - electric:  Sigma_h x V_h
///  - magnetic:  zero-trace Sigma_h x zero-normal-trace V_h
///  - dirichlet: Sigma_h x zero-normal-trace V_h (nothing imposed on sigma)
struct VectorLaplaceSolution {
  FeFunction sigma;
  FeFunction u;
  BoundaryCondition bc;
  SolveReport solver;
};

/// Mixed method for curl rot u - grad div u = f:
///   (sigma_h, tau) - (u_h, curl tau) = 0
///   (curl sigma_h, v) + (div u_h, div v) = (f, v)
VectorLaplaceSolution solve_vector_laplacian(std::shared_ptr<const Mesh> mesh, int r, BoundaryCondition bc,
                                             const VectorFn& f, const SolveOptions& opts = {});

/// Ciarlet-Raviart: sigma_h in Sigma_h, U_h in the zero-trace space,
///   (sigma_h, tau) - (curl U_h, curl tau) = 0
///   (curl sigma_h, curl V) = (g, V)
struct BiharmonicSolution {
  FeFunction sigma;
  FeFunction U;
  SolveReport solver;
};

BiharmonicSolution solve_biharmonic_cr(std::shared_ptr<const Mesh> mesh, int r, const ScalarFn& g,
                                       const SolveOptions& opts = {});

/// Vorticity-velocity-pressure Stokes: sigma_h in Sigma_h, u_h in
/// zero-normal-trace RT_r, p_h in mean-zero discontinuous P_{r-1}.
///   (sigma_h, tau) - (u_h, curl tau) = 0
///   (curl sigma_h, v) - (p_h, div v) = (f, v)
///   (div u_h, q) = 0
/// The pressure is computed with one constant-mode DOF pinned and then
/// shifted to mean zero.
struct StokesSolution {
  FeFunction sigma;
  FeFunction u;
  FeFunction p;
  SolveReport solver;
};

StokesSolution solve_stokes_vvp(std::shared_ptr<const Mesh> mesh, int r, const VectorFn& f,
                                const SolveOptions& opts = {});

// ---------------------------------------------------------------------------
// Projections and the discrete Hodge decomposition.

/// A DOF of a discontinuous space whose basis function is the cell constant;
/// pinning it removes the global constant from the kernel.
int constant_mode_dof(const FeSpace& space);

/// Shifts a discontinuous function by a constant so its integral vanishes.
void remove_mean(FeFunction& f);

/// Element-wise L^2 projection into a discontinuous space.
FeFunction project_l2(std::shared_ptr<const FeSpace> space, const ScalarFn& s, int quad_degree = 20);
FeFunction project_l2(std::shared_ptr<const FeSpace> space, const CellScalarFn& s, int quad_degree = 20);

/// Elliptic projection into a Lagrange space:
///   (curl P tau, curl rho) = (curl tau, curl rho) for all rho in the space,
/// plus (P tau, 1) = (tau, 1) when the space has no boundary constraint.
FeFunction project_elliptic_sigma(std::shared_ptr<const FeSpace> space, const ScalarFn& tau,
                                  const VectorFn& grad_tau, const AssemblyOptions& opts = {});

/// Canonical RT interpolant: edge moments against P_{r-1}(e) and interior
/// moments against P_{r-2}(T)^2.
FeFunction interpolate_rt_canonical(std::shared_ptr<const FeSpace> space, const VectorFn& v, int quad_degree = 20);
FeFunction interpolate_rt_canonical(std::shared_ptr<const FeSpace> space, const CellVectorFn& v,
                                    int quad_degree = 20);

/// Projection into the zero-normal-trace RT space defined by
///   (v - P v, curl tau) = 0  for tau in the zero-trace Lagrange space,
///   (div(v - P v), s) = 0    for s in the discontinuous space.
/// The s = 1 row is redundant for v with zero normal trace; one multiplier
/// column makes the system square.
struct ProjectionPV {
  FeFunction value;
  std::shared_ptr<const FeSpace> sigma0_space;
  std::shared_ptr<const FeSpace> s_space;
};

ProjectionPV project_pvh(std::shared_ptr<const FeSpace> v0_space, const VectorFn& v, const ScalarFn& div_v,
                         const AssemblyOptions& opts = {});

/// v = curl rho_h + grad0_h phi_h with rho_h zero-trace Lagrange and phi_h
/// mean-zero discontinuous; grad0_h phi is the RT function with
/// (grad0_h phi, w) = -(phi, div w) for all w in the zero-normal-trace space.
struct HodgeDecomposition {
  FeFunction rho;
  FeFunction phi;
  /// curl rho_h and grad0_h phi_h as elements of the RT space.
  FeFunction curl_part;
  FeFunction grad_part;
};

HodgeDecomposition discrete_hodge_decompose(const FeFunction& v, const AssemblyOptions& opts = {});

/// Discrete curl Sigma_h -> V_h: column j holds the RT coefficients of the
/// canonical interpolant of curl phi_j.
SparseMatrix discrete_curl_matrix(const FeSpace& sigma_space, std::shared_ptr<const FeSpace> v_space);

}  // namespace mixedfem
