#pragma once

#include "mixedfem/fields.hpp"
#include "mixedfem/problems.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mixedfem {

enum class ProblemKind { VectorLaplacian, Biharmonic, Stokes };

const char* to_string(ProblemKind p);
/// Accepts the CLI names vlap, biharmonic, stokes.
ProblemKind parse_problem(const std::string& s);

/// Exact solution with closed-form derivatives.
///  - vector Laplacian: u, sigma = rot u
///  - Stokes: u, sigma = rot u, p
///  - biharmonic: U, sigma = -Laplacian U
struct ManufacturedCase {
  std::string name;
  ProblemKind problem;
  std::optional<BoundaryCondition> bc;
  VectorField u;
  ScalarField sigma;
  ScalarField p;
  ScalarField U;
};

const std::vector<ManufacturedCase>& case_catalog();
/// Throws std::invalid_argument for an unknown name.
const ManufacturedCase& find_case(const std::string& name);
/// The case used by the convergence studies of a problem and boundary mode.
const ManufacturedCase& default_case(ProblemKind problem, BoundaryCondition bc);

/// Right-hand side of the continuous problem. Vector problems fill f:
///   curl rot u - grad div u            (vector Laplacian)
///   curl rot u + grad p                (Stokes)
/// the biharmonic fills g = Laplacian^2 U.
struct Load {
  VectorField f;
  ScalarField g;
};

Load derive_load(const ManufacturedCase& c);

struct LoadCheck {
  bool passed = true;
  /// Largest sampled |analytic - finite difference| relative to max(1, |analytic|_inf).
  double worst = 0.0;
  std::string detail;
};

/// Compares the analytic load (and sigma) with fourth-order central
/// differences of the exact fields at `samples` random points.
LoadCheck validate_load(const ManufacturedCase& c, int samples = 100, double tol = 1e-6, unsigned seed = 20240607);

}  // namespace mixedfem
