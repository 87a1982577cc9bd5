#include "mixedfem/problems.hpp"

#include <stdexcept>

namespace mixedfem {

namespace {

void require_family(const FeSpace& space, Family family, const char* what) {
  if (space.family() != family) {
    throw std::invalid_argument(std::string(what) + ": expected a " + to_string(family) + " space, got " +
                                to_string(space.family()));
  }
}

// coefficients of the constant function 1
Eigen::VectorXd constant_coefficients(const std::shared_ptr<const FeSpace>& space) {
  return interpolate(space, ScalarFn([](const Vec2&) { return 1.0; })).coeffs;
}

}  // namespace

int constant_mode_dof(const FeSpace& space) {
  require_family(space, Family::Discontinuous, "constant_mode_dof");
  // the first basis function of every cell is the constant 1
  return space.cell_dofs(0)[0];
}

void remove_mean(FeFunction& f) {
  require_family(*f.space, Family::Discontinuous, "remove_mean");
  const Eigen::VectorXd one = constant_coefficients(f.space);
  const Eigen::VectorXd w = assemble_mean_weights(*f.space);
  f.coeffs -= (w.dot(f.coeffs) / w.dot(one)) * one;
}

FeFunction project_l2(std::shared_ptr<const FeSpace> space, const ScalarFn& s, int quad_degree) {
  return project_l2(std::move(space), CellScalarFn([&](int, const Vec2& x) { return s(x); }), quad_degree);
}

FeFunction project_l2(std::shared_ptr<const FeSpace> space, const CellScalarFn& s, int quad_degree) {
  require_family(*space, Family::Discontinuous, "project_l2");
  // the discontinuous DOFs are moments against an orthonormal basis
  return interpolate(std::move(space), s, quad_degree);
}

FeFunction project_elliptic_sigma(std::shared_ptr<const FeSpace> space, const ScalarFn& tau, const VectorFn& grad_tau,
                                  const AssemblyOptions& opts) {
  require_family(*space, Family::Lagrange, "project_elliptic_sigma");
  const SparseMatrix k = assemble_curl_curl(*space, *space, opts);
  BlockSystem system({space->num_dofs()});
  system.set_block(0, 0, k);
  system.set_rhs(0, assemble_gradient_load(*space, grad_tau, opts));
  if (space->constraint() == Constraint::None) {
    const int q = std::min(2 * space->degree() + 6, 20);
    system.add_mean_constraint(0, assemble_mean_weights(*space, opts), integrate(space->mesh(), tau, q, opts.policy));
  }
  const auto assembled = system.compose(false);
  const Eigen::VectorXd x = sparse_direct_solve(assembled.matrix, assembled.rhs);
  return FeFunction(space, system.split(x)[0]);
}

FeFunction interpolate_rt_canonical(std::shared_ptr<const FeSpace> space, const VectorFn& v, int quad_degree) {
  return interpolate_rt_canonical(std::move(space), CellVectorFn([&](int, const Vec2& x) { return v(x); }),
                                  quad_degree);
}

FeFunction interpolate_rt_canonical(std::shared_ptr<const FeSpace> space, const CellVectorFn& v, int quad_degree) {
  require_family(*space, Family::RaviartThomas, "interpolate_rt_canonical");
  return interpolate(std::move(space), v, quad_degree);
}

ProjectionPV project_pvh(std::shared_ptr<const FeSpace> v0_space, const VectorFn& v, const ScalarFn& div_v,
                         const AssemblyOptions& opts) {
  require_family(*v0_space, Family::RaviartThomas, "project_pvh");
  if (v0_space->constraint() != Constraint::ZeroNormalTrace) {
    throw std::invalid_argument("project_pvh: the RT space must carry the zero normal trace");
  }
  const auto& mesh = v0_space->mesh_ptr();
  const int r = v0_space->degree();
  const auto sigma0 = build_space(mesh, Family::Lagrange, r, Constraint::ZeroTrace);
  const auto s_space = build_space(mesh, Family::Discontinuous, r - 1, Constraint::None);

  const SparseMatrix curl_rows = SparseMatrix(assemble_curl_coupling(*sigma0, *v0_space, opts).transpose());
  const SparseMatrix div_rows = assemble_div_pressure(*v0_space, *s_space, opts);
  const Eigen::VectorXd weights = assemble_mean_weights(*s_space, opts);

  const int nsig = sigma0->num_dofs();
  const int ns = s_space->num_dofs();
  const int nv = v0_space->num_dofs();
  const int n = nsig + ns;
  if (nv + 1 != n) {
    throw std::runtime_error("project_pvh: sequence dimensions do not match (" + std::to_string(nv) + " + 1 != " +
                             std::to_string(n) + ")");
  }

  std::vector<Eigen::Triplet<double>> triplets;
  auto append = [&](const SparseMatrix& a, int row0) {
    for (int k = 0; k < a.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(a, k); it; ++it) triplets.emplace_back(row0 + it.row(), it.col(), it.value());
    }
  };
  append(curl_rows, 0);
  append(div_rows, nsig);
  for (int i = 0; i < ns; ++i) {
    if (weights[i] != 0.0) triplets.emplace_back(nsig + i, nv, weights[i]);
  }
  SparseMatrix a(n, n);
  a.setFromTriplets(triplets.begin(), triplets.end());

  Eigen::VectorXd rhs(n);
  rhs.head(nsig) = assemble_curl_load(*sigma0, v, opts);
  rhs.tail(ns) = assemble_load(*s_space, div_v, opts);

  const Eigen::VectorXd x = sparse_direct_solve(a, rhs);
  return {FeFunction(v0_space, x.head(nv)), sigma0, s_space};
}

SparseMatrix discrete_curl_matrix(const FeSpace& sigma_space, std::shared_ptr<const FeSpace> v_space) {
  require_family(sigma_space, Family::Lagrange, "discrete_curl_matrix");
  require_family(*v_space, Family::RaviartThomas, "discrete_curl_matrix");
  if (sigma_space.degree() != v_space->degree()) throw std::invalid_argument("discrete_curl_matrix: degree mismatch");
  const ReferenceElement& lag = sigma_space.element();
  const ReferenceElement& rt = v_space->element();

  // The Piola pullback of curl tau is the reference curl of the pulled-back
  // tau, so the local matrix does not depend on the cell.
  Eigen::MatrixXd local(rt.num_dofs(), lag.num_dofs());
  for (int j = 0; j < lag.num_dofs(); ++j) {
    const VectorFn ref_curl = [&lag, j](const Vec2& p) {
      const ScalarTabulation tab = lag.tabulate_scalar(std::span<const Vec2>(&p, 1));
      return Vec2(tab.grad_y(0, j), -tab.grad_x(0, j));
    };
    local.col(j) = rt.apply_dofs(ref_curl, 2 * lag.degree());
  }

  const Mesh& mesh = sigma_space.mesh();
  std::vector<char> assigned(v_space->num_dofs(), 0);
  std::vector<Eigen::Triplet<double>> triplets;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto rows = v_space->cell_dofs(t);
    const auto signs = v_space->cell_signs(t);
    const auto cols = sigma_space.cell_dofs(t);
    for (int i = 0; i < rt.num_dofs(); ++i) {
      if (rows[i] < 0 || assigned[rows[i]]) continue;
      assigned[rows[i]] = 1;
      for (int j = 0; j < lag.num_dofs(); ++j) {
        if (cols[j] < 0 || local(i, j) == 0.0) continue;
        triplets.emplace_back(rows[i], cols[j], signs[i] * local(i, j));
      }
    }
  }
  SparseMatrix g(v_space->num_dofs(), sigma_space.num_dofs());
  g.setFromTriplets(triplets.begin(), triplets.end());
  g.prune(0.0, 1e-14);
  return g;
}

HodgeDecomposition discrete_hodge_decompose(const FeFunction& v, const AssemblyOptions& opts) {
  const auto& v_space = v.space;
  require_family(*v_space, Family::RaviartThomas, "discrete_hodge_decompose");
  if (v_space->constraint() != Constraint::ZeroNormalTrace) {
    throw std::invalid_argument("discrete_hodge_decompose: the RT space must carry the zero normal trace");
  }
  const auto& mesh = v_space->mesh_ptr();
  const int r = v_space->degree();
  const auto sigma0 = build_space(mesh, Family::Lagrange, r, Constraint::ZeroTrace);
  const auto s_space = build_space(mesh, Family::Discontinuous, r - 1, Constraint::MeanZero);

  // curl part: (curl rho, curl tau) = (v, curl tau)
  const SparseMatrix coupling = assemble_curl_coupling(*sigma0, *v_space, opts);
  const SparseMatrix k = assemble_curl_curl(*sigma0, *sigma0, opts);
  const Eigen::VectorXd rho = sparse_direct_solve(k, coupling.transpose() * v.coeffs);
  const SparseMatrix gcurl = discrete_curl_matrix(*sigma0, v_space);

  // gradient part: (g, w) + (phi, div w) = 0, (div g, s) = (div v, s)
  const SparseMatrix mass = assemble_mass(*v_space, opts);
  const SparseMatrix b = assemble_div_pressure(*v_space, *s_space, opts);
  BlockSystem system({v_space->num_dofs(), s_space->num_dofs()});
  system.set_block(0, 0, mass);
  system.set_block(0, 1, SparseMatrix(b.transpose()));
  system.set_block(1, 0, b);
  system.pin(1, constant_mode_dof(*s_space));
  system.set_rhs(1, b * v.coeffs);
  const auto assembled = system.compose(false);
  const auto parts = system.split(sparse_direct_solve(assembled.matrix, assembled.rhs));
  FeFunction phi(s_space, parts[1]);
  remove_mean(phi);

  return {FeFunction(sigma0, rho), phi, FeFunction(v_space, gcurl * rho), FeFunction(v_space, parts[0])};
}

}  // namespace mixedfem
