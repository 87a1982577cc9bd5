#include "mixedfem/assembly.hpp"

#include "mixedfem/parallel.hpp"
#include "mixedfem/quadrature.hpp"

#include <omp.h>

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace mixedfem {

int available_threads() { return omp_get_max_threads(); }

namespace {

enum Component { kValue = 0, kDx = 1, kDy = 2, kVx = 0, kVy = 1, kDiv = 2 };

// Basis data of one reference element at the quadrature points: for scalar
// elements (value, d/dx, d/dy), for RT (v_x, v_y, div), each nq x ndofs.
struct ComponentTable {
  std::array<Eigen::MatrixXd, 3> comp;
};

ComponentTable tabulate(const ReferenceElement& el, const QuadratureRule& rule) {
  ComponentTable t;
  if (el.is_vector()) {
    VectorTabulation v = el.tabulate_vector(rule.points);
    t.comp = {std::move(v.values_x), std::move(v.values_y), std::move(v.divergence)};
  } else {
    ScalarTabulation s = el.tabulate_scalar(rule.points);
    t.comp = {std::move(s.values), std::move(s.grad_x), std::move(s.grad_y)};
  }
  return t;
}

// Reference-element products int test_a * trial_b. On affine cells every
// local matrix used here is a fixed linear combination of these.
class ReferenceProducts {
 public:
  ReferenceProducts(const ReferenceElement& test, const ReferenceElement& trial, const QuadratureRule& rule) {
    const ComponentTable a = tabulate(test, rule);
    const ComponentTable b = tabulate(trial, rule);
    const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(), rule.size());
    for (int i = 0; i < 3; ++i) {
      const Eigen::MatrixXd weighted = w.asDiagonal() * a.comp[i];
      for (int j = 0; j < 3; ++j) products_[i][j] = weighted.transpose() * b.comp[j];
    }
  }
  const Eigen::MatrixXd& operator()(int a, int b) const { return products_[a][b]; }

 private:
  std::array<std::array<Eigen::MatrixXd, 3>, 3> products_;
};

int resolve_degree(const AssemblyOptions& opts, int r) {
  return opts.quad_degree > 0 ? opts.quad_degree : std::min(2 * r + 4, 20);
}

void check_same_mesh(const FeSpace& a, const FeSpace& b) {
  if (&a.mesh() != &b.mesh()) throw std::invalid_argument("spaces are defined on different meshes");
}

int cell_at(const AssemblyOptions& opts, int idx) { return opts.order.empty() ? idx : opts.order[idx]; }

// Local matrices are computed per cell (in parallel when requested) into
// disjoint slots of one buffer, then scattered serially in visiting order.
template <class Kernel>
SparseMatrix assemble_cells(const FeSpace& test, const FeSpace& trial, const AssemblyOptions& opts, Kernel&& kernel) {
  check_same_mesh(test, trial);
  const int nt = test.mesh().num_triangles();
  if (!opts.order.empty() && static_cast<int>(opts.order.size()) != nt) {
    throw std::invalid_argument("element order must be a permutation of the triangles");
  }
  const int ni = test.dofs_per_cell();
  const int nj = trial.dofs_per_cell();
  const std::size_t block = static_cast<std::size_t>(ni) * nj;
  std::vector<double> buffer(block * nt);
  for_each_index(nt, opts.policy, [&](int idx) {
    Eigen::Map<Eigen::MatrixXd> local(buffer.data() + block * idx, ni, nj);
    kernel(cell_at(opts, idx), local);
  });

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(block * nt);
  for (int idx = 0; idx < nt; ++idx) {
    const int t = cell_at(opts, idx);
    const auto rd = test.cell_dofs(t);
    const auto rs = test.cell_signs(t);
    const auto cd = trial.cell_dofs(t);
    const auto cs = trial.cell_signs(t);
    const Eigen::Map<const Eigen::MatrixXd> local(buffer.data() + block * idx, ni, nj);
    for (int j = 0; j < nj; ++j) {
      if (cd[j] < 0) continue;
      for (int i = 0; i < ni; ++i) {
        if (rd[i] < 0) continue;
        triplets.emplace_back(rd[i], cd[j], rs[i] * cs[j] * local(i, j));
      }
    }
  }
  SparseMatrix a(test.num_dofs(), trial.num_dofs());
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

template <class Kernel>
Eigen::VectorXd assemble_cell_vector(const FeSpace& space, const AssemblyOptions& opts, Kernel&& kernel) {
  const int nt = space.mesh().num_triangles();
  const int ni = space.dofs_per_cell();
  std::vector<double> buffer(static_cast<std::size_t>(ni) * nt);
  for_each_index(nt, opts.policy, [&](int idx) {
    Eigen::Map<Eigen::VectorXd> local(buffer.data() + static_cast<std::size_t>(ni) * idx, ni);
    kernel(cell_at(opts, idx), local);
  });
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space.num_dofs());
  for (int idx = 0; idx < nt; ++idx) {
    const int t = cell_at(opts, idx);
    const auto d = space.cell_dofs(t);
    const auto s = space.cell_signs(t);
    for (int i = 0; i < ni; ++i) {
      if (d[i] >= 0) out[d[i]] += s[i] * buffer[static_cast<std::size_t>(ni) * idx + i];
    }
  }
  return out;
}

void require_family(const FeSpace& s, Family f, const char* what) {
  if (s.family() != f) {
    throw std::invalid_argument(std::string(what) + ": expected a " + to_string(f) + " space, got " +
                                to_string(s.family()));
  }
}

}  // namespace

SparseMatrix assemble_mass(const FeSpace& space, const AssemblyOptions& opts) {
  const QuadratureRule& rule = cached_triangle_quadrature(resolve_degree(opts, space.degree()));
  const ReferenceProducts ref(space.element(), space.element(), rule);
  const Mesh& mesh = space.mesh();
  if (space.element().is_vector()) {
    return assemble_cells(space, space, opts, [&](int t, auto& local) {
      const CellGeometry g = cell_geometry(mesh, t);
      const Mat2 metric = g.jacobian.transpose() * g.jacobian / g.det;
      local = metric(0, 0) * ref(kVx, kVx) + metric(0, 1) * ref(kVx, kVy) + metric(1, 0) * ref(kVy, kVx) +
              metric(1, 1) * ref(kVy, kVy);
    });
  }
  return assemble_cells(space, space, opts, [&](int t, auto& local) {
    local = cell_geometry(mesh, t).det * ref(kValue, kValue);
  });
}

SparseMatrix assemble_curl_curl(const FeSpace& test, const FeSpace& trial, const AssemblyOptions& opts) {
  require_family(test, Family::Lagrange, "assemble_curl_curl");
  require_family(trial, Family::Lagrange, "assemble_curl_curl");
  check_same_mesh(test, trial);
  const QuadratureRule& rule =
      cached_triangle_quadrature(resolve_degree(opts, std::max(test.degree(), trial.degree())));
  const ReferenceProducts ref(test.element(), trial.element(), rule);
  const Mesh& mesh = test.mesh();
  return assemble_cells(test, trial, opts, [&](int t, auto& local) {
    const CellGeometry g = cell_geometry(mesh, t);
    const Mat2 k = g.det * g.inverse * g.inverse.transpose();
    local = k(0, 0) * ref(kDx, kDx) + k(0, 1) * ref(kDx, kDy) + k(1, 0) * ref(kDy, kDx) + k(1, 1) * ref(kDy, kDy);
  });
}

SparseMatrix assemble_curl_coupling(const FeSpace& sigma_space, const FeSpace& v_space,
                                    const AssemblyOptions& opts) {
  require_family(sigma_space, Family::Lagrange, "assemble_curl_coupling");
  require_family(v_space, Family::RaviartThomas, "assemble_curl_coupling");
  check_same_mesh(sigma_space, v_space);
  const QuadratureRule& rule =
      cached_triangle_quadrature(resolve_degree(opts, std::max(sigma_space.degree(), v_space.degree())));
  const ReferenceProducts ref(v_space.element(), sigma_space.element(), rule);
  const Mesh& mesh = v_space.mesh();
  Mat2 rot;
  rot << 0.0, 1.0, -1.0, 0.0;  // curl tau = rot * grad tau
  return assemble_cells(v_space, sigma_space, opts, [&](int t, auto& local) {
    const CellGeometry g = cell_geometry(mesh, t);
    // det * (J vhat / det) . (rot J^{-T} grad_hat tau)
    const Mat2 h = g.jacobian.transpose() * rot * g.inverse.transpose();
    local = h(0, 0) * ref(kVx, kDx) + h(0, 1) * ref(kVx, kDy) + h(1, 0) * ref(kVy, kDx) + h(1, 1) * ref(kVy, kDy);
  });
}

SparseMatrix assemble_divdiv(const FeSpace& v_space, const AssemblyOptions& opts) {
  require_family(v_space, Family::RaviartThomas, "assemble_divdiv");
  const QuadratureRule& rule = cached_triangle_quadrature(resolve_degree(opts, v_space.degree()));
  const ReferenceProducts ref(v_space.element(), v_space.element(), rule);
  const Mesh& mesh = v_space.mesh();
  return assemble_cells(v_space, v_space, opts, [&](int t, auto& local) {
    local = ref(kDiv, kDiv) / cell_geometry(mesh, t).det;
  });
}

SparseMatrix assemble_div_pressure(const FeSpace& v_space, const FeSpace& p_space, const AssemblyOptions& opts) {
  require_family(v_space, Family::RaviartThomas, "assemble_div_pressure");
  require_family(p_space, Family::Discontinuous, "assemble_div_pressure");
  check_same_mesh(v_space, p_space);
  if (p_space.degree() != v_space.degree() - 1) {
    throw std::invalid_argument("assemble_div_pressure: discontinuous degree must be RT degree - 1");
  }
  const QuadratureRule& rule = cached_triangle_quadrature(resolve_degree(opts, v_space.degree()));
  const ReferenceProducts ref(p_space.element(), v_space.element(), rule);
  // det * q * (div_hat v / det): independent of the cell.
  return assemble_cells(p_space, v_space, opts, [&](int, auto& local) { local = ref(kValue, kDiv); });
}

Eigen::VectorXd assemble_load(const FeSpace& space, const ScalarFn& f, const AssemblyOptions& opts) {
  if (space.element().is_vector()) throw std::invalid_argument("assemble_load: scalar load on a vector space");
  const QuadratureRule& rule = cached_triangle_quadrature(resolve_degree(opts, space.degree()));
  const ComponentTable tab = tabulate(space.element(), rule);
  const Mesh& mesh = space.mesh();
  return assemble_cell_vector(space, opts, [&](int t, auto& local) {
    const CellGeometry g = cell_geometry(mesh, t);
    local.setZero();
    for (int q = 0; q < rule.size(); ++q) {
      local += (g.det * rule.weights[q] * f(g.map(rule.points[q]))) * tab.comp[kValue].row(q).transpose();
    }
  });
}

Eigen::VectorXd assemble_load(const FeSpace& space, const VectorFn& f, const AssemblyOptions& opts) {
  if (!space.element().is_vector()) throw std::invalid_argument("assemble_load: vector load on a scalar space");
  const QuadratureRule& rule = cached_triangle_quadrature(resolve_degree(opts, space.degree()));
  const ComponentTable tab = tabulate(space.element(), rule);
  const Mesh& mesh = space.mesh();
  return assemble_cell_vector(space, opts, [&](int t, auto& local) {
    const CellGeometry g = cell_geometry(mesh, t);
    local.setZero();
    for (int q = 0; q < rule.size(); ++q) {
      // det * f . (J vhat / det) = (J^T f) . vhat
      const Vec2 jf = g.jacobian.transpose() * f(g.map(rule.points[q])) * rule.weights[q];
      local += jf.x() * tab.comp[kVx].row(q).transpose() + jf.y() * tab.comp[kVy].row(q).transpose();
    }
  });
}

Eigen::VectorXd assemble_gradient_load(const FeSpace& space, const VectorFn& g, const AssemblyOptions& opts) {
  if (space.element().is_vector()) throw std::invalid_argument("assemble_gradient_load: needs a scalar space");
  const QuadratureRule& rule = cached_triangle_quadrature(resolve_degree(opts, space.degree()));
  const ComponentTable tab = tabulate(space.element(), rule);
  const Mesh& mesh = space.mesh();
  return assemble_cell_vector(space, opts, [&](int t, auto& local) {
    const CellGeometry g_cell = cell_geometry(mesh, t);
    local.setZero();
    for (int q = 0; q < rule.size(); ++q) {
      // det * g . (J^{-T} grad_hat phi)
      const Vec2 w = g_cell.det * rule.weights[q] * (g_cell.inverse * g(g_cell.map(rule.points[q])));
      local += w.x() * tab.comp[kDx].row(q).transpose() + w.y() * tab.comp[kDy].row(q).transpose();
    }
  });
}

Eigen::VectorXd assemble_curl_load(const FeSpace& space, const VectorFn& v, const AssemblyOptions& opts) {
  // v . curl phi = (-v_y, v_x) . grad phi
  return assemble_gradient_load(
      space, VectorFn([&](const Vec2& x) -> Vec2 {
        const Vec2 val = v(x);
        return {-val.y(), val.x()};
      }),
      opts);
}

double integrate(const Mesh& mesh, const ScalarFn& f, int quad_degree, ExecPolicy policy) {
  const QuadratureRule& rule = cached_triangle_quadrature(quad_degree);
  std::vector<double> cell(mesh.num_triangles());
  for_each_index(mesh.num_triangles(), policy, [&](int t) {
    const CellGeometry g = cell_geometry(mesh, t);
    double sum = 0.0;
    for (int q = 0; q < rule.size(); ++q) sum += rule.weights[q] * f(g.map(rule.points[q]));
    cell[t] = g.det * sum;
  });
  double total = 0.0;
  for (double c : cell) total += c;
  return total;
}

Eigen::VectorXd assemble_mean_weights(const FeSpace& space, const AssemblyOptions& opts) {
  return assemble_load(space, ScalarFn([](const Vec2&) { return 1.0; }), opts);
}

BlockSystem::BlockSystem(std::vector<int> block_sizes) : sizes_(std::move(block_sizes)) {
  offsets_.resize(sizes_.size() + 1, 0);
  for (std::size_t i = 0; i < sizes_.size(); ++i) offsets_[i + 1] = offsets_[i] + sizes_[i];
  rhs_.resize(sizes_.size());
}

void BlockSystem::set_block(int row, int col, const SparseMatrix& block, double scale) {
  if (row < 0 || col < 0 || row >= static_cast<int>(sizes_.size()) || col >= static_cast<int>(sizes_.size())) {
    throw std::invalid_argument("BlockSystem: block index out of range");
  }
  if (block.rows() != sizes_[row] || block.cols() != sizes_[col]) {
    throw std::invalid_argument("BlockSystem: block (" + std::to_string(row) + "," + std::to_string(col) +
                                ") has dimensions " + std::to_string(block.rows()) + "x" +
                                std::to_string(block.cols()) + ", expected " + std::to_string(sizes_[row]) + "x" +
                                std::to_string(sizes_[col]));
  }
  entries_.push_back({row, col, block, scale});
}

void BlockSystem::set_rhs(int row, const Eigen::VectorXd& rhs) {
  if (rhs.size() != sizes_.at(row)) throw std::invalid_argument("BlockSystem: rhs length mismatch");
  rhs_[row] = rhs;
}

void BlockSystem::add_mean_constraint(int block, const Eigen::VectorXd& weights, double value) {
  if (weights.size() != sizes_.at(block)) throw std::invalid_argument("BlockSystem: mean weight length mismatch");
  means_.push_back({block, weights, value});
}

void BlockSystem::pin(int block, int index) {
  if (index < 0 || index >= sizes_.at(block)) throw std::invalid_argument("BlockSystem: pinned index out of range");
  pinned_.push_back(offsets_[block] + index);
}

int BlockSystem::size() const { return offsets_.back() + static_cast<int>(means_.size()); }

BlockSystem::Assembled BlockSystem::compose(bool symmetrize) const {
  const int n = size();
  std::vector<Eigen::Triplet<double>> triplets;
  for (const Entry& e : entries_) {
    const double s = e.scale * ((symmetrize && e.row == 0) ? -1.0 : 1.0);
    for (int k = 0; k < e.block.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(e.block, k); it; ++it) {
        triplets.emplace_back(offsets_[e.row] + it.row(), offsets_[e.col] + it.col(), s * it.value());
      }
    }
  }
  for (std::size_t m = 0; m < means_.size(); ++m) {
    const int extra = offsets_.back() + static_cast<int>(m);
    const int block = means_[m].block;
    const Eigen::VectorXd& w = means_[m].weights;
    const double s = (symmetrize && block == 0) ? -1.0 : 1.0;
    for (int i = 0; i < w.size(); ++i) {
      if (w[i] == 0.0) continue;
      triplets.emplace_back(offsets_[block] + i, extra, s * w[i]);
      triplets.emplace_back(extra, offsets_[block] + i, s * w[i]);
    }
  }
  if (!pinned_.empty()) {
    std::vector<char> fixed(n, 0);
    for (int i : pinned_) fixed[i] = 1;
    std::erase_if(triplets, [&](const Eigen::Triplet<double>& t) { return fixed[t.row()] || fixed[t.col()]; });
    for (int i : pinned_) triplets.emplace_back(i, i, 1.0);
  }
  Assembled out;
  out.matrix.resize(n, n);
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  out.rhs = Eigen::VectorXd::Zero(n);
  for (std::size_t b = 0; b < sizes_.size(); ++b) {
    if (!rhs_[b]) continue;
    const double s = (symmetrize && b == 0) ? -1.0 : 1.0;
    out.rhs.segment(offsets_[b], sizes_[b]) = s * *rhs_[b];
  }
  for (std::size_t m = 0; m < means_.size(); ++m) {
    const double s = (symmetrize && means_[m].block == 0) ? -1.0 : 1.0;
    out.rhs[offsets_.back() + static_cast<int>(m)] = s * means_[m].value;
  }
  for (int i : pinned_) out.rhs[i] = 0.0;
  return out;
}

std::vector<Eigen::VectorXd> BlockSystem::split(const Eigen::VectorXd& x) const {
  if (x.size() != size()) throw std::invalid_argument("BlockSystem::split: length mismatch");
  std::vector<Eigen::VectorXd> parts;
  for (std::size_t b = 0; b < sizes_.size(); ++b) parts.emplace_back(x.segment(offsets_[b], sizes_[b]));
  return parts;
}

double max_asymmetry(const SparseMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  const SparseMatrix at = a.transpose();
  const SparseMatrix diff = a - at;
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

void write_coordinate(std::ostream& os, const SparseMatrix& a) {
  os.precision(17);
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
  }
}

}  // namespace mixedfem
