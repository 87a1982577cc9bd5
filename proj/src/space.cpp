#include "mixedfem/space.hpp"

#include <stdexcept>
#include <string>

namespace mixedfem {

const char* to_string(Constraint c) {
  switch (c) {
    case Constraint::None: return "none";
    case Constraint::ZeroTrace: return "zero_trace";
    case Constraint::ZeroNormalTrace: return "zero_normal_trace";
    case Constraint::MeanZero: return "mean_zero";
  }
  return "?";
}

CellGeometry cell_geometry(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangle(t);
  CellGeometry g;
  g.origin = mesh.vertex(tri[0]);
  g.jacobian.col(0) = mesh.vertex(tri[1]) - g.origin;
  g.jacobian.col(1) = mesh.vertex(tri[2]) - g.origin;
  g.det = g.jacobian.determinant();
  g.inverse = g.jacobian.inverse();
  return g;
}

FeSpace::FeSpace(std::shared_ptr<const Mesh> mesh, Family family, int degree, Constraint constraint)
    : mesh_(std::move(mesh)), element_(&ReferenceElement::get(family, degree)), constraint_(constraint) {
  const bool compatible = constraint == Constraint::None ||
                          (constraint == Constraint::ZeroTrace && family == Family::Lagrange) ||
                          (constraint == Constraint::ZeroNormalTrace && family == Family::RaviartThomas) ||
                          (constraint == Constraint::MeanZero && family == Family::Discontinuous);
  if (!compatible) {
    throw std::invalid_argument(std::string("constraint ") + to_string(constraint) + " is incompatible with " +
                                to_string(family) + " elements");
  }

  const Mesh& m = *mesh_;
  const ReferenceElement& el = *element_;
  const int nloc = el.num_dofs();
  const int nv = m.num_vertices();
  const int ne = m.num_edges();
  const int nt = m.num_triangles();
  const int per_vertex = el.dofs_per_vertex();
  const int per_edge = el.dofs_per_edge();
  const int per_interior = el.dofs_per_interior();
  const int edge_offset = per_vertex * nv;
  const int interior_offset = edge_offset + per_edge * ne;
  num_full_ = interior_offset + per_interior * nt;

  cell_full_.assign(static_cast<std::size_t>(nt) * nloc, -1);
  cell_signs_.assign(static_cast<std::size_t>(nt) * nloc, 1.0);
  for (int t = 0; t < nt; ++t) {
    const auto& tri = m.triangle(t);
    for (int i = 0; i < nloc; ++i) {
      const DofDescriptor& d = el.dofs()[i];
      const std::size_t slot = static_cast<std::size_t>(t) * nloc + i;
      switch (d.kind) {
        case EntityKind::Vertex:
          cell_full_[slot] = tri[d.entity];
          break;
        case EntityKind::Edge: {
          const int e = m.triangle_edge(t, d.entity);
          const int sign = m.edge_sign(t, d.entity);
          if (el.family() == Family::Lagrange) {
            const int j = sign > 0 ? d.index : per_edge - 1 - d.index;
            cell_full_[slot] = edge_offset + e * per_edge + j;
          } else {
            cell_full_[slot] = edge_offset + e * per_edge + d.index;
            cell_signs_[slot] = (d.index % 2 == 0) ? sign : 1.0;
          }
          break;
        }
        case EntityKind::Interior:
          cell_full_[slot] = interior_offset + t * per_interior + d.index;
          break;
      }
    }
  }

  std::vector<char> eliminated(num_full_, 0);
  if (constraint == Constraint::ZeroTrace) {
    for (int v = 0; v < nv; ++v) {
      if (m.is_boundary_vertex(v)) eliminated[v] = 1;
    }
  }
  if (constraint == Constraint::ZeroTrace || constraint == Constraint::ZeroNormalTrace) {
    for (int e = 0; e < ne; ++e) {
      if (!m.is_boundary_edge(e)) continue;
      for (int j = 0; j < per_edge; ++j) eliminated[edge_offset + e * per_edge + j] = 1;
    }
  }
  std::vector<int> free_index(num_full_, -1);
  for (int i = 0; i < num_full_; ++i) {
    if (eliminated[i]) {
      constrained_.push_back(i);
    } else {
      free_index[i] = num_free_++;
    }
  }
  cell_dofs_.resize(cell_full_.size());
  for (std::size_t i = 0; i < cell_full_.size(); ++i) cell_dofs_[i] = free_index[cell_full_[i]];
}

std::shared_ptr<const FeSpace> build_space(std::shared_ptr<const Mesh> mesh, Family family, int degree,
                                           Constraint constraint) {
  if (!mesh) throw std::invalid_argument("build_space: null mesh");
  return std::make_shared<const FeSpace>(std::move(mesh), family, degree, constraint);
}

FeFunction::FeFunction(std::shared_ptr<const FeSpace> s, Eigen::VectorXd c) : space(std::move(s)), coeffs(std::move(c)) {
  if (coeffs.size() != space->num_dofs()) throw std::invalid_argument("FeFunction: coefficient length mismatch");
}

Eigen::VectorXd FeFunction::local_coefficients(int t) const {
  const auto dofs = space->cell_dofs(t);
  const auto signs = space->cell_signs(t);
  Eigen::VectorXd local(dofs.size());
  for (std::size_t i = 0; i < dofs.size(); ++i) local[i] = dofs[i] >= 0 ? signs[i] * coeffs[dofs[i]] : 0.0;
  return local;
}

namespace {

const ReferenceElement& scalar_element(const FeFunction& f) {
  if (f.space->element().is_vector()) throw std::logic_error("scalar evaluation of a vector-valued function");
  return f.space->element();
}

const ReferenceElement& vector_element(const FeFunction& f) {
  if (!f.space->element().is_vector()) throw std::logic_error("vector evaluation of a scalar function");
  return f.space->element();
}

}  // namespace

double evaluate_scalar(const FeFunction& f, int t, const Vec2& ref) {
  const ScalarTabulation tab = scalar_element(f).tabulate_scalar(std::span<const Vec2>(&ref, 1));
  return tab.values.row(0).dot(f.local_coefficients(t));
}

Vec2 evaluate_gradient(const FeFunction& f, int t, const Vec2& ref) {
  const ScalarTabulation tab = scalar_element(f).tabulate_scalar(std::span<const Vec2>(&ref, 1));
  const Eigen::VectorXd c = f.local_coefficients(t);
  const Vec2 ref_grad(tab.grad_x.row(0).dot(c), tab.grad_y.row(0).dot(c));
  const CellGeometry g = cell_geometry(f.space->mesh(), t);
  return g.inverse.transpose() * ref_grad;
}

Vec2 evaluate_vector(const FeFunction& f, int t, const Vec2& ref) {
  const VectorTabulation tab = vector_element(f).tabulate_vector(std::span<const Vec2>(&ref, 1));
  const Eigen::VectorXd c = f.local_coefficients(t);
  const Vec2 ref_val(tab.values_x.row(0).dot(c), tab.values_y.row(0).dot(c));
  const CellGeometry g = cell_geometry(f.space->mesh(), t);
  return g.jacobian * ref_val / g.det;
}

double evaluate_divergence(const FeFunction& f, int t, const Vec2& ref) {
  const VectorTabulation tab = vector_element(f).tabulate_vector(std::span<const Vec2>(&ref, 1));
  const CellGeometry g = cell_geometry(f.space->mesh(), t);
  return tab.divergence.row(0).dot(f.local_coefficients(t)) / g.det;
}

namespace {

template <class LocalDofs>
FeFunction interpolate_cells(std::shared_ptr<const FeSpace> space, LocalDofs&& local_dofs) {
  FeFunction out(space);
  std::vector<char> assigned(space->num_dofs(), 0);
  for (int t = 0; t < space->mesh().num_triangles(); ++t) {
    const auto dofs = space->cell_dofs(t);
    const auto signs = space->cell_signs(t);
    bool needed = false;
    for (int d : dofs) needed = needed || (d >= 0 && !assigned[d]);
    if (!needed) continue;
    const Eigen::VectorXd values = local_dofs(t);
    for (std::size_t i = 0; i < dofs.size(); ++i) {
      if (dofs[i] < 0 || assigned[dofs[i]]) continue;
      out.coeffs[dofs[i]] = signs[i] * values[i];
      assigned[dofs[i]] = 1;
    }
  }
  return out;
}

}  // namespace

FeFunction interpolate(std::shared_ptr<const FeSpace> space, const CellScalarFn& f, int quad_degree) {
  if (space->element().is_vector()) throw std::invalid_argument("interpolate: scalar field into a vector space");
  const Mesh& mesh = space->mesh();
  const ReferenceElement& el = space->element();
  return interpolate_cells(space, [&](int t) {
    const CellGeometry g = cell_geometry(mesh, t);
    return el.apply_dofs(ScalarFn([&](const Vec2& ref) { return f(t, g.map(ref)); }), quad_degree);
  });
}

FeFunction interpolate(std::shared_ptr<const FeSpace> space, const CellVectorFn& f, int quad_degree) {
  if (!space->element().is_vector()) throw std::invalid_argument("interpolate: vector field into a scalar space");
  const Mesh& mesh = space->mesh();
  const ReferenceElement& el = space->element();
  return interpolate_cells(space, [&](int t) {
    const CellGeometry g = cell_geometry(mesh, t);
    // Inverse Piola: vhat = det J * J^{-1} v.
    const Mat2 pull = g.det * g.inverse;
    return el.apply_dofs(VectorFn([&](const Vec2& ref) -> Vec2 { return pull * f(t, g.map(ref)); }), quad_degree);
  });
}

FeFunction interpolate(std::shared_ptr<const FeSpace> space, const ScalarFn& f, int quad_degree) {
  return interpolate(std::move(space), CellScalarFn([&](int, const Vec2& x) { return f(x); }), quad_degree);
}

FeFunction interpolate(std::shared_ptr<const FeSpace> space, const VectorFn& f, int quad_degree) {
  return interpolate(std::move(space), CellVectorFn([&](int, const Vec2& x) { return f(x); }), quad_degree);
}

}  // namespace mixedfem
