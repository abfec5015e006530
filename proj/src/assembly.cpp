#include "magspec/assembly.hpp"

#include <array>
#include <cmath>
#include <set>

#include "magspec/errors.hpp"

namespace magspec {

namespace {

// Degree-5 symmetric triangle rule (7 points, weights sum to 1).
struct QuadratureRule {
  std::array<std::array<double, 3>, 7> bary;
  std::array<double, 7> weights;
};

const QuadratureRule& degree5_rule() {
  static const QuadratureRule rule = [] {
    const double s = std::sqrt(15.0);
    const double a = (6.0 + s) / 21.0, wa = (155.0 + s) / 1200.0;
    const double b = (6.0 - s) / 21.0, wb = (155.0 - s) / 1200.0;
    QuadratureRule r;
    r.bary = {{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
               {1.0 - 2.0 * a, a, a},
               {a, 1.0 - 2.0 * a, a},
               {a, a, 1.0 - 2.0 * a},
               {1.0 - 2.0 * b, b, b},
               {b, 1.0 - 2.0 * b, b},
               {b, b, 1.0 - 2.0 * b}}};
    r.weights = {9.0 / 40.0, wa, wa, wa, wb, wb, wb};
    return r;
  }();
  return rule;
}

struct ElementGeometry {
  std::array<Vec2, 3> p;     // vertex positions, centroid-relative
  std::array<Vec2, 3> grad;  // P1 basis gradients
  double area;
};

ElementGeometry element_geometry(const Mesh& m, const std::array<int, 3>& tri, const Vec2& shift) {
  ElementGeometry g;
  for (int i = 0; i < 3; ++i) g.p[i] = m.vertices[tri[i]] - shift;
  const Vec2 e1 = g.p[1] - g.p[0];
  const Vec2 e2 = g.p[2] - g.p[0];
  const double twice_area = e1.x() * e2.y() - e1.y() * e2.x();
  g.area = 0.5 * twice_area;
  // grad phi_i = rot90(edge opposite to vertex i) / (2 area)
  const Vec2 d0 = g.p[2] - g.p[1];
  const Vec2 d1 = g.p[0] - g.p[2];
  const Vec2 d2 = g.p[1] - g.p[0];
  g.grad[0] = Vec2(-d0.y(), d0.x()) / twice_area;
  g.grad[1] = Vec2(-d1.y(), d1.x()) / twice_area;
  g.grad[2] = Vec2(-d2.y(), d2.x()) / twice_area;
  return g;
}

enum class Term { Full, Kinetic, Cross, Field };

// Local 3x3 block of the magnetic form on one element; `term` selects the
// full integrand or one piece of the expanded symmetric-gauge split.
void local_stiffness(const ElementGeometry& g, const Mat2& potential, double hbar, Term term,
                     Eigen::Matrix3cd& out) {
  out.setZero();

  if (term == Term::Full || term == Term::Kinetic) {
    const double h2a = hbar * hbar * g.area;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out(i, j) += Complex(h2a * g.grad[i].dot(g.grad[j]), 0.0);
  }
  if (term == Term::Kinetic) return;

  const QuadratureRule& rule = degree5_rule();
  for (std::size_t q = 0; q < rule.weights.size(); ++q) {
    const auto& l = rule.bary[q];
    const Vec2 x = l[0] * g.p[0] + l[1] * g.p[1] + l[2] * g.p[2];
    const Vec2 f = potential * x;
    const double w = rule.weights[q] * g.area;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (term == Term::Full || term == Term::Field) {
          out(i, j) += Complex(w * f.squaredNorm() * l[i] * l[j], 0.0);
        }
        if (term == Term::Full || term == Term::Cross) {
          out(i, j) += Complex(0.0, hbar * w * (l[i] * f.dot(g.grad[j]) - l[j] * f.dot(g.grad[i])));
        }
      }
    }
  }
}

struct DofLayout {
  std::vector<int> dof_map;     // active dof -> vertex
  std::vector<int> vertex_dof;  // vertex -> active dof, -1 when eliminated
  Eigen::Index size() const { return static_cast<Eigen::Index>(dof_map.size()); }
};

DofLayout dof_layout(const Mesh& m, const BoundaryCondition& bc) {
  DofLayout layout;
  const int nv = static_cast<int>(m.vertex_count());
  layout.vertex_dof.assign(nv, -1);
  if (bc.kind == BoundaryCondition::Kind::Dirichlet) {
    std::set<int> boundary;
    for (const BoundaryEdge& e : m.boundary_edges) {
      boundary.insert(e.a);
      boundary.insert(e.b);
    }
    for (int v = 0; v < nv; ++v) {
      if (!boundary.count(v)) {
        layout.vertex_dof[v] = static_cast<int>(layout.dof_map.size());
        layout.dof_map.push_back(v);
      }
    }
    if (layout.dof_map.empty()) throw MeshTooCoarse();
  } else {
    layout.dof_map.resize(nv);
    for (int v = 0; v < nv; ++v) {
      layout.dof_map[v] = v;
      layout.vertex_dof[v] = v;
    }
  }
  return layout;
}

using Triplets = std::vector<Eigen::Triplet<Complex>>;

void append_volume_triplets(const Mesh& m, const Mat2& potential, double hbar,
                            const DofLayout& layout, const Vec2& shift, Term term,
                            Triplets& trips) {
  Eigen::Matrix3cd local;
  for (const auto& tri : m.triangles) {
    const ElementGeometry g = element_geometry(m, tri, shift);
    local_stiffness(g, potential, hbar, term, local);
    for (int i = 0; i < 3; ++i) {
      const int di = layout.vertex_dof[tri[i]];
      if (di < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const int dj = layout.vertex_dof[tri[j]];
        if (dj >= 0) trips.emplace_back(di, dj, local(i, j));
      }
    }
  }
}

// sigma * integral_{boundary} u conj(v) ds with the exact P1 edge mass
// (len/6) [[2,1],[1,2]]. sigma == 0 adds nothing, so Robin(0) stays
// bit-identical to Neumann.
void append_robin_triplets(const Mesh& m, const BoundaryCondition& bc, const DofLayout& layout,
                           Triplets& trips) {
  if (bc.kind != BoundaryCondition::Kind::Robin || bc.sigma == 0.0) return;
  for (const BoundaryEdge& e : m.boundary_edges) {
    const int da = layout.vertex_dof[e.a];
    const int db = layout.vertex_dof[e.b];
    if (da < 0 || db < 0) continue;
    const double w = bc.sigma * (m.vertices[e.a] - m.vertices[e.b]).norm() / 6.0;
    trips.emplace_back(da, da, Complex(2.0 * w, 0.0));
    trips.emplace_back(db, db, Complex(2.0 * w, 0.0));
    trips.emplace_back(da, db, Complex(w, 0.0));
    trips.emplace_back(db, da, Complex(w, 0.0));
  }
}

SparseHermitian build_sparse(Eigen::Index n, Triplets& trips) {
  SparseHermitian a(n, n);
  a.setFromTriplets(trips.begin(), trips.end());
  a.makeCompressed();
  return a;
}

SparseReal assemble_mass(const Mesh& m, const DofLayout& layout) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(9 * m.triangle_count());
  for (const auto& tri : m.triangles) {
    const ElementGeometry g = element_geometry(m, tri, Vec2::Zero());
    const double w = g.area / 12.0;
    for (int i = 0; i < 3; ++i) {
      const int di = layout.vertex_dof[tri[i]];
      if (di < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const int dj = layout.vertex_dof[tri[j]];
        if (dj >= 0) trips.emplace_back(di, dj, (i == j ? 2.0 : 1.0) * w);
      }
    }
  }
  SparseReal mass(layout.size(), layout.size());
  mass.setFromTriplets(trips.begin(), trips.end());
  mass.makeCompressed();
  return mass;
}

void validate_inputs(double hbar, const BoundaryCondition& bc) {
  if (!(hbar > 0.0)) throw InvalidPlanck();
  if (bc.kind == BoundaryCondition::Kind::Robin && bc.sigma < 0.0) {
    throw Error("Robin parameter sigma must be >= 0");
  }
}

}  // namespace

BoundaryCondition BoundaryCondition::robin(double sigma) {
  if (sigma < 0.0) throw Error("Robin parameter sigma must be >= 0");
  return {Kind::Robin, sigma};
}

std::string gauge_name(Gauge g) {
  switch (g) {
    case Gauge::Symmetric: return "symmetric";
    case Gauge::LandauX: return "landau-x";
    case Gauge::LandauY: return "landau-y";
  }
  return "?";
}

std::string bc_name(const BoundaryCondition& bc) {
  switch (bc.kind) {
    case BoundaryCondition::Kind::Dirichlet: return "dirichlet";
    case BoundaryCondition::Kind::Neumann: return "neumann";
    case BoundaryCondition::Kind::Robin: return "robin";
  }
  return "?";
}

MagneticOperator assemble(const Mesh& m, const GaugeChoice& gauge, double hbar,
                          const BoundaryCondition& bc) {
  validate_inputs(hbar, bc);
  const DofLayout layout = dof_layout(m, bc);
  const Vec2 shift = mesh_centroid(m);

  Triplets trips;
  trips.reserve(9 * m.triangle_count() + 4 * m.boundary_edges.size());
  append_volume_triplets(m, gauge.coefficient(), hbar, layout, shift, Term::Full, trips);
  append_robin_triplets(m, bc, layout, trips);

  MagneticOperator op;
  op.stiffness = build_sparse(layout.size(), trips);
  op.mass = assemble_mass(m, layout);
  op.dof_map = layout.dof_map;
  op.config = OperatorConfig{m.domain_name, m.level, gauge.variant, hbar, gauge.beta, bc};
  return op;
}

ExpandedForm assemble_expanded_parts(const Mesh& m, double beta, double hbar,
                                     const BoundaryCondition& bc) {
  validate_inputs(hbar, bc);
  const DofLayout layout = dof_layout(m, bc);
  const Vec2 shift = mesh_centroid(m);
  const Mat2 c = symmetric_gauge(beta).coefficient();

  ExpandedForm parts;
  for (const Term term : {Term::Kinetic, Term::Cross, Term::Field}) {
    Triplets trips;
    trips.reserve(9 * m.triangle_count());
    append_volume_triplets(m, c, hbar, layout, shift, term, trips);
    SparseHermitian mat = build_sparse(layout.size(), trips);
    if (term == Term::Kinetic) parts.kinetic = std::move(mat);
    else if (term == Term::Cross) parts.cross = std::move(mat);
    else parts.field = std::move(mat);
  }
  return parts;
}

MagneticOperator assemble_expanded(const Mesh& m, double beta, double hbar,
                                   const BoundaryCondition& bc) {
  validate_inputs(hbar, bc);
  const DofLayout layout = dof_layout(m, bc);
  const ExpandedForm parts = assemble_expanded_parts(m, beta, hbar, bc);

  Triplets robin;
  append_robin_triplets(m, bc, layout, robin);

  MagneticOperator op;
  op.stiffness = parts.kinetic + parts.cross + parts.field + build_sparse(layout.size(), robin);
  op.stiffness.makeCompressed();
  op.mass = assemble_mass(m, layout);
  op.dof_map = layout.dof_map;
  op.config = OperatorConfig{m.domain_name, m.level, Gauge::Symmetric, hbar, beta, bc};
  return op;
}

double rayleigh_quotient(const MagneticOperator& op, const Eigen::VectorXcd& u) {
  if (u.size() != op.dofs()) throw Error("trial vector has wrong dimension");
  const double denom = (u.adjoint() * (op.mass.cast<Complex>() * u)).value().real();
  if (!(denom > 0.0)) throw ZeroTrialFunction();
  const Complex numer = (u.adjoint() * (op.stiffness * u)).value();
  return numer.real() / denom;
}

}  // namespace magspec
