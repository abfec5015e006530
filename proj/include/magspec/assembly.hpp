#pragma once

#include <Eigen/Sparse>
#include <complex>
#include <string>
#include <vector>

#include "magspec/mat2.hpp"
#include "magspec/mesh.hpp"

namespace magspec {

using Complex = std::complex<double>;
using SparseHermitian = Eigen::SparseMatrix<Complex>;
using SparseReal = Eigen::SparseMatrix<double>;

/// Linear vector potentials F(x) = C x with curl F = beta:
///   Symmetric: F = (beta/2) (-x2, x1)
///   LandauY:   F = beta (0, x1)
///   LandauX:   F = beta (-x2, 0)
enum class Gauge { Symmetric, LandauX, LandauY };

struct GaugeChoice {
  Gauge variant = Gauge::Symmetric;
  double beta = 0.0;

  /// Coefficient matrix C of the potential, F(x) = C x.
  Mat2 coefficient() const {
    Mat2 c = Mat2::Zero();
    switch (variant) {
      case Gauge::Symmetric:
        c(0, 1) = -0.5 * beta;
        c(1, 0) = 0.5 * beta;
        break;
      case Gauge::LandauY:
        c(1, 0) = beta;
        break;
      case Gauge::LandauX:
        c(0, 1) = -beta;
        break;
    }
    return c;
  }
};

inline GaugeChoice symmetric_gauge(double beta) { return {Gauge::Symmetric, beta}; }
inline GaugeChoice landau_x_gauge(double beta) { return {Gauge::LandauX, beta}; }
inline GaugeChoice landau_y_gauge(double beta) { return {Gauge::LandauY, beta}; }

std::string gauge_name(Gauge g);

struct BoundaryCondition {
  enum class Kind { Dirichlet, Neumann, Robin };
  Kind kind = Kind::Dirichlet;
  double sigma = 0.0;

  static BoundaryCondition dirichlet() { return {Kind::Dirichlet, 0.0}; }
  static BoundaryCondition neumann() { return {Kind::Neumann, 0.0}; }
  static BoundaryCondition robin(double sigma);
};

std::string bc_name(const BoundaryCondition& bc);

struct OperatorConfig {
  std::string domain;
  int mesh_level = 0;
  Gauge gauge = Gauge::Symmetric;
  double hbar = 1.0;
  double beta = 0.0;
  BoundaryCondition bc;
};

/// Discrete magnetic form on the active degrees of freedom: `stiffness` is
/// the Hermitian matrix of <(i hbar grad + F) u, (i hbar grad + F) v> plus
/// the Robin boundary term, `mass` the exact P1 mass matrix. Dirichlet
/// conditions eliminate boundary vertices; `dof_map` lists the mesh vertex
/// behind each active dof.
struct MagneticOperator {
  SparseHermitian stiffness;
  SparseReal mass;
  std::vector<int> dof_map;
  OperatorConfig config;

  Eigen::Index dofs() const { return stiffness.rows(); }
};

/// Element-wise P1 assembly with a 7-point degree-5 triangle rule. The rule
/// is exact for every integrand here (the worst term, |F|^2 u v, has degree
/// four), so the discrete eigenvalues inherit the one-sided Rayleigh-Ritz
/// bound. Coordinates are taken relative to the mesh centroid before the
/// potential is evaluated.
MagneticOperator assemble(const Mesh& m, const GaugeChoice& gauge, double hbar,
                          const BoundaryCondition& bc);

/// The three pieces of the expanded symmetric-gauge form, assembled with the
/// same quadrature: kinetic hbar^2 |grad u|^2, the linear-in-beta cross term,
/// and the |x|^2-weighted field term (beta^2/4) |x|^2 |u|^2.
struct ExpandedForm {
  SparseHermitian kinetic;
  SparseHermitian cross;
  SparseHermitian field;
};

ExpandedForm assemble_expanded_parts(const Mesh& m, double beta, double hbar,
                                     const BoundaryCondition& bc);

/// Sums the expanded pieces; agrees entrywise with
/// assemble(m, symmetric_gauge(beta), hbar, bc).
MagneticOperator assemble_expanded(const Mesh& m, double beta, double hbar,
                                   const BoundaryCondition& bc);

/// (u^H stiffness u) / (u^H mass u); real for Hermitian forms.
double rayleigh_quotient(const MagneticOperator& op, const Eigen::VectorXcd& u);

}  // namespace magspec
