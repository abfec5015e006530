#pragma once

#include <string>
#include <vector>

#include "magspec/assembly.hpp"
#include "magspec/eigensolve.hpp"
#include "magspec/geometry.hpp"
#include "magspec/mesh.hpp"

namespace magspec {

/// Ellipse meshes start from 256 triangles, three red refinements ahead of
/// the small polygon fans, so a nominal level maps to max(2, level - 3) for
/// ellipse domains and is used as-is for polygons.
int effective_level(const Domain& d, int level);

/// Outcome of one eigenvalue-sum comparison between a symmetric domain and
/// its linear image with adapted parameters. `error_budget` is the sum over
/// both sides of |sum(level) - sum(level-1)|, a conservative Richardson-style
/// surrogate for the discretization error.
struct InequalityVerdict {
  double lhs = 0.0;  // mapped domain, transformed parameters
  double rhs = 0.0;  // symmetric domain, original parameters
  double margin = 0.0;            // rhs - lhs
  double error_budget = 0.0;
  bool holds = false;             // margin + error_budget >= 0
  bool strict = false;            // margin > error_budget
  double lhs_coarse = 0.0;
  double rhs_coarse = 0.0;
  int level = 0;
};

/// Compares sum_{j<=n} of the spectrum on D against the image domain T(D)
/// with scaled Planck constant, field and Robin parameter. The image is
/// meshed by transplanting (mapping) the mesh of D, so conformal maps
/// reproduce the equality case to solver precision. Requires declared
/// rotational symmetry of order >= 3 (or the disk sentinel 0) and level >= 1.
InequalityVerdict theorem_check(const Domain& d, const Mat2& t, double hbar, double beta,
                                const BoundaryCondition& bc, int n, int level,
                                const SolveOptions& solver = {});

/// Verdicts for every partial sum n = 1..n_max from a single pair of solves.
std::vector<InequalityVerdict> theorem_check_sums(const Domain& d, const Mat2& t, double hbar,
                                                  double beta, const BoundaryCondition& bc,
                                                  int n_max, int level,
                                                  const SolveOptions& solver = {});

enum class MapFamily { Stretch, Shear };

/// Stretch: diag(t, 1/t) with identity at t = 1. Shear: [[1, t], [0, 1]]
/// with identity at t = 0.
Mat2 family_map(MapFamily family, double t);
std::string family_name(MapFamily family);
double family_identity_parameter(MapFamily family);

struct ScanPoint {
  double parameter = 0.0;
  double area = 0.0;
  double inertia = 0.0;
  std::vector<double> eigenvalues;
  double functional = 0.0;
  double budget = 0.0;  // |functional(level) - functional(level-1)|
};

struct FamilyScan {
  std::vector<ScanPoint> points;
  std::size_t argmax_index = 0;
  double argmax_parameter = 0.0;
  double identity_parameter = 0.0;
  bool monotone_within_budget = false;
};

/// Same-flux scan of the normalized eigenvalue sum (sum lambda_j) A^3 / I
/// over the family of image domains T(t)(D). Every member is solved at field
/// strength flux / A(T(t) D) with the analytic image area. The grid must be
/// strictly increasing and contain the family's identity parameter.
FamilyScan corollary_scan(const Domain& d, MapFamily family, const std::vector<double>& grid,
                          double hbar, double flux, const BoundaryCondition& bc, int n, int level,
                          const SolveOptions& solver = {});

struct CheckResult {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct InvarianceReport {
  std::vector<CheckResult> checks;
  bool all_pass = false;
};

struct InvarianceOptions {
  double exact_tol = 1e-10;   // rotation, reflection, translation, dilation
  double sign_tol = 1e-12;    // +beta / -beta conjugation symmetry
  double gauge_tol = 1e-2;    // spread of lambda_1 across gauges at the top level
  int eigen_count = 3;
  SolveOptions solver;
};

/// Runs the spectral invariance checks: gauge convergence under refinement,
/// exact field-sign conjugation, exact discrete rotation / reflection /
/// translation / dilation covariance, and first-eigenvalue positivity for
/// all three boundary conditions. Failures are reported, not thrown.
InvarianceReport invariance_suite(const Domain& d, double hbar, double beta,
                                  const BoundaryCondition& bc, int level,
                                  const InvarianceOptions& opts = {});

struct FaberKrahnRow {
  std::string domain;
  double area = 0.0;
  double lambda1 = 0.0;
  double product = 0.0;  // lambda_1 * A at field strength flux / A
  double budget = 0.0;
  double disk_product = 0.0;
  double disk_budget = 0.0;
};

struct FaberKrahnReport {
  std::vector<FaberKrahnRow> rows;
  bool disk_minimal = false;
  bool zero_flux_bound_ok = true;  // lambda_1 A >= hbar^2 j01^2 pi, flux = 0 only
  double j01 = 0.0;
};

/// Same-flux comparison of lambda_1 * A against the disk of equal area, plus
/// the zero-field lower bound when flux == 0.
FaberKrahnReport faber_krahn_check(const std::vector<Domain>& domains, double hbar, double flux,
                                   int level, const SolveOptions& solver = {});

/// First positive zero of the Bessel function J0, found by bisection on the
/// standard-library Bessel evaluation.
double bessel_j0_first_zero();

}  // namespace magspec
