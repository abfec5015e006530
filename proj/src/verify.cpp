#include "magspec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magspec/errors.hpp"

namespace magspec {

namespace {

std::vector<double> spectrum_on_mesh(const Mesh& mesh, const GaugeChoice& gauge, double hbar,
                                     const BoundaryCondition& bc, int n,
                                     const SolveOptions& solver) {
  const MagneticOperator op = assemble(mesh, gauge, hbar, bc);
  return lowest_eigenvalues(op, n, solver).eigenvalues;
}

// Largest |lambda| in either list, used to normalize spectrum deviations.
double spectrum_scale(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (double x : a) s = std::max(s, std::abs(x));
  for (double x : b) s = std::max(s, std::abs(x));
  return std::max(s, 1e-300);
}

double spectrum_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  double dev = 0.0;
  for (std::size_t j = 0; j < a.size() && j < b.size(); ++j) {
    dev = std::max(dev, std::abs(a[j] - b[j]));
  }
  return dev / spectrum_scale(a, b);
}

void require_symmetry(const Domain& d) {
  if (d.symmetry_order != 0 && d.symmetry_order < 3) throw SymmetryRequired();
}

}  // namespace

int effective_level(const Domain& d, int level) {
  // Floor 2: the level-0 ellipse fan has a single interior vertex, so the
  // level-1 coarse solve of the error budget needs at least level 2 here.
  if (d.shape == Domain::Shape::Ellipse) return std::max(2, level - 3);
  return level;
}

std::vector<InequalityVerdict> theorem_check_sums(const Domain& d, const Mat2& t, double hbar,
                                                  double beta, const BoundaryCondition& bc,
                                                  int n_max, int level, const SolveOptions& solver) {
  require_symmetry(d);
  if (t.determinant() == 0.0) throw SingularMap();
  if (level < 1) throw Error("theorem_check needs level >= 1 for the error budget");
  if (n_max < 1) throw Error("theorem_check needs n >= 1");

  const double sigma = bc.kind == BoundaryCondition::Kind::Robin ? bc.sigma : 0.0;
  const TransformedParameters tp = transformed_parameters(t, hbar, beta, sigma);
  const BoundaryCondition bc_t =
      bc.kind == BoundaryCondition::Kind::Robin ? BoundaryCondition::robin(tp.sigma_t) : bc;

  const int fine = effective_level(d, level);
  const Mesh base = triangulate(d);

  std::vector<double> rhs_fine, lhs_fine, rhs_coarse, lhs_coarse;
  for (const int lev : {fine - 1, fine}) {
    const Mesh mesh_d = refine(base, lev);
    const Mesh mesh_t = map_mesh(mesh_d, t);
    std::vector<double> rhs =
        spectrum_on_mesh(mesh_d, symmetric_gauge(beta), hbar, bc, n_max, solver);
    std::vector<double> lhs =
        spectrum_on_mesh(mesh_t, symmetric_gauge(tp.beta_t), tp.hbar_t, bc_t, n_max, solver);
    if (lev == fine) {
      rhs_fine = std::move(rhs);
      lhs_fine = std::move(lhs);
    } else {
      rhs_coarse = std::move(rhs);
      lhs_coarse = std::move(lhs);
    }
  }

  std::vector<InequalityVerdict> verdicts;
  verdicts.reserve(n_max);
  double rf = 0.0, lf = 0.0, rc = 0.0, lc = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    rf += rhs_fine[n - 1];
    lf += lhs_fine[n - 1];
    rc += rhs_coarse[n - 1];
    lc += lhs_coarse[n - 1];
    InequalityVerdict v;
    v.level = fine;
    v.rhs = rf;
    v.lhs = lf;
    v.rhs_coarse = rc;
    v.lhs_coarse = lc;
    v.margin = v.rhs - v.lhs;
    v.error_budget = std::abs(v.rhs - v.rhs_coarse) + std::abs(v.lhs - v.lhs_coarse);
    v.holds = v.margin + v.error_budget >= 0.0;
    v.strict = v.margin > v.error_budget;
    verdicts.push_back(v);
  }
  return verdicts;
}

InequalityVerdict theorem_check(const Domain& d, const Mat2& t, double hbar, double beta,
                                const BoundaryCondition& bc, int n, int level,
                                const SolveOptions& solver) {
  return theorem_check_sums(d, t, hbar, beta, bc, n, level, solver).back();
}

Mat2 family_map(MapFamily family, double t) {
  Mat2 m = Mat2::Identity();
  if (family == MapFamily::Stretch) {
    if (t == 0.0) throw SingularMap();
    m(0, 0) = t;
    m(1, 1) = 1.0 / t;
  } else {
    m(0, 1) = t;
  }
  return m;
}

std::string family_name(MapFamily family) {
  return family == MapFamily::Stretch ? "stretch" : "shear";
}

double family_identity_parameter(MapFamily family) {
  return family == MapFamily::Stretch ? 1.0 : 0.0;
}

FamilyScan corollary_scan(const Domain& d, MapFamily family, const std::vector<double>& grid,
                          double hbar, double flux, const BoundaryCondition& bc, int n, int level,
                          const SolveOptions& solver) {
  require_symmetry(d);
  if (grid.empty()) throw Error("scan grid is empty");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw Error("scan grid must be strictly increasing");
  }
  const double id_param = family_identity_parameter(family);
  const bool has_identity =
      std::any_of(grid.begin(), grid.end(),
                  [&](double t) { return (family_map(family, t) - Mat2::Identity()).norm() <= 1e-12; });
  if (!has_identity) throw Error("scan grid must include the identity parameter");

  FamilyScan scan;
  scan.identity_parameter = id_param;
  scan.points.reserve(grid.size());

  for (const double t : grid) {
    const Mat2 map = family_map(family, t);
    const Domain image = apply_linear_map(d, map);
    const double a = area(image);
    const double beta = flux / a;
    const int fine = effective_level(image, level);

    ScanPoint point;
    point.parameter = t;
    point.area = a;
    point.inertia = moment_of_inertia(image);

    const Mesh base = triangulate(image);
    double coarse_functional = 0.0;
    for (const int lev : {fine - 1, fine}) {
      const Mesh mesh = refine(base, lev);
      const std::vector<double> eigs =
          spectrum_on_mesh(mesh, symmetric_gauge(beta), hbar, bc, n, solver);
      const double functional = normalized_functional(eigs, image);
      if (lev == fine) {
        point.eigenvalues = eigs;
        point.functional = functional;
      } else {
        coarse_functional = functional;
      }
    }
    point.budget = std::abs(point.functional - coarse_functional);
    scan.points.push_back(std::move(point));
  }

  scan.argmax_index = 0;
  for (std::size_t k = 1; k < scan.points.size(); ++k) {
    if (scan.points[k].functional > scan.points[scan.argmax_index].functional) scan.argmax_index = k;
  }
  scan.argmax_parameter = scan.points[scan.argmax_index].parameter;

  // Non-increasing away from the identity on each half of the grid, with the
  // per-point budgets as slack.
  scan.monotone_within_budget = true;
  for (std::size_t k = 0; k + 1 < scan.points.size(); ++k) {
    const ScanPoint& p = scan.points[k];
    const ScanPoint& q = scan.points[k + 1];
    const double slack = p.budget + q.budget;
    if (q.parameter <= id_param) {  // approaching the identity: may increase
      if (p.functional > q.functional + slack) scan.monotone_within_budget = false;
    }
    if (p.parameter >= id_param) {  // leaving the identity: may only decrease
      if (q.functional > p.functional + slack) scan.monotone_within_budget = false;
    }
  }
  return scan;
}

InvarianceReport invariance_suite(const Domain& d, double hbar, double beta,
                                  const BoundaryCondition& bc, int level,
                                  const InvarianceOptions& opts) {
  InvarianceReport report;
  const int fine = effective_level(d, level);
  const int n = opts.eigen_count;
  const Mesh base = triangulate(d);
  const Mesh mesh = refine(base, fine);

  // (a) gauge convergence: the three potentials give the same continuum
  // spectrum; the P1 operators differ, so the spread must shrink with level.
  {
    CheckResult check{"gauge-convergence", 0.0, opts.gauge_tol, false, ""};
    std::vector<double> spreads;
    for (int lev = std::max(1, fine - 2); lev <= fine; ++lev) {
      const Mesh m = refine(base, lev);
      std::vector<double> firsts;
      for (const GaugeChoice g : {symmetric_gauge(beta), landau_x_gauge(beta), landau_y_gauge(beta)}) {
        firsts.push_back(spectrum_on_mesh(m, g, hbar, bc, 1, opts.solver)[0]);
      }
      const double lo = *std::min_element(firsts.begin(), firsts.end());
      const double hi = *std::max_element(firsts.begin(), firsts.end());
      spreads.push_back((hi - lo) / std::max(std::abs(lo), 1e-300));
    }
    check.deviation = spreads.back();
    bool decreasing = true;
    for (std::size_t k = 1; k < spreads.size(); ++k) {
      if (spreads[k] > spreads[k - 1] + 1e-14) decreasing = false;
    }
    check.pass = decreasing && check.deviation <= check.tolerance;
    check.note = "spread of lambda_1 across symmetric/landau-x/landau-y";
    report.checks.push_back(check);
  }

  const std::vector<double> reference =
      spectrum_on_mesh(mesh, symmetric_gauge(beta), hbar, bc, n, opts.solver);

  // (b) field sign: stiffness(-beta) is the conjugate of stiffness(beta).
  {
    CheckResult check{"field-sign", 0.0, opts.sign_tol, false,
                      "spectrum at -beta vs +beta (exact conjugation)"};
    const std::vector<double> flipped =
        spectrum_on_mesh(mesh, symmetric_gauge(-beta), hbar, bc, n, opts.solver);
    check.deviation = spectrum_deviation(reference, flipped);
    check.pass = check.deviation <= check.tolerance;
    report.checks.push_back(check);
  }

  // (c) rotation: mapped mesh with the symmetric gauge is exactly covariant.
  {
    CheckResult check{"rotation", 0.0, opts.exact_tol, false, ""};
    const double angle = d.symmetry_order >= 3 ? 2.0 * std::numbers::pi / d.symmetry_order
                                               : std::numbers::pi / 5.0;
    const Mesh rotated = map_mesh(mesh, rotation(angle));
    const std::vector<double> spec =
        spectrum_on_mesh(rotated, symmetric_gauge(beta), hbar, bc, n, opts.solver);
    check.deviation = spectrum_deviation(reference, spec);
    check.pass = check.deviation <= check.tolerance;
    check.note = "mesh rotated, symmetric gauge";
    report.checks.push_back(check);
  }

  // (d) reflection: with the Landau gauge beta(0, x1), reflecting across the
  // x2-axis flips the field sign; combined with (b) the spectrum returns.
  {
    CheckResult check{"reflection", 0.0, opts.exact_tol, false,
                      "mesh reflected, landau-y gauge, combined with field-sign"};
    Mat2 reflect = Mat2::Identity();
    reflect(0, 0) = -1.0;
    const Mesh mirrored = map_mesh(mesh, reflect);
    const std::vector<double> ref_landau =
        spectrum_on_mesh(mesh, landau_y_gauge(beta), hbar, bc, n, opts.solver);
    const std::vector<double> spec =
        spectrum_on_mesh(mirrored, landau_y_gauge(beta), hbar, bc, n, opts.solver);
    check.deviation = spectrum_deviation(ref_landau, spec);
    check.pass = check.deviation <= check.tolerance;
    report.checks.push_back(check);
  }

  // (e) translation: assembly works in centroid coordinates, so a rigid
  // shift must reproduce the operator up to round-off.
  {
    CheckResult check{"translation", 0.0, opts.exact_tol, false, "mesh shifted by (0.37, -0.58)"};
    const Mesh shifted = translate_mesh(mesh, Vec2(0.37, -0.58));
    const std::vector<double> spec =
        spectrum_on_mesh(shifted, symmetric_gauge(beta), hbar, bc, n, opts.solver);
    check.deviation = spectrum_deviation(reference, spec);
    check.pass = check.deviation <= check.tolerance;
    report.checks.push_back(check);
  }

  // (f) dilation: r = 2 scales every matrix entry by exactly 4.
  {
    CheckResult check{"dilation", 0.0, opts.exact_tol, false,
                      "r = 2: mesh doubled, hbar -> 2 hbar, beta -> beta/2"};
    const double r = 2.0;
    const Mesh scaled = map_mesh(mesh, r * Mat2::Identity());
    const BoundaryCondition bc_scaled = bc.kind == BoundaryCondition::Kind::Robin
                                            ? BoundaryCondition::robin(r * bc.sigma)
                                            : bc;
    const std::vector<double> spec =
        spectrum_on_mesh(scaled, symmetric_gauge(beta / r), r * hbar, bc_scaled, n, opts.solver);
    check.deviation = spectrum_deviation(reference, spec);
    check.pass = check.deviation <= check.tolerance;
    report.checks.push_back(check);
  }

  // (g) positivity of the first eigenvalue for all three conditions.
  {
    const double mu_tol = 1e-9;
    const double lambda1 =
        spectrum_on_mesh(mesh, symmetric_gauge(beta), hbar, BoundaryCondition::dirichlet(), 1,
                         opts.solver)[0];
    const double sigma = bc.kind == BoundaryCondition::Kind::Robin && bc.sigma > 0.0 ? bc.sigma : 1.0;
    const double rho1 = spectrum_on_mesh(mesh, symmetric_gauge(beta), hbar,
                                         BoundaryCondition::robin(sigma), 1, opts.solver)[0];
    const double mu1 = spectrum_on_mesh(mesh, symmetric_gauge(beta), hbar,
                                        BoundaryCondition::neumann(), 1, opts.solver)[0];

    CheckResult check{"positivity", 0.0, mu_tol, false, ""};
    const bool mu_ok = beta != 0.0 ? mu1 > mu_tol : std::abs(mu1) <= mu_tol;
    check.pass = lambda1 > 0.0 && rho1 > 0.0 && mu_ok;
    check.deviation = std::abs(mu1);
    check.note = beta != 0.0 ? "lambda_1, rho_1, mu_1 all positive (beta != 0)"
                             : "lambda_1, rho_1 positive; mu_1 = 0 expected (beta = 0)";
    report.checks.push_back(check);
  }

  report.all_pass =
      std::all_of(report.checks.begin(), report.checks.end(), [](const CheckResult& c) { return c.pass; });
  return report;
}

double bessel_j0_first_zero() {
  double lo = 2.0, hi = 3.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::cyl_bessel_j(0.0, lo) * std::cyl_bessel_j(0.0, mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

FaberKrahnReport faber_krahn_check(const std::vector<Domain>& domains, double hbar, double flux,
                                   int level, const SolveOptions& solver) {
  FaberKrahnReport report;
  report.j01 = bessel_j0_first_zero();
  const double rfk_bound = hbar * hbar * report.j01 * report.j01 * std::numbers::pi;

  const auto product_with_budget = [&](const Domain& dom, double& budget) {
    const double a = area(dom);
    const double beta = flux / a;
    const int fine = effective_level(dom, level);
    const Mesh base = triangulate(dom);
    double fine_product = 0.0, coarse_product = 0.0;
    for (const int lev : {fine - 1, fine}) {
      const Mesh mesh = refine(base, lev);
      const double l1 = spectrum_on_mesh(mesh, symmetric_gauge(beta), hbar,
                                         BoundaryCondition::dirichlet(), 1, solver)[0];
      if (lev == fine) fine_product = l1 * a;
      else coarse_product = l1 * a;
    }
    budget = std::abs(fine_product - coarse_product);
    return fine_product;
  };

  report.disk_minimal = true;
  for (const Domain& dom : domains) {
    FaberKrahnRow row;
    row.domain = dom.name;
    row.area = area(dom);
    row.product = product_with_budget(dom, row.budget);
    row.lambda1 = row.product / row.area;

    const Domain disk = ellipse_domain(std::sqrt(row.area / std::numbers::pi),
                                       std::sqrt(row.area / std::numbers::pi), "disk-equal-area");
    row.disk_product = product_with_budget(disk, row.disk_budget);

    if (row.disk_product > row.product + row.budget + row.disk_budget) report.disk_minimal = false;
    if (flux == 0.0 && row.product < rfk_bound - row.budget) report.zero_flux_bound_ok = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace magspec
