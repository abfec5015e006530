#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "magspec/assembly.hpp"
#include "magspec/domain_io.hpp"
#include "magspec/mesh.hpp"

using namespace magspec;

namespace {

Mesh single_triangle(const Vec2& a, const Vec2& b, const Vec2& c) {
  Mesh m;
  m.vertices = {a, b, c};
  m.triangles = {{0, 1, 2}};
  m.boundary_edges = {{0, 1, 0}, {1, 2, 1}, {2, 0, 2}};
  m.domain_name = "single-triangle";
  return m;
}

// Independent element-integral oracle: P1 basis coefficients from a 3x3
// linear solve, integration by a collapsed-square Gauss rule (8x8 points,
// far beyond the polynomial degrees that occur).
struct OracleElement {
  std::array<Vec2, 3> p;
  std::array<Vec2, 3> grad;
  std::array<double, 3> offset;

  explicit OracleElement(const std::array<Vec2, 3>& pts) : p(pts) {
    Eigen::Matrix3d vander;
    for (int i = 0; i < 3; ++i) vander.row(i) << 1.0, p[i].x(), p[i].y();
    for (int i = 0; i < 3; ++i) {
      Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
      rhs(i) = 1.0;
      const Eigen::Vector3d coeff = vander.fullPivLu().solve(rhs);
      offset[i] = coeff(0);
      grad[i] = Vec2(coeff(1), coeff(2));
    }
  }

  double basis(int i, const Vec2& x) const { return offset[i] + grad[i].dot(x); }

  template <typename F>
  double integrate(F&& f) const {
    static const std::array<double, 4> nodes{0.1834346424956498, 0.5255324099163290,
                                             0.7966664774136267, 0.9602898564975363};
    static const std::array<double, 4> weights{0.3626837833783620, 0.3137066458778873,
                                               0.2223810344533745, 0.1012285362903763};
    const double twice_area =
        (p[1] - p[0]).x() * (p[2] - p[0]).y() - (p[1] - p[0]).y() * (p[2] - p[0]).x();
    double acc = 0.0;
    for (int iu = 0; iu < 8; ++iu) {
      const double u = 0.5 * (iu < 4 ? 1.0 - nodes[iu % 4] : 1.0 + nodes[iu % 4]);
      const double wu = 0.5 * weights[iu % 4];
      for (int iv = 0; iv < 8; ++iv) {
        const double v = 0.5 * (iv < 4 ? 1.0 - nodes[iv % 4] : 1.0 + nodes[iv % 4]);
        const double wv = 0.5 * weights[iv % 4];
        const Vec2 x = (1.0 - u) * p[0] + u * (1.0 - v) * p[1] + u * v * p[2];
        acc += wu * wv * f(x) * twice_area * u;  // Jacobian of the collapsed map
      }
    }
    return acc;
  }
};

Eigen::Matrix3cd oracle_stiffness(const std::array<Vec2, 3>& pts, const Mat2& potential,
                                  double hbar) {
  const OracleElement el(pts);
  const double area = el.integrate([](const Vec2&) { return 1.0; });
  Eigen::Matrix3cd k;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double kinetic = hbar * hbar * el.grad[i].dot(el.grad[j]) * area;
      const double field = el.integrate([&](const Vec2& x) {
        return (potential * x).squaredNorm() * el.basis(i, x) * el.basis(j, x);
      });
      const double cross = el.integrate([&](const Vec2& x) {
        const Vec2 f = potential * x;
        return el.basis(i, x) * f.dot(el.grad[j]) - el.basis(j, x) * f.dot(el.grad[i]);
      });
      k(i, j) = Complex(kinetic + field, hbar * cross);
    }
  }
  return k;
}

std::mt19937 rng(424243u);

Eigen::VectorXcd random_vector(Eigen::Index n) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(uni(rng), uni(rng));
  return v;
}

double max_abs(const SparseHermitian& m) {
  double best = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseHermitian::InnerIterator it(m, k); it; ++it) best = std::max(best, std::abs(it.value()));
  }
  return best;
}

}  // namespace

TEST_CASE("zero field reduces to the real Laplacian") {
  const Mesh mesh = refine(triangulate(builtin_domain("square")), 2);
  const MagneticOperator op = assemble(mesh, symmetric_gauge(0.0), 1.0,
                                       BoundaryCondition::dirichlet());
  double max_imag = 0.0;
  for (int k = 0; k < op.stiffness.outerSize(); ++k) {
    for (SparseHermitian::InnerIterator it(op.stiffness, k); it; ++it) {
      max_imag = std::max(max_imag, std::abs(it.value().imag()));
    }
  }
  CHECK(max_imag <= 1e-15);
}

TEST_CASE("reference triangle Neumann stiffness matches the classical element matrix") {
  const Mesh mesh = single_triangle({0, 0}, {1, 0}, {0, 1});
  const MagneticOperator op = assemble(mesh, symmetric_gauge(0.0), 1.0,
                                       BoundaryCondition::neumann());
  Eigen::Matrix3d expected;
  expected << 2, -1, -1, -1, 1, 0, -1, 0, 1;
  expected *= 0.5;
  const Eigen::MatrixXcd dense(op.stiffness);
  CHECK((dense.real() - expected).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(dense.imag().cwiseAbs().maxCoeff() <= 1e-16);
}

TEST_CASE("element integrals match an independent quadrature oracle") {
  std::uniform_real_distribution<double> uni(-1.5, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    std::array<Vec2, 3> pts;
    do {
      for (auto& p : pts) p = Vec2(uni(rng), uni(rng));
    } while ((pts[1] - pts[0]).x() * (pts[2] - pts[0]).y() -
                 (pts[1] - pts[0]).y() * (pts[2] - pts[0]).x() <
             0.15);

    const Mesh mesh = single_triangle(pts[0], pts[1], pts[2]);
    const double hbar = 0.5 + 0.5 * (trial % 3);
    const GaugeChoice gauge = trial % 2 == 0 ? symmetric_gauge(1.7) : landau_y_gauge(-2.3);
    const MagneticOperator op = assemble(mesh, gauge, hbar, BoundaryCondition::neumann());

    // Assembly evaluates the potential in centroid coordinates.
    const Vec2 shift = mesh_centroid(mesh);
    std::array<Vec2, 3> centered;
    for (int i = 0; i < 3; ++i) centered[i] = pts[i] - shift;
    const Eigen::Matrix3cd expected = oracle_stiffness(centered, gauge.coefficient(), hbar);

    const Eigen::MatrixXcd actual(op.stiffness);
    CHECK((actual - expected).cwiseAbs().maxCoeff() <=
          1e-13 * (1.0 + expected.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("mass matrix is the exact P1 mass matrix and positive definite") {
  const Mesh mesh = single_triangle({0, 0}, {1, 0}, {0, 1});
  const MagneticOperator op = assemble(mesh, symmetric_gauge(1.0), 1.0,
                                       BoundaryCondition::neumann());
  Eigen::Matrix3d expected;
  expected << 2, 1, 1, 1, 2, 1, 1, 1, 2;
  expected *= 0.5 / 12.0;
  CHECK((Eigen::MatrixXd(op.mass) - expected).cwiseAbs().maxCoeff() <= 1e-16);

  const Mesh fine = refine(triangulate(builtin_domain("hexagon")), 2);
  const MagneticOperator big = assemble(fine, symmetric_gauge(1.0), 1.0,
                                        BoundaryCondition::dirichlet());
  const Eigen::MatrixXd mass(big.mass);
  CHECK((mass - mass.transpose()).cwiseAbs().maxCoeff() == 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mass);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("assembled stiffness is Hermitian and positive semidefinite") {
  for (const char* name : {"triangle", "square"}) {
    const Mesh mesh = refine(triangulate(builtin_domain(name)), 2);
    for (const auto& bc : {BoundaryCondition::dirichlet(), BoundaryCondition::neumann(),
                           BoundaryCondition::robin(0.7)}) {
      const MagneticOperator op = assemble(mesh, symmetric_gauge(2.5), 0.8, bc);
      const Eigen::MatrixXcd dense(op.stiffness);
      CHECK((dense - dense.adjoint()).cwiseAbs().maxCoeff() <= 1e-13 * max_abs(op.stiffness));
      for (int trial = 0; trial < 10; ++trial) {
        const Eigen::VectorXcd x = random_vector(op.dofs());
        const double quad = (x.adjoint() * (op.stiffness * x)).value().real();
        CHECK(quad >= -1e-12 * x.squaredNorm());
      }
    }
  }
}

TEST_CASE("Robin(0) equals Neumann bit for bit") {
  const Mesh mesh = refine(triangulate(builtin_domain("triangle")), 2);
  const MagneticOperator neumann = assemble(mesh, symmetric_gauge(1.3), 1.0,
                                            BoundaryCondition::neumann());
  const MagneticOperator robin0 = assemble(mesh, symmetric_gauge(1.3), 1.0,
                                           BoundaryCondition::robin(0.0));
  const Eigen::MatrixXcd a(neumann.stiffness), b(robin0.stiffness);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  CHECK((Eigen::MatrixXd(neumann.mass) - Eigen::MatrixXd(robin0.mass)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Robin adds the exact edge mass sigma len/6 [[2,1],[1,2]]") {
  const Mesh mesh = single_triangle({0, 0}, {1, 0}, {0, 1});
  const double sigma = 0.9;
  const MagneticOperator neumann = assemble(mesh, symmetric_gauge(0.0), 1.0,
                                            BoundaryCondition::neumann());
  const MagneticOperator robin = assemble(mesh, symmetric_gauge(0.0), 1.0,
                                          BoundaryCondition::robin(sigma));
  Eigen::Matrix3d boundary = Eigen::Matrix3d::Zero();
  const std::array<std::pair<int, int>, 3> edges{{{0, 1}, {1, 2}, {2, 0}}};
  const std::array<double, 3> lengths{1.0, std::numbers::sqrt2, 1.0};
  for (int e = 0; e < 3; ++e) {
    const auto [a, b] = edges[e];
    const double w = sigma * lengths[e] / 6.0;
    boundary(a, a) += 2.0 * w;
    boundary(b, b) += 2.0 * w;
    boundary(a, b) += w;
    boundary(b, a) += w;
  }
  const Eigen::MatrixXcd diff = Eigen::MatrixXcd(robin.stiffness) -
                                Eigen::MatrixXcd(neumann.stiffness);
  CHECK((diff.real() - boundary).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("flipping the field conjugates the stiffness matrix exactly") {
  const Mesh mesh = refine(triangulate(builtin_domain("hexagon")), 1);
  for (const GaugeChoice g : {symmetric_gauge(1.9), landau_x_gauge(1.9), landau_y_gauge(1.9)}) {
    GaugeChoice flipped = g;
    flipped.beta = -g.beta;
    const MagneticOperator plus = assemble(mesh, g, 1.0, BoundaryCondition::dirichlet());
    const MagneticOperator minus = assemble(mesh, flipped, 1.0, BoundaryCondition::dirichlet());
    const Eigen::MatrixXcd a(plus.stiffness), b(minus.stiffness);
    CHECK((a.conjugate() - b).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("gauge coefficient matrices all produce curl beta") {
  for (double beta : {0.0, 1.0, -2.5}) {
    for (const GaugeChoice g :
         {symmetric_gauge(beta), landau_x_gauge(beta), landau_y_gauge(beta)}) {
      const Mat2 c = g.coefficient();
      CHECK(c(1, 0) - c(0, 1) == doctest::Approx(beta).epsilon(1e-15));
    }
  }
}

TEST_CASE("expanded assembly reproduces the direct path") {
  for (const char* name : {"triangle", "square"}) {
    const Mesh mesh = refine(triangulate(builtin_domain(name)), 2);
    for (const auto& bc : {BoundaryCondition::dirichlet(), BoundaryCondition::robin(1.0)}) {
      const MagneticOperator direct = assemble(mesh, symmetric_gauge(1.0), 1.0, bc);
      const MagneticOperator split = assemble_expanded(mesh, 1.0, 1.0, bc);
      const Eigen::MatrixXcd a(direct.stiffness), b(split.stiffness);
      CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12 * max_abs(direct.stiffness));
    }
  }
}

TEST_CASE("expanded pieces: zero field kills cross and field terms; field term is PSD") {
  const Mesh mesh = refine(triangulate(builtin_domain("square")), 1);
  const ExpandedForm zero = assemble_expanded_parts(mesh, 0.0, 1.0, BoundaryCondition::dirichlet());
  CHECK(max_abs(zero.cross) == 0.0);
  CHECK(max_abs(zero.field) == 0.0);

  const ExpandedForm parts = assemble_expanded_parts(mesh, 2.0, 1.0, BoundaryCondition::dirichlet());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(parts.field)};
  CHECK(es.eigenvalues().minCoeff() >= -1e-14);
}

TEST_CASE("Dirichlet eliminates exactly the boundary vertices") {
  const Mesh mesh = refine(triangulate(builtin_domain("square")), 2);
  const MagneticOperator op = assemble(mesh, symmetric_gauge(0.0), 1.0,
                                       BoundaryCondition::dirichlet());
  CHECK(static_cast<std::size_t>(op.dofs()) ==
        mesh.vertex_count() - boundary_vertices(mesh).size());

  // A mesh with no interior vertex cannot carry Dirichlet data.
  const Mesh lshape = triangulate(
      polygon_domain({{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}}, 1, "l-shape"));
  CHECK_THROWS_AS(assemble(lshape, symmetric_gauge(0.0), 1.0, BoundaryCondition::dirichlet()),
                  MeshTooCoarse);
}

TEST_CASE("parameter validation") {
  const Mesh mesh = triangulate(builtin_domain("square"));
  CHECK_THROWS_AS(assemble(mesh, symmetric_gauge(1.0), 0.0, BoundaryCondition::dirichlet()),
                  InvalidPlanck);
  CHECK_THROWS_AS(assemble(mesh, symmetric_gauge(1.0), -1.0, BoundaryCondition::dirichlet()),
                  InvalidPlanck);
  CHECK_THROWS_AS(BoundaryCondition::robin(-0.5), Error);
}

TEST_CASE("rayleigh quotient of the constant vector under Neumann") {
  const Mesh mesh = refine(triangulate(builtin_domain("triangle")), 2);

  const MagneticOperator free_op = assemble(mesh, symmetric_gauge(0.0), 1.0,
                                            BoundaryCondition::neumann());
  const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(free_op.dofs());
  CHECK(std::abs(rayleigh_quotient(free_op, ones)) <= 1e-13);

  const MagneticOperator mag_op = assemble(mesh, symmetric_gauge(1.5), 1.0,
                                           BoundaryCondition::neumann());
  CHECK(rayleigh_quotient(mag_op, ones) > 1e-3);

  CHECK_THROWS_AS(rayleigh_quotient(free_op, Eigen::VectorXcd::Zero(free_op.dofs())),
                  ZeroTrialFunction);
}
