#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "magspec/assembly.hpp"

namespace magspec {

struct SolveOptions {
  enum class Method { Auto, Dense, Iterative };
  Method method = Method::Auto;

  /// Residual target, relative to max(1, largest requested eigenvalue).
  double tol = 1e-9;
  int max_iterations = 500;

  /// Auto picks the dense reduction at or below this many dofs and the
  /// shift-inverted block iteration above it. Dense full diagonalization
  /// runs in seconds up to roughly this size on one core.
  Eigen::Index dense_threshold = 1200;
};

/// Lowest eigenvalues of the pencil (stiffness, mass), ascending, with
/// M-orthonormal eigenvectors and per-pair residuals ||A x - lambda M x|| /
/// ||x||_M. `config` carries the full provenance of the assembled operator.
struct SpectrumResult {
  std::vector<double> eigenvalues;
  std::vector<double> residual_norms;
  Eigen::MatrixXcd eigenvectors;
  OperatorConfig config;
  int n = 0;
  std::string method;
};

SpectrumResult lowest_eigenvalues(const MagneticOperator& op, int n, const SolveOptions& opts = {});

/// Sum of the first n eigenvalues of a computed spectrum.
double eigenvalue_sum(const SpectrumResult& res, int n);

}  // namespace magspec
