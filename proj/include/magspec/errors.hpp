#pragma once

#include <stdexcept>
#include <string>

namespace magspec {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class SingularMap : public Error {
 public:
  explicit SingularMap(const std::string& what = "SingularMap: matrix is not invertible")
      : Error(what) {}
};

class OrderTooLow : public Error {
 public:
  explicit OrderTooLow(const std::string& what = "OrderTooLow: rotation order must be >= 3")
      : Error(what) {}
};

class NotUnitVector : public Error {
 public:
  explicit NotUnitVector(const std::string& what = "NotUnitVector: |y| must equal 1")
      : Error(what) {}
};

class TraceNotZero : public Error {
 public:
  explicit TraceNotZero(const std::string& what = "TraceNotZero: matrix must be trace-free")
      : Error(what) {}
};

class DegenerateDomain : public Error {
 public:
  explicit DegenerateDomain(const std::string& what = "DegenerateDomain") : Error(what) {}
};

class NoEigenvalues : public Error {
 public:
  explicit NoEigenvalues(const std::string& what = "NoEigenvalues: empty eigenvalue list")
      : Error(what) {}
};

class InvalidPlanck : public Error {
 public:
  explicit InvalidPlanck(const std::string& what = "InvalidPlanck: hbar must be positive")
      : Error(what) {}
};

class MeshTooCoarse : public Error {
 public:
  explicit MeshTooCoarse(const std::string& what =
                             "MeshTooCoarse: no interior degrees of freedom remain")
      : Error(what) {}
};

class ZeroTrialFunction : public Error {
 public:
  explicit ZeroTrialFunction(const std::string& what = "ZeroTrialFunction") : Error(what) {}
};

class TooManyEigenvalues : public Error {
 public:
  explicit TooManyEigenvalues(const std::string& what =
                                  "TooManyEigenvalues: n exceeds active dof count")
      : Error(what) {}
};

class SolverDidNotConverge : public Error {
 public:
  explicit SolverDidNotConverge(const std::string& what = "SolverDidNotConverge")
      : Error(what) {}
};

class SymmetryRequired : public Error {
 public:
  explicit SymmetryRequired(const std::string& what =
                                "SymmetryRequired: domain needs rotational symmetry of order >= 3")
      : Error(what) {}
};

class InvalidDomainFile : public Error {
 public:
  explicit InvalidDomainFile(const std::string& what = "InvalidDomainFile") : Error(what) {}
};

}  // namespace magspec
