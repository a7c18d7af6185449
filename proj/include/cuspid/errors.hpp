#pragma once

#include <stdexcept>
#include <string>

namespace cuspid {

// Base class for all failures raised by the library. Callers that need to
// distinguish recoverable numerical failures (projection stalls, inconclusive
// enclosures) from hard usage errors catch the specific subclasses.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// interval arithmetic
struct DivisionByZeroInterval : Error {
  DivisionByZeroInterval() : Error("interval division by an interval containing zero") {}
};
struct OverflowToInfinity : Error {
  OverflowToInfinity() : Error("interval endpoint overflowed to infinity") {}
};
struct NotVerifiablyInvertible : Error {
  explicit NotVerifiablyInvertible(double defect)
      : Error("matrix not verifiably invertible (residual bound " + std::to_string(defect) + " >= 1)") {}
};

// models
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error("model domain error: " + what) {}
};

// continuation / projection
struct RankDeficient : Error {
  explicit RankDeficient(const std::string& where) : Error("rank-deficient Jacobian in " + where) {}
};
struct NoConvergence : Error {
  explicit NoConvergence(const std::string& where) : Error("iteration did not converge in " + where) {}
};
struct FrontStall : Error {
  explicit FrontStall(const std::string& what) : Error("advancing front stalled: " + what) {}
};

// svd path
struct AlignmentAmbiguous : Error {
  AlignmentAmbiguous() : Error("SVD frame alignment ambiguous after maximal bisection") {}
};
struct MaxStepsExceeded : Error {
  MaxStepsExceeded() : Error("SVD path exceeded the maximum number of frames") {}
};

// proofs
struct SingularJacobian : Error {
  SingularJacobian() : Error("cusp map Jacobian is numerically singular") {}
};
struct CertificationFailed : Error {
  double Y, Z;
  std::string reason;
  CertificationFailed(double y, double z, std::string r)
      : Error("Newton-Kantorovich certification failed (" + r + "): Y=" + std::to_string(y) +
              " Z=" + std::to_string(z)),
        Y(y), Z(z), reason(std::move(r)) {}
};
struct DisksOverlap : Error {
  DisksOverlap() : Error("Gershgorin disks overlap; eigenvalue separation inconclusive") {}
};
struct SignUndetermined : Error {
  SignUndetermined() : Error("normal form coefficient enclosure contains zero") {}
};

// io / configuration
struct SchemaError : Error {
  explicit SchemaError(const std::string& what) : Error("schema violation: " + what) {}
};

}  // namespace cuspid
