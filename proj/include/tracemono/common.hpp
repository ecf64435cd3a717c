#ifndef TRACEMONO_COMMON_HPP
#define TRACEMONO_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tracemono {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite entries, dimension mismatches, invariant violations.
struct InvalidInput : Error {
  using Error::Error;
};

// An inverse power was requested below the positive-definiteness floor.
struct SingularMatrix : Error {
  using Error::Error;
};

// Parameter outside the domain of a functional or check.
struct DomainError : Error {
  using Error::Error;
};

// A check was invoked on a map that does not satisfy its hypotheses
// (and the force flag was not set).
struct PreconditionError : Error {
  using Error::Error;
};

// Relative tolerances for the numeric substrate. All defaults target
// double precision at dimensions <= 8 and can be overridden suite-wide.
struct Tolerances {
  double herm_tol = 1e-10;
  double psd_tol = 1e-10;
  double eig_tol = 1e-10;
  double pd_floor_rel = 1e-10;
  double pinv_cut = 1e-12;
};

inline double comparison_scale(double lhs, double rhs) {
  return std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

}  // namespace tracemono

#endif
