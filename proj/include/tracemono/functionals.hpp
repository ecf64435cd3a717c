#ifndef TRACEMONO_FUNCTIONALS_HPP
#define TRACEMONO_FUNCTIONALS_HPP

#include <string>
#include <vector>

#include "tracemono/matcore.hpp"

namespace tracemono {

// Every functional returns a real number; an imaginary residue above
// 1e-10 * scale indicates a Hermiticity bug upstream and raises InvalidInput
// instead of being discarded.
double real_trace(const Matrix& m, double tol = 1e-10);

// Re tr[K^dagger A^s K B^t], s,t >= 0, s+t <= 1.
double lieb_concave_form(const Matrix& k, const PsdMatrix& a, const PsdMatrix& b,
                         double s, double t);

// Re tr[K^dagger Y^{-s} K X^{-t}], X, Y positive definite.
double lieb_convex_form(const Matrix& k, const PdMatrix& x, const PdMatrix& y,
                        double s, double t);

// tr[X (log X - log Y)], natural log, unit-trace PD inputs.
double umegaki(const PdMatrix& x, const PdMatrix& y);

// (1 - tr[Y^{1-t} X^t]) / (1 - t) for 0 < t < 1; tends to umegaki as t -> 1.
double renyi_limit_quotient(const PdMatrix& x, const PdMatrix& y, double t);

// tr[(B^dagger A^p B)^{1/p}], 0 < p <= 1.
double epstein(const PsdMatrix& a, const Matrix& b, double p);

// tr[(B^dagger A^s B)^{r/s}], 0 < s <= 1, 0 < r <= 1.
double epstein_general(const PsdMatrix& a, const Matrix& b, double s, double r);

// tr[(B^dagger A^{-s} B)^q], 0 <= s < 1, 0 < q < 1.
double neg_power_form(const PdMatrix& a, const Matrix& b, double s, double q);

// tr[(sigma^{(1-alpha)/2alpha} rho sigma^{(1-alpha)/2alpha})^alpha], alpha > 1.
double sandwiched_trace(const PsdMatrix& rho, const PdMatrix& sigma, double alpha);

// tr[(B^dagger A^p B)^{r/p}], 1 < p <= 2, r >= 1.
double ando_form(const PdMatrix& a, const Matrix& b, double p, double r);

// Registry used by the midpoint checks; every implemented inequality
// references only these ids.
struct FunctionalId {
  std::string id;
  std::vector<std::string> matrix_args;
  std::vector<std::string> param_args;
};

const std::vector<FunctionalId>& functional_registry();

}  // namespace tracemono

#endif
