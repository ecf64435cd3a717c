#ifndef TRACEMONO_DUALITY_HPP
#define TRACEMONO_DUALITY_HPP

#include "tracemono/ensembles.hpp"
#include "tracemono/functionals.hpp"

namespace tracemono {

// Y = (tr[X^r])^{(1-r)/r} X^{r-1}: satisfies tr[Y^{r/(r-1)}] = 1 and
// tr[XY] = (tr[X^r])^{1/r}. Valid for r > 1 as the maximizer and for
// 0 < r < 1 or r < 0 as the minimizer of tr[XY] over that feasible set.
PsdMatrix holder_optimizer(const PdMatrix& x, double r);

struct VariationalReport {
  double target = 0.0;             // (tr[X^r])^{1/r}
  Matrix optimizer;
  double value_at_optimizer = 0.0; // tr[X * optimizer]
  double worst_violation = 0.0;    // most negative feasible-sample margin
  int samples = 0;
};

// Samples exactly feasible Y (PSD, tr[Y^{r/(r-1)}] = 1; PD for the min
// branch) and verifies they stay on the correct side of the target, with the
// closed-form optimizer attaining it.
VariationalReport verify_extremal(const PdMatrix& x, double r, Rng& rng, int trials);

// tr[XY] - (tr[X^r])^{1/r} (tr[Y^{r/(r-1)}])^{(r-1)/r}, expected >= 0 for
// 0 < r < 1 or r < 0.
double verify_reverse_holder(const PdMatrix& x, const PdMatrix& y, double r);

// (1/p) tr[B^dagger H B] - ((1-p)/p) tr[(A^{-p/2} H A^{-p/2})^{1/(1-p)}],
// the quantity whose maximum over PSD H equals epstein(A, B, p).
double dual2_value(const PdMatrix& a, const Matrix& b, double p, const PsdMatrix& h);

// Closed-form maximizer H* = A^{p/2} (A^{p/2} B B^dagger A^{p/2})^{(1-p)/p} A^{p/2}.
// Confirmed against a random-restart ascent oracle in the test suite before
// being relied on anywhere.
PsdMatrix dual2_optimizer(const PdMatrix& a, const Matrix& b, double p);

}  // namespace tracemono

#endif
