#ifndef TRACEMONO_MATCORE_HPP
#define TRACEMONO_MATCORE_HPP

#include <nlohmann/json_fwd.hpp>

#include "tracemono/common.hpp"

namespace tracemono {

bool all_finite(const Matrix& m);

// Largest singular value. For Hermitian input this is the largest |eigenvalue|.
double spectral_norm(const Matrix& m);

// (H + H^dagger)/2. Every eigendecomposition input passes through this.
Matrix symmetrize(const Matrix& h);

// Smallest eigenvalue of the symmetrized input.
double min_eigenvalue(const Matrix& h);

double hermiticity_defect(const Matrix& m);

// ---------------------------------------------------------------------------
// Validated value types. Construction checks the invariant and throws
// InvalidInput; the wrapped matrix is immutable afterwards.
// ---------------------------------------------------------------------------

class HermitianMatrix {
 public:
  explicit HermitianMatrix(Matrix m, double herm_tol = 1e-10);
  const Matrix& mat() const { return m_; }
  Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

class PsdMatrix : public HermitianMatrix {
 public:
  explicit PsdMatrix(Matrix m, double psd_tol = 1e-10);
};

class PdMatrix : public PsdMatrix {
 public:
  // pd_floor must be strictly positive; the minimum eigenvalue must reach it.
  PdMatrix(Matrix m, double pd_floor);
  double floor() const { return floor_; }

 private:
  double floor_;
};

struct SpectralDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // unitary, columns
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

SpectralDecomposition herm_eig(const HermitianMatrix& h);
SpectralDecomposition herm_eig(const Matrix& h);  // symmetrizes first

// U diag(lambda_i^p) U^dagger on a PSD matrix. Eigenvalues slightly negative
// within the PSD tolerance are clamped to zero before the power is taken.
// For p <= 0 every eigenvalue must reach the positive floor; pd_floor == 0
// selects the default 1e-10 * spectral norm. p == 0 on such input gives the
// identity, never a support projection.
Matrix mat_pow(const Matrix& a, double p, double pd_floor = 0.0);
Matrix mat_pow(const PsdMatrix& a, double p);
Matrix mat_pow(const PdMatrix& a, double p);

// Complex-exponent power of a positive definite matrix via spectral calculus,
// lambda -> exp(z log lambda).
Matrix mat_pow_complex(const Matrix& a, Complex z, double pd_floor = 0.0);

// Matrix logarithm of a positive definite matrix.
Matrix mat_log(const Matrix& a, double pd_floor = 0.0);

// Moore-Penrose inverse of a PSD matrix: eigenvalues below
// pinv_cut * spectral norm map to zero, others to their reciprocal.
Matrix pinv(const Matrix& a, double pinv_cut = 1e-12);
Matrix pinv(const PsdMatrix& a, double pinv_cut = 1e-12);

// Schatten p-(quasi)norm (tr[(X^dagger X)^{p/2}])^{1/p}, p > 0.
double schatten(const Matrix& x, double p);

struct LoewnerResult {
  bool geq;
  double min_eig;  // smallest eigenvalue of A - B, always reported
};

// A >= B in the Loewner order, up to tol * max(1, |A|, |B|).
LoewnerResult loewner_geq(const Matrix& a, const Matrix& b, double tol);

// ---------------------------------------------------------------------------
// JSON encoding shared by all modules:
//   {"rows": n, "cols": m, "data": [[re, im], ...]} row-major.
// ---------------------------------------------------------------------------

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace tracemono

#endif
