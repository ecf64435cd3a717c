#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "tracemono/duality.hpp"

using namespace tracemono;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// Projected random-ascent oracle for the variational form: hill-climbs
// dual2_value over PSD H from several random starts. Used to confirm the
// closed-form optimizer independently.
double ascent_oracle(const PdMatrix& a, const Matrix& b, double p, Rng& rng,
                     int restarts, int steps) {
  Index n = a.dim();
  Matrix a_neg = mat_pow(a, -0.5 * p);
  // The value of c*H maximizes in closed form over c > 0, so every candidate
  // direction is evaluated at its optimal scale.
  auto scaled_value = [&](Matrix& h) {
    double f1 = real_trace(b.adjoint() * h * b);
    Matrix inner = symmetrize(a_neg * h * a_neg);
    double s = real_trace(mat_pow(inner, 1.0 / (1.0 - p)));
    if (f1 <= 0.0 || s <= 0.0) return 0.0;
    double c = std::pow(f1 / s, (1.0 - p) / p);
    h *= c;
    return dual2_value(a, b, p, PsdMatrix(symmetrize(h), 1e-8));
  };
  double best = -1e300;
  for (int s = 0; s < restarts; ++s) {
    Matrix g = gen_gaussian(n, n, rng);
    Matrix h = symmetrize(g * g.adjoint());
    double cur = scaled_value(h);
    double step = 0.5;
    for (int it = 0; it < steps; ++it) {
      Matrix dg = gen_gaussian(n, n, rng);
      Matrix cand = symmetrize(h + step * spectral_norm(h) * symmetrize(dg + dg.adjoint()));
      // Project back to PSD.
      SpectralDecomposition sd = herm_eig(cand);
      RealVector ev = sd.eigenvalues.cwiseMax(0.0);
      cand = sd.eigenvectors * ev.asDiagonal().toDenseMatrix().cast<Complex>() *
             sd.eigenvectors.adjoint();
      double v = scaled_value(cand);
      if (v > cur) {
        cur = v;
        h = cand;
        step = std::min(step * 1.2, 2.0);
      } else {
        step *= 0.9;
      }
    }
    best = std::max(best, cur);
  }
  return best;
}

}  // namespace

TEST_CASE("holder optimizer attains the target, r = -1 diagonal case") {
  PdMatrix x(diag2(1, 4), 1e-8);
  double r = -1.0;
  Matrix y = holder_optimizer(x, r).mat();
  double target = std::pow(real_trace(mat_pow(x, r)), 1.0 / r);
  CHECK(target == doctest::Approx(0.8).epsilon(1e-13));
  // Feasibility: tr[Y^{r/(r-1)}] = 1; attainment: tr[XY] = target.
  double conj = r / (r - 1.0);
  CHECK(real_trace(mat_pow(y, conj)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(real_trace(x.mat() * y) == doctest::Approx(target).epsilon(1e-12));
}

TEST_CASE("extremal characterization over feasible samples") {
  Rng rng(21);
  for (double r : {2.0, 3.0, 0.5, -1.0}) {
    for (int t = 0; t < 10; ++t) {
      PdMatrix x = gen_pd(3, rng, 1e-6);
      VariationalReport rep = verify_extremal(x, r, rng, 50);
      CHECK(rep.worst_violation >= -1e-10);
      CHECK(std::abs(rep.value_at_optimizer - rep.target) <=
            1e-10 * std::max(1.0, rep.target));
    }
  }
  CHECK_THROWS_AS(holder_optimizer(PdMatrix(diag2(1, 1), 1e-8), 1.0), DomainError);
}

TEST_CASE("reverse holder inequality") {
  Rng rng(23);
  for (double r : {0.3, 0.7, -0.5, -2.0}) {
    for (int t = 0; t < 20; ++t) {
      PdMatrix x = gen_pd(3, rng, 1e-6), y = gen_pd(3, rng, 1e-6);
      CHECK(verify_reverse_holder(x, y, r) >= -1e-10);
    }
  }
}

TEST_CASE("dual2 closed-form optimizer attains the variational value") {
  Rng rng(29);
  for (Index d : {2, 3}) {
    for (int t = 0; t < 20; ++t) {
      PdMatrix a = gen_pd(d, rng, 1e-4);
      Matrix b = gen_invertible(d, rng);
      double p = 0.15 + 0.7 * rng.uniform();
      double target = epstein(PsdMatrix(a.mat()), b, p);
      PsdMatrix h = dual2_optimizer(a, b, p);
      double attained = dual2_value(a, b, p, h);
      CHECK(std::abs(attained - target) <= 1e-9 * std::max(1.0, target));
      // Every feasible H stays below the target.
      for (int i = 0; i < 25; ++i) {
        Matrix hr = gen_psd(d, rng);
        CHECK(dual2_value(a, b, p, PsdMatrix(hr, 1e-8)) <=
              target + 1e-9 * std::max(1.0, target));
      }
    }
  }
}

TEST_CASE("random-restart ascent confirms the closed-form optimizer") {
  Rng rng(31);
  for (Index d : {2, 3}) {
    PdMatrix a = gen_pd(d, rng, 1e-3);
    Matrix b = gen_invertible(d, rng);
    double p = 0.5;
    double target = epstein(PsdMatrix(a.mat()), b, p);
    double best = ascent_oracle(a, b, p, rng, 6, 400);
    // The hill-climb must approach but never exceed the closed-form value.
    CHECK(best <= target + 1e-8 * std::max(1.0, target));
    CHECK(best >= target - 5e-2 * std::max(1.0, target));
  }
}

TEST_CASE("dual2 domain errors") {
  PdMatrix a(diag2(1, 2), 1e-8);
  CHECK_THROWS_AS(dual2_optimizer(a, diag2(1, 1), 1.0), DomainError);
  CHECK_THROWS_AS(dual2_value(a, diag2(1, 1), 0.0, PsdMatrix(diag2(1, 1))), DomainError);
}
