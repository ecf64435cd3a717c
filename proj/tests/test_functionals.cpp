#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "tracemono/ensembles.hpp"
#include "tracemono/functionals.hpp"

using namespace tracemono;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("real_trace rejects imaginary residue") {
  Matrix m(2, 2);
  m << Complex(1, 3), 0, 0, 1;
  CHECK_THROWS_AS(real_trace(m), InvalidInput);
  CHECK(real_trace(diag2(2, 3)) == doctest::Approx(5.0));
}

TEST_CASE("lieb concave form on diagonal data") {
  // tr[A^{1/2} B^{1/2}] with A = diag(1,4), B = diag(9,1), K = 1.
  double v = lieb_concave_form(Matrix::Identity(2, 2), PsdMatrix(diag2(1, 4)),
                               PsdMatrix(diag2(9, 1)), 0.5, 0.5);
  CHECK(v == doctest::Approx(5.0).epsilon(1e-13));
  CHECK_THROWS_AS(lieb_concave_form(Matrix::Identity(2, 2), PsdMatrix(diag2(1, 1)),
                                    PsdMatrix(diag2(1, 1)), 0.7, 0.7),
                  DomainError);
}

TEST_CASE("lieb convex form on diagonal data") {
  // tr[K^dagger Y^{-s} K X^{-t}] with everything diagonal.
  double v = lieb_convex_form(diag2(1, 1), PdMatrix(diag2(4, 4), 1e-8),
                              PdMatrix(diag2(9, 9), 1e-8), 0.5, 0.5);
  CHECK(v == doctest::Approx(2.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("epstein functional on diagonal data") {
  // tr[(B^dagger A^{1/2} B)^2] with A = diag(1,4), B = diag(1,2): 1 + 64.
  CHECK(epstein(PsdMatrix(diag2(1, 4)), diag2(1, 2), 0.5) ==
        doctest::Approx(65.0).epsilon(1e-13));
  // General form with r = 1 coincides with the p-slice at s = p.
  Rng rng(7);
  Matrix a = gen_psd(3, rng);
  Matrix b = gen_gaussian(3, 3, rng);
  CHECK(epstein(PsdMatrix(a), b, 0.37) ==
        doctest::Approx(epstein_general(PsdMatrix(a), b, 0.37, 1.0)).epsilon(1e-11));
  CHECK_THROWS_AS(epstein(PsdMatrix(diag2(1, 1)), diag2(1, 1), 1.5), DomainError);
}

TEST_CASE("umegaki relative entropy") {
  PdMatrix rho(diag2(0.5, 0.5), 1e-8);
  CHECK(umegaki(rho, rho) == doctest::Approx(0.0));
  PdMatrix sigma(diag2(0.25, 0.75), 1e-8);
  double d = umegaki(rho, sigma);
  double expect = 0.5 * std::log(0.5 / 0.25) + 0.5 * std::log(0.5 / 0.75);
  CHECK(d == doctest::Approx(expect).epsilon(1e-12));
  CHECK(d > 0.0);
  CHECK_THROWS_AS(umegaki(PdMatrix(diag2(1, 1), 1e-8), rho), InvalidInput);
}

TEST_CASE("renyi quotient approaches the relative entropy") {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    PdMatrix x = gen_density(3, rng), y = gen_density(3, rng);
    double d = umegaki(x, y);
    double q = renyi_limit_quotient(x, y, 1.0 - 1e-5);
    CHECK(std::abs(q - d) <= 1e-3 * (1.0 + d));
  }
}

TEST_CASE("sandwiched trace on commuting data") {
  // alpha = 2 with diagonal inputs: sum rho_i^2 / sigma_i.
  PsdMatrix rho(diag2(0.25, 0.75));
  PdMatrix sigma(diag2(0.5, 0.5), 1e-8);
  double v = sandwiched_trace(rho, sigma, 2.0);
  CHECK(v == doctest::Approx(0.25 * 0.25 / 0.5 + 0.75 * 0.75 / 0.5).epsilon(1e-12));
  CHECK_THROWS_AS(sandwiched_trace(rho, sigma, 1.0), DomainError);
}

TEST_CASE("negative power form on diagonal data") {
  // tr[(B^dagger A^{-s} B)^q], A = diag(1,4), B = diag(1,2), s = 1/2, q = 1/2.
  double v = neg_power_form(PdMatrix(diag2(1, 4), 1e-8), diag2(1, 2), 0.5, 0.5);
  CHECK(v == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("ando form domain") {
  CHECK_THROWS_AS(ando_form(PdMatrix(diag2(1, 1), 1e-8), diag2(1, 1), 0.5, 1.0),
                  DomainError);
  CHECK(ando_form(PdMatrix(diag2(1, 4), 1e-8), Matrix::Identity(2, 2), 2.0, 2.0) ==
        doctest::Approx(1.0 + 16.0).epsilon(1e-12));
}

TEST_CASE("functional registry lists argument names") {
  const auto& reg = functional_registry();
  CHECK(reg.size() == 6);
  bool found = false;
  for (const auto& f : reg)
    if (f.id == "epstein") {
      found = true;
      CHECK(f.matrix_args.size() == 2);
      CHECK(f.param_args.size() == 1);
    }
  CHECK(found);
}
