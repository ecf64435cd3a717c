#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <nlohmann/json.hpp>

#include "tracemono/posclass.hpp"

using namespace tracemono;

TEST_CASE("check_cp certifies CP families and falsifies the transpose") {
  CHECK(check_cp(depolarizing_map(3, 0.3), 1e-9).verdict == Verdict::Certified);
  Rng rng(3);
  CHECK(check_cp(gen_channel(2, 4, 3, rng), 1e-9).verdict == Verdict::Certified);

  ClassVerdict v = check_cp(transpose_map(2), 1e-9);
  CHECK(v.verdict == Verdict::Falsified);
  CHECK(v.min_eig == doctest::Approx(-1.0).epsilon(1e-10));
  REQUIRE(v.witness.has_value());
  // The witness is a Choi eigenvector with negative eigenvalue.
  Matrix choi = transpose_map(2).choi();
  Matrix w = *v.witness;
  Complex q = (w.adjoint() * choi * w)(0, 0);
  CHECK(q.real() < -0.9);
}

TEST_CASE("2-positivity falsifies the transpose via the entangled probe") {
  Rng rng(5);
  ClassVerdict v = check_k_positive(transpose_map(3), 2, rng, 50, 1e-9);
  CHECK(v.verdict == Verdict::Falsified);
  CHECK(v.trials_used == 1);  // first probe is maximally entangled
  Rng rng2(7);
  CHECK(check_k_positive(depolarizing_map(2, 0.6), 2, rng2, 50, 1e-9).verdict ==
        Verdict::Certified);
}

TEST_CASE("schwarz defect and block") {
  SuperMap phi = depolarizing_map(2, 0.7);
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    Matrix k = gen_gaussian(2, 2, rng);
    CHECK(min_eigenvalue(schwarz_defect(phi, k)) > -1e-10);
    CHECK(min_eigenvalue(gen_schwarz_block(phi, k)) > -1e-10);
  }
}

TEST_CASE("check_schwarz falsifies the transpose with an exact witness") {
  Rng rng(13);
  ClassVerdict v = check_schwarz(transpose_map(2), rng, 64, 1e-9);
  REQUIRE(v.verdict == Verdict::Falsified);
  CHECK(std::abs(v.min_eig + 1.0) < 1e-12);
  REQUIRE(v.witness.has_value());
  // Recomputing the defect at the stored witness reproduces min_eig.
  double lo = min_eigenvalue(schwarz_defect(transpose_map(2), *v.witness));
  CHECK(lo == doctest::Approx(v.min_eig).epsilon(1e-12));
}

TEST_CASE("check_schwarz certifies via the CP certificate") {
  Rng rng(17);
  SuperMap phi = gen_channel(3, 2, 3, rng, ChannelFlavor::UnitalAdjoint);
  Rng rng2(19);
  CHECK(check_schwarz(phi, rng2, 32, 1e-9).verdict == Verdict::Certified);
}

TEST_CASE("verdict serialization") {
  ClassVerdict v = check_cp(transpose_map(2), 1e-9);
  nlohmann::json j = v.to_json();
  CHECK(j["verdict"] == "Falsified");
  CHECK(j.contains("witness"));
  CHECK(to_string(Verdict::Unknown) == "Unknown");
}
