#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <nlohmann/json.hpp>

#include "tracemono/inequalities.hpp"

using namespace tracemono;

TEST_CASE("identity map gives equality in the concave monotone check") {
  SuperMap id3 = identity_map(3);
  Rng rng(3);
  Matrix k = gen_gaussian(3, 3, rng);
  Matrix a = gen_psd(3, rng), b = gen_psd(3, rng);
  CheckOutcome out = check_lieb_monotone(LiebKind::Concave, id3, k, a, b, 0.4, 0.6, 1e-8);
  CHECK(out.check_id == "L1M");
  CHECK(out.holds);
  CHECK(std::abs(out.margin) < 1e-12);
}

TEST_CASE("unitary conjugation gives equality in the Epstein checks") {
  Rng rng(5);
  SuperMap phi = unitary_conj_map(gen_unitary(3, rng));
  Matrix a = gen_psd(3, rng), b = gen_gaussian(3, 3, rng);
  CheckOutcome out = check_epstein_monotone(phi, a, b, 0.5, 0.8, 1e-8);
  CHECK(out.check_id == "Ep2");
  CHECK(out.holds);
  CHECK(std::abs(out.margin) < 1e-10);
}

TEST_CASE("cross-dimension sesquiunital map satisfies the interior checks") {
  SuperMap mix = completely_mixing_map(2, 3);
  Rng rng(7);
  Matrix k = gen_gaussian(2, 2, rng);
  Matrix a = gen_psd(3, rng), b = gen_psd(3, rng);
  CheckOutcome out = check_lieb_monotone(LiebKind::Concave, mix, k, a, b, 0.2, 0.3, 1e-8);
  CHECK(out.check_id == "L1MB");
  CHECK(out.holds);

  Matrix a2 = gen_pd(3, rng, 1e-6).mat();
  Matrix b2 = gen_invertible(3, rng);
  CheckOutcome out2 = check_epstein_convex_monotone(mix, a2, b2, 0.4, 0.75, 1e-8);
  CHECK(out2.check_id == "Ep3");
  CHECK(out2.holds);
}

TEST_CASE("preconditions are enforced unless forced") {
  Rng rng(11);
  SuperMap tp = transpose_map(2);  // positive, not Schwarz
  Matrix k = gen_gaussian(2, 2, rng);
  Matrix a = gen_psd(2, rng), b = gen_psd(2, rng);
  CHECK_THROWS_AS(
      check_lieb_monotone(LiebKind::Concave, tp, k, a, b, 0.5, 0.5, 1e-8, false),
      PreconditionError);
  CheckOutcome forced =
      check_lieb_monotone(LiebKind::Concave, tp, k, a, b, 0.5, 0.5, 1e-8, true);
  CHECK(forced.exploratory);

  // Interior parameters on a unital-but-not-semiunital map.
  SuperMap ua = gen_channel(3, 2, 3, rng, ChannelFlavor::UnitalAdjoint);
  REQUIRE_FALSE(ua.is_semiunital(1e-9));
  Matrix a3 = gen_psd(ua.d_out(), rng), b3 = gen_psd(ua.d_out(), rng);
  Matrix k3 = gen_gaussian(ua.d_in(), ua.d_in(), rng);
  CHECK_THROWS_AS(
      check_lieb_monotone(LiebKind::Concave, ua, k3, a3, b3, 0.3, 0.3, 1e-8, false),
      PreconditionError);
  CHECK_NOTHROW(
      check_lieb_monotone(LiebKind::Concave, ua, k3, a3, b3, 0.3, 0.7, 1e-8, false));
}

TEST_CASE("parameter domains") {
  SuperMap id2 = identity_map(2);
  Matrix a = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(check_epstein_monotone(id2, a, a, 1.2, 1.0, 1e-8), DomainError);
  CHECK_THROWS_AS(check_epstein_monotone(id2, a, a, 0.8, 0.5, 1e-8), DomainError);
  CHECK_THROWS_AS(check_epstein_convex_monotone(id2, a, a, 0.5, 0.2, 1e-8),
                  PreconditionError);  // q below 1/(2-s)
}

TEST_CASE("DPI and sandwiched monotonicity on channels") {
  Rng rng(13);
  SuperMap lam = gen_channel(3, 2, 3, rng);
  Matrix x = gen_density(3, rng).mat(), y = gen_density(3, rng).mat();
  CheckOutcome dpi = check_dpi(lam, x, y, 1e-8);
  CHECK(dpi.holds);
  CheckOutcome sw = check_sandwiched_mono(lam, x, y, 2.0, 1e-8);
  CHECK(sw.holds);
  // Equal states: both relative entropies vanish.
  CheckOutcome zero = check_dpi(lam, x, x, 1e-8);
  CHECK(std::abs(zero.lhs) < 1e-10);
  CHECK(std::abs(zero.rhs) < 1e-10);
}

TEST_CASE("tracial checks") {
  Rng rng(17);
  SuperMap phi = depolarizing_map(3, 0.6);
  Matrix k = gen_gaussian(3, 3, rng);
  Matrix y = gen_psd(3, rng) + 0.3 * Matrix::Identity(3, 3);
  CHECK(check_tracial(TracialMode::A, phi, {{"K", k}, {"Y", y}}, 1e-8).holds);
  CHECK(check_tracial(TracialMode::Main, phi, {{"K", k}, {"Y", y}}, 1e-8).holds);
  CHECK(check_tracial(TracialMode::B, phi, {{"B", k}}, 1e-8).holds);
}

TEST_CASE("midpoint check is exact at equal endpoints") {
  Rng rng(19);
  Matrix a = gen_psd(3, rng), b = gen_gaussian(3, 3, rng);
  std::map<std::string, Matrix> in1 = {{"A", a}, {"B", b}};
  std::map<std::string, Matrix> in2 = {{"A", a}};
  CheckOutcome out =
      midpoint_check("epstein", in1, in2, {{"p", 0.5}}, Direction::Concave, 1e-8);
  CHECK(out.holds);
  CHECK(std::abs(out.margin) < 1e-12);
  CHECK_THROWS_AS(
      midpoint_check("nope", in1, in2, {{"p", 0.5}}, Direction::Concave, 1e-8),
      InvalidInput);
}

TEST_CASE("embedding reduction identities are exact") {
  Rng rng(23);
  Matrix a1 = gen_psd(3, rng), a2 = gen_psd(3, rng), b = gen_gaussian(3, 3, rng);
  auto [identity, midpoint] = embedding_reduction("epstein", a1, a2, b, {{"p", 0.4}}, 1e-8);
  CHECK(identity.holds);
  CHECK(std::abs(identity.margin) < 1e-10);
  CHECK(midpoint.holds);

  Matrix p1 = gen_pd(2, rng, 1e-4).mat(), p2 = gen_pd(2, rng, 1e-4).mat();
  Matrix bi = gen_invertible(2, rng);
  auto [id2, mid2] =
      embedding_reduction("neg_power", p1, p2, bi, {{"s", 0.3}, {"q", 0.7}}, 1e-8);
  CHECK(id2.holds);
  CHECK(mid2.holds);
  CHECK_THROWS_AS(embedding_reduction("bogus", a1, a2, b, {}, 1e-8), InvalidInput);
}

TEST_CASE("endpoint falsifiers nail the transpose") {
  SuperMap tp = transpose_map(2);
  Rng rng(29);
  ClassVerdict v1 = falsify_class_via_inequality("L1M_endpoint_p0", tp, rng, 1000, 1e-8);
  REQUIRE(v1.verdict == Verdict::Falsified);
  CHECK(std::abs(v1.min_eig + 1.0) < 1e-12);
  REQUIRE(v1.witness.has_value());
  CHECK(min_eigenvalue(schwarz_defect(tp, *v1.witness)) ==
        doctest::Approx(v1.min_eig).epsilon(1e-12));

  Rng rng2(31);
  ClassVerdict v2 = falsify_class_via_inequality("tracialA_t0", tp, rng2, 1000, 1e-8);
  REQUIRE(v2.verdict == Verdict::Falsified);
  REQUIRE(v2.witness.has_value());
  CHECK(v2.witness->cols() == 4);  // [K | Y] side by side

  // A CP map can never be falsified, only Unknown.
  Rng rng3(37);
  ClassVerdict v3 =
      falsify_class_via_inequality("L1M_endpoint_p0", depolarizing_map(2, 0.5), rng3,
                                   50, 1e-8);
  CHECK(v3.verdict == Verdict::Unknown);
}

TEST_CASE("boundary-line values stay below the invariant bound") {
  Rng rng(41);
  SuperMap phi = depolarizing_map(3, 0.55);
  std::map<std::string, Matrix> mats = {{"A", gen_pd(3, rng, 1e-4).mat()},
                                        {"B", gen_pd(3, rng, 1e-4).mat()},
                                        {"K", gen_gaussian(3, 3, rng)}};
  auto outs = interp_boundary_check(BoundaryKind::F, phi, mats, 0.45,
                                    {-2.0, -0.5, 0.0, 0.5, 2.0}, 1e-8);
  CHECK(outs.size() == 10);
  for (const auto& o : outs) CHECK(o.holds);

  std::map<std::string, Matrix> gmats = {{"X", gen_pd(3, rng, 1e-4).mat()},
                                         {"Y", gen_pd(3, rng, 1e-4).mat()},
                                         {"K", gen_gaussian(3, 3, rng)}};
  for (const auto& o :
       interp_boundary_check(BoundaryKind::G, phi, gmats, 0.6, {-1.0, 1.0}, 1e-8))
    CHECK(o.holds);
  CHECK_THROWS_AS(interp_boundary_check(BoundaryKind::F, phi, mats, 1.5, {0.0}, 1e-8),
                  DomainError);
}

TEST_CASE("instances replay to identical outcomes through json") {
  Rng rng(43);
  SuperMap phi = depolarizing_map(2, 0.4);
  Matrix k = gen_gaussian(2, 2, rng);
  Matrix a = gen_psd(2, rng), b = gen_psd(2, rng);
  CheckOutcome out = check_lieb_monotone(LiebKind::Concave, phi, k, a, b, 0.3, 0.4, 1e-8);
  nlohmann::json j = out.snapshot.to_json();
  Instance back = Instance::from_json(j);
  CheckOutcome again = evaluate_check(back, 1e-8);
  CHECK(again.check_id == out.check_id);
  CHECK(again.margin == doctest::Approx(out.margin).epsilon(1e-12));
  CHECK(again.holds == out.holds);
}

TEST_CASE("descriptors and id list") {
  nlohmann::json d = check_descriptors();
  CHECK(d.is_array());
  CHECK(d.size() >= 14);
  for (const auto& entry : d) {
    CHECK(entry.contains("id"));
    CHECK(entry.contains("family"));
    CHECK(entry.contains("roles"));
  }
  CHECK(!known_check_ids().empty());
  Instance bogus;
  bogus.check_id = "no_such_check";
  CHECK_THROWS_AS(evaluate_check(bogus, 1e-8), InvalidInput);
}
