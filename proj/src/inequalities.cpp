#include "tracemono/inequalities.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace tracemono {

namespace {

constexpr double kClassTol = 1e-9;

PsdMatrix as_psd(const Matrix& m) { return PsdMatrix(symmetrize(m), 1e-8); }
PdMatrix as_pd(const Matrix& m) { return PdMatrix(symmetrize(m), 1e-12); }

CheckOutcome make_outcome(double lhs, double rhs, double tol, Instance snapshot,
                          bool exploratory = false) {
  CheckOutcome out;
  out.check_id = snapshot.check_id;
  out.lhs = lhs;
  out.rhs = rhs;
  out.margin = (rhs - lhs) / comparison_scale(lhs, rhs);
  out.holds = out.margin >= -tol;
  out.tol = tol;
  out.exploratory = exploratory;
  out.snapshot = std::move(snapshot);
  return out;
}

// Equality assertion encoded in the one-sided margin convention:
// holds iff |lhs - rhs| <= tol * scale.
CheckOutcome make_identity_outcome(double lhs, double rhs, double worst_dev,
                                   double tol, Instance snapshot) {
  CheckOutcome out;
  out.check_id = snapshot.check_id;
  out.lhs = lhs;
  out.rhs = rhs;
  out.margin = -worst_dev / comparison_scale(lhs, rhs);
  out.holds = out.margin >= -tol;
  out.tol = tol;
  out.snapshot = std::move(snapshot);
  return out;
}

bool schwarz_certified(const SuperMap& phi) {
  return check_cp(phi, kClassTol).verdict == Verdict::Certified;
}

void require(bool ok, bool force, const char* what) {
  if (!ok && !force) throw PreconditionError(what);
}

// Positivity validated by sampling rank-1 PSD inputs; a CP certificate
// short-circuits.
bool sampled_positive(const SuperMap& phi, int trials = 24) {
  if (schwarz_certified(phi)) return true;
  Rng rng(0x706f736974697665ULL);
  for (int t = 0; t < trials; ++t) {
    Vector v = gen_gaussian(phi.d_in(), 1, rng);
    Matrix out = phi.apply(v * v.adjoint());
    if (min_eigenvalue(out) < -kClassTol * std::max(1.0, spectral_norm(out)))
      return false;
  }
  return true;
}

Instance make_instance(std::string id, std::optional<SuperMap> map,
                       std::map<std::string, Matrix> mats,
                       std::map<std::string, double> params, bool forced = false) {
  Instance inst;
  inst.check_id = std::move(id);
  inst.map = std::move(map);
  inst.mats = std::move(mats);
  inst.params = std::move(params);
  inst.forced = forced;
  return inst;
}

}  // namespace

const Matrix& Instance::mat(const std::string& name) const {
  auto it = mats.find(name);
  if (it == mats.end()) throw InvalidInput("Instance: missing matrix '" + name + "'");
  return it->second;
}

double Instance::param(const std::string& name) const {
  auto it = params.find(name);
  if (it == params.end()) throw InvalidInput("Instance: missing parameter '" + name + "'");
  return it->second;
}

bool Instance::has_param(const std::string& name) const {
  return params.count(name) > 0;
}

nlohmann::json Instance::to_json() const {
  nlohmann::json j;
  j["check_id"] = check_id;
  if (map) j["map"] = map->to_json();
  nlohmann::json jm;
  for (const auto& [name, m] : mats) jm[name] = matrix_to_json(m);
  j["mats"] = jm;
  j["params"] = params;
  j["forced"] = forced;
  return j;
}

Instance Instance::from_json(const nlohmann::json& j) {
  Instance inst;
  inst.check_id = j.at("check_id").get<std::string>();
  if (j.contains("map")) inst.map = SuperMap::from_json(j.at("map"));
  for (const auto& [name, mj] : j.at("mats").items())
    inst.mats.emplace(name, matrix_from_json(mj));
  for (const auto& [name, v] : j.at("params").items())
    inst.params.emplace(name, v.get<double>());
  inst.forced = j.value("forced", false);
  return inst;
}

nlohmann::json CheckOutcome::to_json() const {
  return {{"check_id", check_id}, {"lhs", lhs},       {"rhs", rhs},
          {"margin", margin},     {"holds", holds},   {"tol", tol},
          {"exploratory", exploratory},               {"instance", snapshot.to_json()}};
}

// ---------------------------------------------------------------------------
// Monotone checks
// ---------------------------------------------------------------------------

CheckOutcome check_lieb_monotone(LiebKind kind, const SuperMap& phi,
                                 const Matrix& k, const Matrix& a, const Matrix& b,
                                 double s, double t, double tol, bool force) {
  bool interior = s + t < 1.0 - 1e-12;
  require(schwarz_certified(phi), force, "check_lieb_monotone: map not certified Schwarz");
  if (interior)
    require(phi.is_semiunital(kClassTol), force,
            "check_lieb_monotone: interior exponents need a semiunital map");
  double factor = std::pow(phi.dim_ratio(), 1.0 - (s + t));
  SuperMap adj = phi.adjoint();

  if (kind == LiebKind::Concave) {
    // A, B on the d_out side, K on the d_in side.
    Matrix pk = phi.apply(k);
    double lhs = lieb_concave_form(pk, as_psd(a), as_psd(b), s, t);
    double rhs = factor * lieb_concave_form(k, as_psd(adj.apply(a)), as_psd(adj.apply(b)), s, t);
    Instance inst = make_instance("L1MB", phi, {{"K", k}, {"A", a}, {"B", b}},
                                  {{"s", s}, {"t", t}}, force);
    if (!interior) inst.check_id = "L1M";
    return make_outcome(lhs, rhs, tol, std::move(inst), force);
  }

  // Convex kind: X, Y, K all on the d_out side; the adjoint carries them back.
  Matrix adj_id = adj.apply(Matrix::Identity(phi.d_out(), phi.d_out()));
  require(min_eigenvalue(adj_id) > 1e-10 * std::max(1.0, spectral_norm(adj_id)), force,
          "check_lieb_monotone: adjoint of identity not positive definite");
  double lhs = lieb_convex_form(adj.apply(k), as_pd(adj.apply(a)), as_pd(adj.apply(b)), s, t);
  double rhs = factor * lieb_convex_form(k, as_pd(a), as_pd(b), s, t);
  Instance inst = make_instance(interior ? "L2MB" : "L2M", phi,
                                {{"K", k}, {"X", a}, {"Y", b}}, {{"s", s}, {"t", t}},
                                force);
  return make_outcome(lhs, rhs, tol, std::move(inst), force);
}

CheckOutcome check_epstein_monotone(const SuperMap& phi, const Matrix& a,
                                    const Matrix& b, double s, double r,
                                    double tol, bool force) {
  if (!(s > 0.0 && s <= 1.0) || r < s - 1e-12 || r > 1.0 + 1e-12)
    throw DomainError("check_epstein_monotone: need 0 < s <= r <= 1");
  bool interior = r < 1.0 - 1e-12;
  require(schwarz_certified(phi), force, "check_epstein_monotone: map not certified Schwarz");
  require(phi.is_unital(kClassTol), force, "check_epstein_monotone: map not unital");
  if (interior)
    require(phi.is_sesquiunital(kClassTol), force,
            "check_epstein_monotone: r < 1 needs a sesquiunital map");
  SuperMap adj = phi.adjoint();
  double lhs = epstein_general(as_psd(a), phi.apply(b), s, r);
  double factor = std::pow(phi.dim_ratio(), 1.0 - r);
  double rhs = factor * epstein_general(as_psd(adj.apply(a)), b, s, r);
  Instance inst = make_instance(interior ? "Ep2" : "Ep1", phi, {{"A", a}, {"B", b}},
                                {{"s", s}, {"r", r}}, force);
  return make_outcome(lhs, rhs, tol, std::move(inst), force);
}

CheckOutcome check_epstein_convex_monotone(const SuperMap& phi, const Matrix& a,
                                           const Matrix& b, double s, double q,
                                           double tol, bool force) {
  if (!(s >= 0.0 && s < 1.0)) throw DomainError("check_epstein_convex_monotone: bad s");
  double q_low = 1.0 / (2.0 - s);
  if (q < q_low - 1e-12 || q >= 1.0)
    throw PreconditionError("check_epstein_convex_monotone: q outside [1/(2-s), 1)");
  bool interior = q > q_low + 1e-12;
  require(schwarz_certified(phi), force,
          "check_epstein_convex_monotone: map not certified Schwarz");
  require(phi.is_unital(kClassTol), force, "check_epstein_convex_monotone: map not unital");
  if (interior)
    require(phi.is_sesquiunital(kClassTol), force,
            "check_epstein_convex_monotone: q above the endpoint needs sesquiunital");
  SuperMap adj = phi.adjoint();
  // lhs is the adjoint-side value; rhs carries the dimension factor.
  double lhs = neg_power_form(as_pd(adj.apply(a)), adj.apply(b), s, q);
  double factor = std::pow(phi.dim_ratio(), (2.0 - s) * q - 1.0);
  double rhs = factor * neg_power_form(as_pd(a), b, s, q);
  Instance inst = make_instance(interior ? "Ep3" : "Ep3A", phi, {{"A", a}, {"B", b}},
                                {{"s", s}, {"q", q}}, force);
  return make_outcome(lhs, rhs, tol, std::move(inst), force);
}

CheckOutcome check_dpi(const SuperMap& phi_tp, const Matrix& x, const Matrix& y,
                       double tol, bool force) {
  require(phi_tp.is_trace_preserving(kClassTol), force, "check_dpi: map not trace preserving");
  bool cp = schwarz_certified(phi_tp);
  if (!cp)
    require(sampled_positive(phi_tp), force, "check_dpi: map failed positivity sampling");
  double lhs = umegaki(as_pd(phi_tp.apply(x)), as_pd(phi_tp.apply(y)));
  double rhs = umegaki(as_pd(x), as_pd(y));
  Instance inst = make_instance("DPI", phi_tp, {{"X", x}, {"Y", y}}, {}, force);
  if (!cp) inst.params["positive_tp"] = 1.0;
  return make_outcome(lhs, rhs, tol, std::move(inst), force);
}

CheckOutcome check_tracial(TracialMode mode, const SuperMap& phi,
                           const std::map<std::string, Matrix>& args, double tol,
                           bool force) {
  require(schwarz_certified(phi), force, "check_tracial: map not certified Schwarz");
  SuperMap adj = phi.adjoint();
  if (mode == TracialMode::B) {
    const Matrix& b = args.at("B");
    Matrix ab = adj.apply(b);
    double lhs = real_trace(ab.adjoint() * ab);
    Matrix adj_id = adj.apply(Matrix::Identity(phi.d_out(), phi.d_out()));
    double rhs = spectral_norm(adj_id) * real_trace(b.adjoint() * b);
    Instance inst = make_instance("tracialB", phi, {{"B", b}}, {}, force);
    return make_outcome(lhs, rhs, tol, std::move(inst), force);
  }
  const Matrix& k = args.at("K");
  const Matrix& y = args.at("Y");
  Matrix ak = adj.apply(k);
  Matrix ay_inv = mat_pow(as_pd(adj.apply(y)), -1.0);
  double lhs = real_trace(ak.adjoint() * ay_inv * ak);
  double rhs = real_trace(k.adjoint() * mat_pow(as_pd(y), -1.0) * k);
  std::string id = mode == TracialMode::A ? "tracialA" : "tracial";
  Instance inst = make_instance(id, phi, {{"K", k}, {"Y", y}}, {}, force);
  return make_outcome(lhs, rhs, tol, std::move(inst), force);
}

CheckOutcome check_sandwiched_mono(const SuperMap& lambda, const Matrix& rho,
                                   const Matrix& sigma, double alpha, double tol,
                                   bool force) {
  require(lambda.is_trace_preserving(kClassTol), force,
          "check_sandwiched_mono: map not trace preserving");
  require(sampled_positive(lambda), force,
          "check_sandwiched_mono: map failed positivity sampling");
  double lhs = sandwiched_trace(as_psd(lambda.apply(rho)), as_pd(lambda.apply(sigma)), alpha);
  double rhs = sandwiched_trace(as_psd(rho), as_pd(sigma), alpha);
  Instance inst = make_instance("sandwiched", lambda, {{"rho", rho}, {"sigma", sigma}},
                                {{"alpha", alpha}}, force);
  return make_outcome(lhs, rhs, tol, std::move(inst), force);
}

// ---------------------------------------------------------------------------
// Midpoint checks
// ---------------------------------------------------------------------------

namespace {

struct FunctionalShape {
  std::vector<std::string> midpointed;
  std::vector<std::string> fixed;
  Direction direction;
};

const FunctionalShape& functional_shape(const std::string& fid) {
  static const std::map<std::string, FunctionalShape> shapes = {
      {"lieb_concave", {{"A", "B"}, {"K"}, Direction::Concave}},
      {"lieb_convex", {{"X", "Y", "K"}, {}, Direction::Convex}},
      {"epstein", {{"A"}, {"B"}, Direction::Concave}},
      {"epstein_general", {{"A"}, {"B"}, Direction::Concave}},
      {"neg_power", {{"A", "B"}, {}, Direction::Convex}},
      {"ando", {{"A"}, {"B"}, Direction::Convex}},
  };
  auto it = shapes.find(fid);
  if (it == shapes.end()) throw InvalidInput("unknown functional id '" + fid + "'");
  return it->second;
}

double eval_functional(const std::string& fid,
                       const std::map<std::string, Matrix>& mats,
                       const std::map<std::string, double>& params) {
  auto p = [&params](const std::string& name) { return params.at(name); };
  if (fid == "lieb_concave")
    return lieb_concave_form(mats.at("K"), as_psd(mats.at("A")), as_psd(mats.at("B")),
                             p("s"), p("t"));
  if (fid == "lieb_convex")
    return lieb_convex_form(mats.at("K"), as_pd(mats.at("X")), as_pd(mats.at("Y")),
                            p("s"), p("t"));
  if (fid == "epstein") return epstein(as_psd(mats.at("A")), mats.at("B"), p("p"));
  if (fid == "epstein_general")
    return epstein_general(as_psd(mats.at("A")), mats.at("B"), p("s"), p("r"));
  if (fid == "neg_power")
    return neg_power_form(as_pd(mats.at("A")), mats.at("B"), p("s"), p("q"));
  if (fid == "ando") return ando_form(as_pd(mats.at("A")), mats.at("B"), p("p"), p("r"));
  throw InvalidInput("unknown functional id '" + fid + "'");
}

}  // namespace

CheckOutcome midpoint_check(const std::string& functional_id,
                            const std::map<std::string, Matrix>& inputs_1,
                            const std::map<std::string, Matrix>& inputs_2,
                            const std::map<std::string, double>& params,
                            Direction direction, double tol) {
  const FunctionalShape& shape = functional_shape(functional_id);
  std::map<std::string, Matrix> mats_1 = inputs_1, mats_2 = inputs_1, mats_mid = inputs_1;
  for (const std::string& name : shape.midpointed) {
    const Matrix& m1 = inputs_1.at(name);
    const Matrix& m2 = inputs_2.at(name);
    mats_2[name] = m2;
    mats_mid[name] = 0.5 * (m1 + m2);
  }
  double f1 = eval_functional(functional_id, mats_1, params);
  double f2 = eval_functional(functional_id, mats_2, params);
  double fmid = eval_functional(functional_id, mats_mid, params);
  double avg = 0.5 * (f1 + f2);

  std::map<std::string, Matrix> snapshot_mats;
  for (const std::string& name : shape.fixed) snapshot_mats[name] = inputs_1.at(name);
  for (const std::string& name : shape.midpointed) {
    snapshot_mats[name + "1"] = inputs_1.at(name);
    snapshot_mats[name + "2"] = inputs_2.at(name);
  }
  Instance inst = make_instance("midpoint:" + functional_id, std::nullopt,
                                std::move(snapshot_mats), params);
  // Concave: average <= value at midpoint. Convex: midpoint value <= average.
  double lhs = direction == Direction::Concave ? avg : fmid;
  double rhs = direction == Direction::Concave ? fmid : avg;
  return make_outcome(lhs, rhs, tol, std::move(inst));
}

// ---------------------------------------------------------------------------
// Embedding reductions
// ---------------------------------------------------------------------------

std::pair<CheckOutcome, CheckOutcome> embedding_reduction(
    const std::string& corollary_id, const Matrix& a1, const Matrix& a2,
    const Matrix& b, const std::map<std::string, double>& params, double tol) {
  Index m = b.rows();
  if (a1.rows() != m || a2.rows() != m || b.cols() != m)
    throw InvalidInput("embedding_reduction: square blocks of equal dimension required");
  Matrix a_blk = Matrix::Zero(2 * m, 2 * m);
  a_blk.topLeftCorner(m, m) = a1;
  a_blk.bottomRightCorner(m, m) = a2;
  Matrix b_blk = Matrix::Zero(2 * m, 2 * m);
  b_blk.topLeftCorner(m, m) = b;
  b_blk.bottomRightCorner(m, m) = b;
  Matrix a_sum = a1 + a2;
  Matrix a_mid = 0.5 * a_sum;

  double v1, v2, block_value, merged, mid, factor_check;
  double power_of_two;  // merged side at A1 == A2 is 2^power x single block
  Direction direction;
  if (corollary_id == "epstein") {
    double p = params.at("p");
    v1 = epstein(as_psd(a1), b, p);
    v2 = epstein(as_psd(a2), b, p);
    block_value = epstein(as_psd(a_blk), b_blk, p);
    merged = epstein(as_psd(a_sum), b, p);
    mid = epstein(as_psd(a_mid), b, p);
    factor_check = 0.5 * merged;  // homogeneity of degree one in A^p -> ^(1/p)
    power_of_two = 1.0;
    direction = Direction::Concave;
  } else if (corollary_id == "power_concave") {
    double s = params.at("s"), r = params.at("r");
    v1 = epstein_general(as_psd(a1), b, s, r);
    v2 = epstein_general(as_psd(a2), b, s, r);
    block_value = epstein_general(as_psd(a_blk), b_blk, s, r);
    merged = epstein_general(as_psd(a_sum), b, s, r);
    mid = epstein_general(as_psd(a_mid), b, s, r);
    factor_check = std::pow(0.5, r) * merged;
    power_of_two = r;
    direction = Direction::Concave;
  } else if (corollary_id == "neg_power") {
    double s = params.at("s"), q = params.at("q");
    v1 = neg_power_form(as_pd(a1), b, s, q);
    v2 = neg_power_form(as_pd(a2), b, s, q);
    block_value = neg_power_form(as_pd(a_blk), b_blk, s, q);
    // The adjoint of the doubling map merges the B blocks too: 2B against
    // A1 + A2, scaled back by (1/2)^{(2-s)q}.
    merged = neg_power_form(as_pd(a_sum), (2.0 * b).eval(), s, q);
    mid = neg_power_form(as_pd(a_mid), b, s, q);
    factor_check = std::pow(0.5, (2.0 - s) * q) * merged;
    power_of_two = (2.0 - s) * q;
    direction = Direction::Convex;
  } else {
    throw InvalidInput("embedding_reduction: unknown corollary '" + corollary_id + "'");
  }

  double dev_block = std::abs(block_value - (v1 + v2));
  double dev_factor = std::abs(factor_check - mid);
  double worst = std::max(dev_block, dev_factor) /
                 comparison_scale(block_value, merged);

  std::map<std::string, Matrix> mats = {{"A1", a1}, {"A2", a2}, {"B", b}};
  std::map<std::string, double> ps = params;
  ps["power_of_two"] = power_of_two;
  Instance id_inst = make_instance("reduction:" + corollary_id + "#identity",
                                   std::nullopt, mats, ps);
  CheckOutcome identity = make_identity_outcome(block_value, v1 + v2,
                                                worst * comparison_scale(block_value, merged),
                                                tol, std::move(id_inst));

  double avg = 0.5 * (v1 + v2);
  double lhs = direction == Direction::Concave ? avg : mid;
  double rhs = direction == Direction::Concave ? mid : avg;
  Instance mid_inst = make_instance("reduction:" + corollary_id + "#midpoint",
                                    std::nullopt, std::move(mats), std::move(ps));
  CheckOutcome midpoint = make_outcome(lhs, rhs, tol, std::move(mid_inst));
  return {std::move(identity), std::move(midpoint)};
}

// ---------------------------------------------------------------------------
// Endpoint falsifiers
// ---------------------------------------------------------------------------

ClassVerdict falsify_class_via_inequality(const std::string& ineq_id,
                                          const SuperMap& phi, Rng& rng,
                                          int trials, double tol) {
  if (!sampled_positive(phi))
    throw PreconditionError("falsify_class_via_inequality: map failed positivity sampling");
  ClassVerdict out;
  out.tol = tol;
  Index d_in = phi.d_in(), d_out = phi.d_out();
  SuperMap adj = phi.adjoint();
  int t = 0;

  auto next_probe = [&](Index d) -> Matrix {
    // Matrix units first, then complex Gaussians.
    if (t < d * d) {
      Matrix e = Matrix::Zero(d, d);
      e(t / d, t % d) = 1.0;
      return e;
    }
    return gen_gaussian(d, d, rng);
  };

  if (ineq_id == "L1M_endpoint_p0") {
    // tr[Phi(K)^dagger Phi(K) B] <= tr[Phi(K^dagger K) B] for all PSD B is
    // exactly PSD-ness of the defect; the optimal B is the bottom
    // eigenprojector.
    while (t < trials) {
      Matrix k = next_probe(d_in);
      ++t;
      Matrix defect = schwarz_defect(phi, k);
      double lo = min_eigenvalue(defect);
      if (lo < -tol * std::max(1.0, spectral_norm(defect))) {
        out.verdict = Verdict::Falsified;
        out.witness = k;
        out.min_eig = lo;
        out.trials_used = t;
        return out;
      }
    }
  } else if (ineq_id == "tracialA_t0") {
    while (t < trials) {
      Matrix k = next_probe(d_out);
      ++t;
      Matrix y = gen_psd(d_out, rng) + 0.1 * Matrix::Identity(d_out, d_out);
      double lhs, rhs;
      try {
        Matrix ak = adj.apply(k);
        Matrix ay_inv = mat_pow(symmetrize(adj.apply(y)), -1.0, 1e-10);
        lhs = real_trace(ak.adjoint() * ay_inv * ak);
        rhs = real_trace(k.adjoint() * mat_pow(symmetrize(y), -1.0, 1e-10) * k);
      } catch (const SingularMatrix&) {
        continue;
      }
      double margin = (rhs - lhs) / comparison_scale(lhs, rhs);
      if (margin < -tol) {
        Matrix witness(d_out, 2 * d_out);
        witness << k, y;
        out.verdict = Verdict::Falsified;
        out.witness = witness;
        out.min_eig = margin;
        out.trials_used = t;
        return out;
      }
    }
  } else {
    throw InvalidInput("falsify_class_via_inequality: unknown id '" + ineq_id + "'");
  }
  out.verdict = Verdict::Unknown;
  out.trials_used = trials;
  return out;
}

// ---------------------------------------------------------------------------
// Boundary-line checks for the interpolation argument
// ---------------------------------------------------------------------------

namespace {

CheckOutcome boundary_point(BoundaryKind kind, const SuperMap& phi,
                            const std::map<std::string, Matrix>& mats,
                            double exponent, double k_line, double y, double tol) {
  const Complex z(k_line, y);
  SuperMap adj = phi.adjoint();
  double bound, value;
  Instance inst;
  if (kind == BoundaryKind::F) {
    Matrix a = symmetrize(mats.at("A")), b = symmetrize(mats.at("B"));
    const Matrix& kk = mats.at("K");
    Matrix aa = symmetrize(adj.apply(a)), ab = symmetrize(adj.apply(b));
    Matrix m = mat_pow(aa, 0.5 * exponent) * kk * mat_pow(ab, 0.5 * (1.0 - exponent));
    bound = real_trace(m.adjoint() * m);
    Matrix x_arg = mat_pow_complex(aa, -0.5 * z) * m * mat_pow_complex(ab, -0.5 * (1.0 - z));
    Matrix y_arg = mat_pow_complex(ab, -0.5 * (1.0 - z)) * m.adjoint() * mat_pow_complex(aa, -0.5 * z);
    Matrix prod = phi.apply(y_arg) * mat_pow_complex(a, z) * phi.apply(x_arg) *
                  mat_pow_complex(b, 1.0 - z);
    value = std::abs(prod.trace());
    inst = make_instance("boundary_f", phi, {{"A", a}, {"B", b}, {"K", kk}},
                         {{"p", exponent}, {"y", y}, {"k", k_line}});
  } else {
    Matrix x = symmetrize(mats.at("X")), yy = symmetrize(mats.at("Y"));
    const Matrix& kk = mats.at("K");
    Matrix m = mat_pow_complex(yy, 0.5 * (exponent - 1.0)) * kk *
               mat_pow_complex(x, -0.5 * exponent);
    bound = real_trace(m.adjoint() * m);
    Matrix ax = symmetrize(adj.apply(x)), ay = symmetrize(adj.apply(yy));
    Matrix left = adj.apply((mat_pow_complex(x, 0.5 * z) * m.adjoint() *
                             mat_pow_complex(yy, 0.5 * (1.0 - z))).eval());
    Matrix right = adj.apply((mat_pow_complex(yy, 0.5 * (1.0 - z)) * m *
                              mat_pow_complex(x, 0.5 * z)).eval());
    Matrix prod = left * mat_pow_complex(ay, z - 1.0) * right * mat_pow_complex(ax, -z);
    value = std::abs(prod.trace());
    inst = make_instance("boundary_g", phi, {{"X", x}, {"Y", yy}, {"K", kk}},
                         {{"t", exponent}, {"y", y}, {"k", k_line}});
  }
  return make_outcome(value, bound * (1.0 + tol), tol, std::move(inst));
}

}  // namespace

std::vector<CheckOutcome> interp_boundary_check(
    BoundaryKind kind, const SuperMap& phi,
    const std::map<std::string, Matrix>& mats, double exponent,
    const std::vector<double>& y_samples, double tol) {
  if (!(exponent > 0.0 && exponent < 1.0))
    throw DomainError("interp_boundary_check: exponent must lie in (0, 1)");
  std::vector<CheckOutcome> out;
  out.reserve(2 * y_samples.size());
  for (double y : y_samples) {
    if (!std::isfinite(y)) throw InvalidInput("interp_boundary_check: non-real y");
    out.push_back(boundary_point(kind, phi, mats, exponent, 0.0, y, tol));
    out.push_back(boundary_point(kind, phi, mats, exponent, 1.0, y, tol));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Replay dispatcher
// ---------------------------------------------------------------------------

CheckOutcome evaluate_check(const Instance& inst, double tol) {
  const std::string& id = inst.check_id;
  bool force = inst.forced;
  if (id == "L1M" || id == "L1MB")
    return check_lieb_monotone(LiebKind::Concave, *inst.map, inst.mat("K"),
                               inst.mat("A"), inst.mat("B"), inst.param("s"),
                               inst.param("t"), tol, force);
  if (id == "L2M" || id == "L2MB")
    return check_lieb_monotone(LiebKind::Convex, *inst.map, inst.mat("K"),
                               inst.mat("X"), inst.mat("Y"), inst.param("s"),
                               inst.param("t"), tol, force);
  if (id == "Ep1" || id == "Ep2")
    return check_epstein_monotone(*inst.map, inst.mat("A"), inst.mat("B"),
                                  inst.param("s"), inst.param("r"), tol, force);
  if (id == "Ep3A" || id == "Ep3")
    return check_epstein_convex_monotone(*inst.map, inst.mat("A"), inst.mat("B"),
                                         inst.param("s"), inst.param("q"), tol, force);
  if (id == "DPI")
    return check_dpi(*inst.map, inst.mat("X"), inst.mat("Y"), tol, force);
  if (id == "sandwiched")
    return check_sandwiched_mono(*inst.map, inst.mat("rho"), inst.mat("sigma"),
                                 inst.param("alpha"), tol, force);
  if (id == "tracialA")
    return check_tracial(TracialMode::A, *inst.map,
                         {{"K", inst.mat("K")}, {"Y", inst.mat("Y")}}, tol, force);
  if (id == "tracial")
    return check_tracial(TracialMode::Main, *inst.map,
                         {{"K", inst.mat("K")}, {"Y", inst.mat("Y")}}, tol, force);
  if (id == "tracialB")
    return check_tracial(TracialMode::B, *inst.map, {{"B", inst.mat("B")}}, tol, force);
  if (id.rfind("midpoint:", 0) == 0) {
    std::string fid = id.substr(9);
    const FunctionalShape& shape = functional_shape(fid);
    std::map<std::string, Matrix> in1, in2;
    for (const std::string& name : shape.fixed) in1[name] = inst.mat(name);
    for (const std::string& name : shape.midpointed) {
      in1[name] = inst.mat(name + "1");
      in2[name] = inst.mat(name + "2");
    }
    return midpoint_check(fid, in1, in2, inst.params, shape.direction, tol);
  }
  if (id.rfind("reduction:", 0) == 0) {
    auto hash = id.find('#');
    if (hash == std::string::npos) throw InvalidInput("bad reduction id");
    std::string rid = id.substr(10, hash - 10);
    std::map<std::string, double> params = inst.params;
    params.erase("power_of_two");
    auto [identity, midpoint] = embedding_reduction(rid, inst.mat("A1"), inst.mat("A2"),
                                                    inst.mat("B"), params, tol);
    return id.substr(hash + 1) == "identity" ? identity : midpoint;
  }
  if (id == "boundary_f" || id == "boundary_g") {
    BoundaryKind kind = id == "boundary_f" ? BoundaryKind::F : BoundaryKind::G;
    double expo = kind == BoundaryKind::F ? inst.param("p") : inst.param("t");
    return boundary_point(kind, *inst.map, inst.mats, expo, inst.param("k"),
                          inst.param("y"), tol);
  }
  throw InvalidInput("evaluate_check: unknown check id '" + id + "'");
}

std::vector<std::string> known_check_ids() {
  return {"L1M",  "L1MB",     "L2M",      "L2MB",    "Ep1",      "Ep2",
          "Ep3A", "Ep3",      "DPI",      "sandwiched", "tracialA", "tracial",
          "tracialB", "midpoint", "reductions", "extremal", "dual2",
          "reverse_holder", "boundary_f", "boundary_g", "hierarchy",
          "schwarz_falsify:transpose2"};
}

nlohmann::json check_descriptors() {
  nlohmann::json roles_concave = {{"map", "d_in -> d_out"},
                                  {"A", "d_out"}, {"B", "d_out"}, {"K", "d_in"}};
  nlohmann::json roles_out_side = {{"map", "d_in -> d_out"},
                                   {"args", "d_out, carried back by the adjoint"}};
  nlohmann::json desc = nlohmann::json::array();
  auto add = [&desc](const std::string& id, const std::string& family,
                     nlohmann::json roles, nlohmann::json domain) {
    desc.push_back({{"id", id}, {"family", family}, {"roles", std::move(roles)},
                    {"param_domain", std::move(domain)}});
  };
  add("L1M", "lieb_concave_monotone", roles_concave, {{"s+t", "= 1"}});
  add("L1MB", "lieb_concave_monotone", roles_concave, {{"s", "> 0"}, {"t", "> 0"}, {"s+t", "<= 1"}});
  add("L2M", "lieb_convex_monotone", roles_out_side, {{"s+t", "= 1"}});
  add("L2MB", "lieb_convex_monotone", roles_out_side, {{"s", "> 0"}, {"t", "> 0"}, {"s+t", "<= 1"}});
  add("Ep1", "epstein_monotone", {{"map", "d_in -> d_out"}, {"A", "d_out"}, {"B", "d_in"}},
      {{"s", "(0,1]"}, {"r", "= 1"}});
  add("Ep2", "epstein_monotone", {{"map", "d_in -> d_out"}, {"A", "d_out"}, {"B", "d_in"}},
      {{"s", "(0,1]"}, {"r", "[s,1]"}});
  add("Ep3A", "epstein_convex_monotone", roles_out_side, {{"s", "[0,1)"}, {"q", "= 1/(2-s)"}});
  add("Ep3", "epstein_convex_monotone", roles_out_side, {{"s", "[0,1)"}, {"q", "[1/(2-s),1)"}});
  add("DPI", "relative_entropy_monotone", {{"map", "trace preserving, d_in -> d_out"}},
      {{"X,Y", "PD densities on d_in"}});
  add("sandwiched", "renyi_monotone", {{"map", "positive trace preserving"}}, {{"alpha", "> 1"}});
  add("tracialA", "tracial", roles_out_side, {});
  add("tracial", "tracial", roles_out_side, {});
  add("tracialB", "tracial", roles_out_side, {});
  add("boundary_f", "interpolation_boundary", roles_concave, {{"p", "(0,1)"}, {"y", "real"}});
  add("boundary_g", "interpolation_boundary", roles_out_side, {{"t", "(0,1)"}, {"y", "real"}});
  return desc;
}

}  // namespace tracemono
