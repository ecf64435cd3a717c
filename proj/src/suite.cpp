#include "tracemono/suite.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace tracemono {

namespace {

constexpr double kClassTol = 1e-9;

std::uint64_t seed_from_params(const Instance& inst) {
  std::uint64_t lo = std::uint64_t(inst.param("seed_lo"));
  std::uint64_t hi = std::uint64_t(inst.param("seed_hi"));
  return (hi << 32) | lo;
}

void store_seed(Instance& inst, std::uint64_t seed) {
  inst.params["seed_lo"] = double(seed & 0xffffffffULL);
  inst.params["seed_hi"] = double(seed >> 32);
}

// -------------------------------------------------------------------------
// Map pickers. All choices are Schwarz via a CP certificate; the sesquiunital
// picker additionally guarantees Phi(1) = 1 and Phi^adj(1) = (d_out/d_in) 1,
// which the interior-parameter checks require.
// -------------------------------------------------------------------------

const std::vector<std::string>& known_families() {
  static const std::vector<std::string> names = {
      "pinching",  "depolarizing",   "mixed_unitary", "completely_mixing",
      "embedding", "channel_adjoint", "channel"};
  return names;
}

bool family_on(const std::vector<std::string>& fams, const char* name) {
  if (fams.empty()) return true;
  return std::find(fams.begin(), fams.end(), name) != fams.end();
}

// The six sesquiunital constructors, tagged by family. Cases 1 and 5 both
// belong to the depolarizing family.
const char* kSesquiFamily[6] = {"pinching",          "depolarizing", "mixed_unitary",
                                "completely_mixing", "embedding",    "depolarizing"};

SuperMap pick_sesqui(const std::vector<Index>& dims, int t, Rng& rng,
                     const std::vector<std::string>& fams) {
  size_t nd = dims.size();
  Index d = dims[t % nd];
  std::vector<int> cases;
  for (int c = 0; c < 6; ++c)
    if (family_on(fams, kSesquiFamily[c])) cases.push_back(c);
  if (cases.empty())
    throw InvalidInput("no enabled map family provides a sesquiunital map");
  switch (cases[(t / nd) % cases.size()]) {
    case 0:
      return compose(pinching_map(d), unitary_conj_map(gen_unitary(d, rng)));
    case 1:
      return depolarizing_map(d, 0.1 + 0.8 * rng.uniform());
    case 2: {
      Matrix u1 = gen_unitary(d, rng), u2 = gen_unitary(d, rng);
      double w = 0.2 + 0.6 * rng.uniform();
      return convex_combo({unitary_conj_map(u1), unitary_conj_map(u2)}, {w, 1.0 - w});
    }
    case 3:
      return completely_mixing_map(d, dims[(t / (nd * 6)) % nd]);
    case 4:
      return embedding_map(d);
    default:
      return compose(unitary_conj_map(gen_unitary(d, rng)),
                     depolarizing_map(d, 0.2 + 0.6 * rng.uniform()));
  }
}

// Unital CP but not necessarily sesquiunital: valid only on the boundary
// parameter slices. Every seventh draw is the adjoint of a random channel.
SuperMap pick_unital(const std::vector<Index>& dims, int t, Rng& rng,
                     const std::vector<std::string>& fams) {
  size_t nd = dims.size();
  bool have_sesqui = false;
  for (const char* f : kSesquiFamily) have_sesqui = have_sesqui || family_on(fams, f);
  if (family_on(fams, "channel_adjoint") &&
      (!have_sesqui || (t / nd) % 7 == 6)) {
    Index d = dims[t % nd];
    Index n = dims[(t / (nd * 7)) % nd];
    return gen_channel(n, d, 3, rng, ChannelFlavor::UnitalAdjoint);  // d -> n
  }
  return pick_sesqui(dims, t, rng, fams);
}

SuperMap pick_channel(const std::vector<Index>& dims, int t, Rng& rng,
                      const std::vector<std::string>& fams) {
  if (!family_on(fams, "channel"))
    throw InvalidInput("the channel map family is disabled");
  size_t nd = dims.size();
  Index m = dims[t % nd];
  Index n = dims[(t / nd) % nd];
  return gen_channel(m, n, 2 + t % 3, rng);
}

// -------------------------------------------------------------------------
// Evaluators for the checks that carry their own sampling (variational and
// structural suites). Shared verbatim between run and replay.
// -------------------------------------------------------------------------

CheckOutcome synth_outcome(Instance inst, double lhs, double rhs, double margin,
                           double tol) {
  CheckOutcome out;
  out.check_id = inst.check_id;
  out.lhs = lhs;
  out.rhs = rhs;
  out.margin = margin;
  out.holds = margin >= -tol;
  out.tol = tol;
  out.snapshot = std::move(inst);
  return out;
}

CheckOutcome eval_extremal(const Instance& inst, double tol) {
  PdMatrix x(inst.mat("X"), 1e-8);
  double r = inst.param("r");
  int samples = int(inst.param("samples"));
  Rng rng(seed_from_params(inst));
  VariationalReport rep = verify_extremal(x, r, rng, samples);
  double scale = comparison_scale(rep.value_at_optimizer, rep.target);
  double attain = std::abs(rep.value_at_optimizer - rep.target);
  double margin = std::min(rep.worst_violation, -attain) / scale;
  return synth_outcome(inst, rep.value_at_optimizer, rep.target, margin, tol);
}

CheckOutcome eval_dual2(const Instance& inst, double tol) {
  PdMatrix a(inst.mat("A"), 1e-8);
  const Matrix& b = inst.mat("B");
  double p = inst.param("p");
  int samples = int(inst.param("samples"));
  Rng rng(seed_from_params(inst));
  double target = epstein(PsdMatrix(a.mat()), b, p);
  PsdMatrix h_star = dual2_optimizer(a, b, p);
  double attained = dual2_value(a, b, p, h_star);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    Matrix h = gen_psd(a.dim(), rng);
    double v = dual2_value(a, b, p, PsdMatrix(std::move(h), 1e-8));
    worst = std::min(worst, target - v);
  }
  double scale = comparison_scale(attained, target);
  double margin = std::min(worst, -std::abs(attained - target)) / scale;
  return synth_outcome(inst, attained, target, margin, tol);
}

CheckOutcome eval_reverse_holder(const Instance& inst, double tol) {
  PdMatrix x(inst.mat("X"), 1e-8), y(inst.mat("Y"), 1e-8);
  double r = inst.param("r");
  double gap = verify_reverse_holder(x, y, r);
  double rhs = real_trace(x.mat() * y.mat());
  double lhs = rhs - gap;
  return synth_outcome(inst, lhs, rhs, gap / comparison_scale(lhs, rhs), tol);
}

CheckOutcome eval_invariants(const Instance& inst, double tol) {
  const SuperMap& phi = *inst.map;
  SuperMap adj = phi.adjoint();
  Rng rng(seed_from_params(inst));
  double dev = 0.0;

  // Hilbert-Schmidt pairing: <Y, Phi(X)> = <Phi^adj(Y), X>.
  Matrix x = gen_gaussian(phi.d_in(), phi.d_in(), rng);
  Matrix y = gen_gaussian(phi.d_out(), phi.d_out(), rng);
  Complex p1 = (y.adjoint() * phi.apply(x)).trace();
  Complex p2 = (adj.apply(y).adjoint() * x).trace();
  dev = std::max(dev, std::abs(p1 - p2) / std::max(1.0, std::abs(p1)));

  // Choi round trip reproduces the transfer matrix.
  SuperMap rt = SuperMap::from_choi(phi.d_in(), phi.d_out(), phi.choi());
  dev = std::max(dev, (rt.transfer() - phi.transfer()).cwiseAbs().maxCoeff() /
                          std::max(1.0, spectral_norm(phi.transfer())));

  // Unitality of Phi is equivalent to trace preservation of the adjoint.
  bool unital = phi.is_unital(1e-10);
  if (unital != adj.is_trace_preserving(1e-10)) dev = std::max(dev, 1.0);

  // For unital maps the generalized block is PSD exactly when the plain
  // defect is. Probed at a matrix unit (decisive for the transpose) and a
  // Gaussian K.
  if (unital) {
    for (int probe = 0; probe < 2; ++probe) {
      Matrix k;
      if (probe == 0) {
        k = Matrix::Zero(phi.d_in(), phi.d_in());
        k(0, std::min<Index>(1, phi.d_in() - 1)) = 1.0;
      } else {
        k = gen_gaussian(phi.d_in(), phi.d_in(), rng);
      }
      double lo_defect = min_eigenvalue(schwarz_defect(phi, k));
      double lo_block = min_eigenvalue(gen_schwarz_block(phi, k));
      bool defect_bad = lo_defect < -1e-6;
      bool block_bad = lo_block < -1e-6;
      if (defect_bad != block_bad &&
          std::min(std::abs(lo_defect), std::abs(lo_block)) > 1e-6)
        dev = std::max(dev, 1.0);
      if (!defect_bad && lo_block < -1e-8) dev = std::max(dev, -lo_block);
    }
  }
  return synth_outcome(inst, dev, 0.0, -dev, tol);
}

CheckOutcome eval_hierarchy(const Instance& inst, double tol) {
  const SuperMap& phi = *inst.map;
  std::uint64_t seed = seed_from_params(inst);
  int expect = int(inst.param("expect"));  // 0: CP family, 1: transpose
  Rng r1(seed), r2(seed ^ 0x5bd1e995ULL);
  ClassVerdict cp = check_cp(phi, kClassTol);
  ClassVerdict two = check_k_positive(phi, 2, r1, 64, kClassTol);
  ClassVerdict sz = check_schwarz(phi, r2, 64, kClassTol);

  double dev = 0.0;
  // Hierarchy consistency: CP implies 2-positive implies Schwarz; a
  // falsification anywhere above rules out CP.
  if (cp.verdict == Verdict::Certified &&
      (two.verdict != Verdict::Certified || sz.verdict != Verdict::Certified))
    dev = 1.0;
  if ((two.verdict == Verdict::Falsified || sz.verdict == Verdict::Falsified) &&
      cp.verdict == Verdict::Certified)
    dev = 1.0;
  if (expect == 0 && cp.verdict != Verdict::Certified) dev = 1.0;
  if (expect == 1 && (cp.verdict != Verdict::Falsified ||
                      two.verdict != Verdict::Falsified ||
                      sz.verdict != Verdict::Falsified))
    dev = 1.0;
  return synth_outcome(inst, dev, 0.0, -dev, tol);
}

CheckOutcome eval_any(const Instance& inst, double tol) {
  const std::string& id = inst.check_id;
  if (id == "extremal") return eval_extremal(inst, tol);
  if (id == "dual2") return eval_dual2(inst, tol);
  if (id == "reverse_holder") return eval_reverse_holder(inst, tol);
  if (id == "invariants") return eval_invariants(inst, tol);
  if (id == "hierarchy") return eval_hierarchy(inst, tol);
  return evaluate_check(inst, tol);
}

// -------------------------------------------------------------------------
// Suite runner
// -------------------------------------------------------------------------

struct Runner {
  const SuiteConfig& cfg;
  SeedPlan plan;
  SuiteReport& report;
  std::vector<CheckSummary> sums;

  CheckSummary& summary(const std::string& id) {
    for (CheckSummary& s : sums)
      if (s.check_id == id) return s;
    sums.push_back(CheckSummary{});
    sums.back().check_id = id;
    return sums.back();
  }

  void record(const CheckOutcome& out) {
    CheckSummary& s = summary(out.check_id);
    ++s.trials;
    if (out.holds) {
      ++s.passes;
    } else if (out.exploratory) {
      ++s.exploratory_failures;
    } else {
      ++s.failures;
    }
    if (out.margin < s.worst_margin) {
      s.worst_margin = out.margin;
      s.worst = out;
    }
  }

  void skip(const std::string& id) { ++summary(id).skips; }

  void run(const std::string& id) {
    for (int t = 0; t < cfg.trials; ++t) {
      Rng rng = plan.stream(id, id, std::uint64_t(t));
      std::uint64_t sample_seed = plan.stream_seed(id, "samples", std::uint64_t(t));
      try {
        run_trial(id, t, rng, sample_seed);
      } catch (const Error&) {
        skip(id);
      }
    }
  }

  void run_trial(const std::string& id, int t, Rng& rng, std::uint64_t sample_seed);
  void run_falsify_suite();
};

void Runner::run_trial(const std::string& id, int t, Rng& rng,
                       std::uint64_t sample_seed) {
  const std::vector<Index>& dims = cfg.dims;
  size_t nd = dims.size();
  Index d = dims[t % nd];
  double tol = cfg.tol;
  bool force = cfg.force;

  if (id == "L1M" || id == "L1MB") {
    SuperMap phi = id == "L1M" ? pick_unital(dims, t, rng, cfg.families) : pick_sesqui(dims, t, rng, cfg.families);
    Index m = phi.d_in(), n = phi.d_out();
    Matrix k = gen_gaussian(m, m, rng);
    Matrix a = gen_psd(n, rng), b = gen_psd(n, rng);
    double s, tt;
    if (id == "L1M") {
      s = 0.1 + 0.8 * rng.uniform();
      tt = 1.0 - s;
    } else {
      s = 0.05 + 0.6 * rng.uniform();
      tt = 0.05 + (0.9 - s) * rng.uniform();
    }
    record(check_lieb_monotone(LiebKind::Concave, phi, k, a, b, s, tt, tol, force));
  } else if (id == "L2M" || id == "L2MB") {
    SuperMap phi = id == "L2M" ? pick_unital(dims, t, rng, cfg.families) : pick_sesqui(dims, t, rng, cfg.families);
    Index n = phi.d_out();
    Matrix k = gen_gaussian(n, n, rng);
    Matrix x = gen_pd(n, rng, 1e-6).mat(), y = gen_pd(n, rng, 1e-6).mat();
    double s, tt;
    if (id == "L2M") {
      s = 0.1 + 0.8 * rng.uniform();
      tt = 1.0 - s;
    } else {
      s = 0.05 + 0.6 * rng.uniform();
      tt = 0.05 + (0.9 - s) * rng.uniform();
    }
    record(check_lieb_monotone(LiebKind::Convex, phi, k, x, y, s, tt, tol, force));
  } else if (id == "Ep1" || id == "Ep2") {
    SuperMap phi = id == "Ep1" ? pick_unital(dims, t, rng, cfg.families) : pick_sesqui(dims, t, rng, cfg.families);
    Matrix a = gen_psd(phi.d_out(), rng);
    Matrix b = gen_gaussian(phi.d_in(), phi.d_in(), rng);
    double s, r;
    if (id == "Ep1") {
      s = 0.1 + 0.9 * rng.uniform();
      r = 1.0;
    } else {
      s = 0.1 + 0.8 * rng.uniform();
      r = s + (1.0 - s) * (0.05 + 0.9 * rng.uniform());
    }
    record(check_epstein_monotone(phi, a, b, s, r, tol, force));
  } else if (id == "Ep3A" || id == "Ep3") {
    SuperMap phi = id == "Ep3A" ? pick_unital(dims, t, rng, cfg.families) : pick_sesqui(dims, t, rng, cfg.families);
    Index n = phi.d_out();
    Matrix a = gen_pd(n, rng, 1e-6).mat();
    Matrix b = gen_invertible(n, rng);
    double s = 0.85 * rng.uniform();
    double q_low = 1.0 / (2.0 - s);
    double q = id == "Ep3A" ? q_low : q_low + (1.0 - q_low) * (0.1 + 0.8 * rng.uniform());
    record(check_epstein_convex_monotone(phi, a, b, s, q, tol, force));
  } else if (id == "DPI") {
    SuperMap lam = pick_channel(dims, t, rng, cfg.families);
    Matrix x = gen_density(lam.d_in(), rng).mat();
    Matrix y = gen_density(lam.d_in(), rng).mat();
    record(check_dpi(lam, x, y, tol, force));
  } else if (id == "sandwiched") {
    SuperMap lam = pick_channel(dims, t, rng, cfg.families);
    Matrix rho = gen_density(lam.d_in(), rng).mat();
    Matrix sigma = gen_density(lam.d_in(), rng).mat();
    static const double alphas[3] = {1.5, 2.0, 3.0};
    record(check_sandwiched_mono(lam, rho, sigma, alphas[t % 3], tol, force));
  } else if (id == "tracialA" || id == "tracial" || id == "tracialB") {
    SuperMap phi = pick_unital(dims, t, rng, cfg.families);
    Index n = phi.d_out();
    if (id == "tracialB") {
      record(check_tracial(TracialMode::B, phi, {{"B", gen_gaussian(n, n, rng)}},
                           tol, force));
    } else {
      Matrix k = gen_gaussian(n, n, rng);
      Matrix y = gen_psd(n, rng) + 0.2 * Matrix::Identity(n, n);
      record(check_tracial(id == "tracialA" ? TracialMode::A : TracialMode::Main,
                           phi, {{"K", k}, {"Y", y}}, tol, force));
    }
  } else if (id.rfind("midpoint:", 0) == 0) {
    std::string fid = id.substr(9);
    std::map<std::string, Matrix> in1, in2;
    std::map<std::string, double> params;
    Direction dir;
    if (fid == "lieb_concave") {
      in1 = {{"K", gen_gaussian(d, d, rng)}, {"A", gen_psd(d, rng)}, {"B", gen_psd(d, rng)}};
      in2 = {{"A", gen_psd(d, rng)}, {"B", gen_psd(d, rng)}};
      params = {{"s", 0.1 + 0.4 * rng.uniform()}, {"t", 0.1 + 0.4 * rng.uniform()}};
      dir = Direction::Concave;
    } else if (fid == "lieb_convex") {
      in1 = {{"K", gen_gaussian(d, d, rng)}, {"X", gen_pd(d, rng, 1e-4).mat()},
             {"Y", gen_pd(d, rng, 1e-4).mat()}};
      in2 = {{"K", gen_gaussian(d, d, rng)}, {"X", gen_pd(d, rng, 1e-4).mat()},
             {"Y", gen_pd(d, rng, 1e-4).mat()}};
      params = {{"s", 0.1 + 0.4 * rng.uniform()}, {"t", 0.1 + 0.4 * rng.uniform()}};
      dir = Direction::Convex;
    } else if (fid == "epstein") {
      in1 = {{"A", gen_psd(d, rng)}, {"B", gen_gaussian(d, d, rng)}};
      in2 = {{"A", gen_psd(d, rng)}};
      params = {{"p", 0.1 + 0.9 * rng.uniform()}};
      dir = Direction::Concave;
    } else if (fid == "epstein_general") {
      double s = 0.1 + 0.8 * rng.uniform();
      in1 = {{"A", gen_psd(d, rng)}, {"B", gen_gaussian(d, d, rng)}};
      in2 = {{"A", gen_psd(d, rng)}};
      params = {{"s", s}, {"r", s + (1.0 - s) * rng.uniform()}};
      dir = Direction::Concave;
    } else if (fid == "neg_power") {
      double s = 0.8 * rng.uniform();
      double q_low = 1.0 / (2.0 - s);
      in1 = {{"A", gen_pd(d, rng, 1e-4).mat()}, {"B", gen_gaussian(d, d, rng)}};
      in2 = {{"A", gen_pd(d, rng, 1e-4).mat()}, {"B", gen_gaussian(d, d, rng)}};
      params = {{"s", s}, {"q", q_low + (1.0 - q_low) * (0.1 + 0.8 * rng.uniform())}};
      dir = Direction::Convex;
    } else if (fid == "ando") {
      in1 = {{"A", gen_pd(d, rng, 1e-4).mat()}, {"B", gen_gaussian(d, d, rng)}};
      in2 = {{"A", gen_pd(d, rng, 1e-4).mat()}};
      params = {{"p", 1.1 + 0.9 * rng.uniform()}, {"r", 1.0 + 0.5 * rng.uniform()}};
      dir = Direction::Convex;
    } else {
      throw InvalidInput("unknown midpoint suite '" + id + "'");
    }
    record(midpoint_check(fid, in1, in2, params, dir, tol));
  } else if (id.rfind("reduction:", 0) == 0) {
    std::string rid = id.substr(10);
    Matrix a1, a2, b;
    std::map<std::string, double> params;
    if (rid == "epstein") {
      a1 = gen_psd(d, rng);
      a2 = gen_psd(d, rng);
      b = gen_gaussian(d, d, rng);
      params = {{"p", 0.1 + 0.9 * rng.uniform()}};
    } else if (rid == "power_concave") {
      double s = 0.1 + 0.6 * rng.uniform();
      a1 = gen_psd(d, rng);
      a2 = gen_psd(d, rng);
      b = gen_gaussian(d, d, rng);
      params = {{"s", s}, {"r", s + (1.0 - s) * (0.1 + 0.85 * rng.uniform())}};
    } else if (rid == "neg_power") {
      double s = 0.8 * rng.uniform();
      double q_low = 1.0 / (2.0 - s);
      a1 = gen_pd(d, rng, 1e-4).mat();
      a2 = gen_pd(d, rng, 1e-4).mat();
      b = gen_invertible(d, rng);
      params = {{"s", s}, {"q", q_low + (1.0 - q_low) * (0.1 + 0.8 * rng.uniform())}};
    } else {
      throw InvalidInput("unknown reduction suite '" + id + "'");
    }
    auto [identity, midpoint] = embedding_reduction(rid, a1, a2, b, params, tol);
    record(identity);
    record(midpoint);
  } else if (id == "extremal") {
    static const double rs[4] = {2.0, 3.0, 0.5, -1.0};
    Instance inst;
    inst.check_id = "extremal";
    inst.mats["X"] = gen_pd(d, rng, 1e-6).mat();
    inst.params = {{"r", rs[t % 4]}, {"samples", 20.0}};
    store_seed(inst, sample_seed);
    record(eval_extremal(inst, tol));
  } else if (id == "dual2") {
    Instance inst;
    inst.check_id = "dual2";
    inst.mats["A"] = gen_pd(d, rng, 1e-4).mat();
    inst.mats["B"] = gen_invertible(d, rng);
    inst.params = {{"p", 0.15 + 0.7 * rng.uniform()}, {"samples", 20.0}};
    store_seed(inst, sample_seed);
    record(eval_dual2(inst, tol));
  } else if (id == "reverse_holder") {
    static const double rs[4] = {0.3, 0.7, -1.0, -0.5};
    Instance inst;
    inst.check_id = "reverse_holder";
    inst.mats["X"] = gen_pd(d, rng, 1e-6).mat();
    inst.mats["Y"] = gen_pd(d, rng, 1e-6).mat();
    inst.params = {{"r", rs[t % 4]}};
    record(eval_reverse_holder(inst, tol));
  } else if (id == "boundary_f") {
    SuperMap phi = pick_unital(dims, t, rng, cfg.families);
    Index m = phi.d_in(), n = phi.d_out();
    std::map<std::string, Matrix> mats = {{"A", gen_pd(n, rng, 1e-4).mat()},
                                          {"B", gen_pd(n, rng, 1e-4).mat()},
                                          {"K", gen_gaussian(m, m, rng)}};
    double p = 0.1 + 0.8 * rng.uniform();
    for (const CheckOutcome& out :
         interp_boundary_check(BoundaryKind::F, phi, mats, p, {-2, -1, 0, 1, 2}, tol))
      record(out);
  } else if (id == "boundary_g") {
    SuperMap phi = pick_unital(dims, t, rng, cfg.families);
    Index n = phi.d_out();
    std::map<std::string, Matrix> mats = {{"X", gen_pd(n, rng, 1e-4).mat()},
                                          {"Y", gen_pd(n, rng, 1e-4).mat()},
                                          {"K", gen_gaussian(n, n, rng)}};
    double tt = 0.1 + 0.8 * rng.uniform();
    for (const CheckOutcome& out :
         interp_boundary_check(BoundaryKind::G, phi, mats, tt, {-2, -1, 0, 1, 2}, tol))
      record(out);
  } else if (id == "invariants") {
    Instance inst;
    inst.check_id = "invariants";
    switch (t % 6) {
      case 0: inst.map = pick_channel(dims, t, rng, cfg.families); break;
      case 1: inst.map = gen_channel(d, d, 2, rng, ChannelFlavor::UnitalAdjoint); break;
      case 2: inst.map = unitary_conj_map(gen_unitary(d, rng)); break;
      case 3: inst.map = transpose_map(d); break;
      case 4: inst.map = depolarizing_map(d, 0.1 + 0.8 * rng.uniform()); break;
      default: inst.map = embedding_map(d); break;
    }
    store_seed(inst, sample_seed);
    record(eval_invariants(inst, tol));
  } else if (id == "hierarchy") {
    Instance inst;
    inst.check_id = "hierarchy";
    int expect = 0;
    switch (t % 4) {
      case 0: inst.map = pick_channel(dims, t, rng, cfg.families); break;
      case 1: inst.map = gen_channel(d, d, 2, rng, ChannelFlavor::UnitalAdjoint); break;
      case 2: inst.map = depolarizing_map(d, 0.2 + 0.7 * rng.uniform()); break;
      default:
        inst.map = transpose_map(d);
        expect = 1;
        break;
    }
    inst.params["expect"] = double(expect);
    store_seed(inst, sample_seed);
    record(eval_hierarchy(inst, tol));
  } else {
    throw InvalidInput("run_suite: unknown suite id '" + id + "'");
  }
}

void Runner::run_falsify_suite() {
  const std::string id = "schwarz_falsify:transpose2";
  SuperMap phi = transpose_map(2);
  CheckSummary& s = summary(id);

  for (const char* ineq : {"L1M_endpoint_p0", "tracialA_t0"}) {
    Rng rng = plan.stream(id, ineq, 0);
    ClassVerdict v = falsify_class_via_inequality(ineq, phi, rng, 1000, cfg.tol);
    nlohmann::json entry = {{"suite", id}, {"ineq_id", ineq}, {"verdict", v.to_json()}};
    report.falsifications.push_back(entry);
    ++s.trials;
    if (v.verdict == Verdict::Falsified) {
      ++s.passes;
    } else {
      ++s.failures;
      ++report.expected_falsifications_missing;
    }
  }

  // Direct class test; the matrix-unit probe makes the witness exact.
  Rng rng = plan.stream(id, "check_schwarz", 0);
  ClassVerdict v = check_schwarz(phi, rng, 64, kClassTol);
  report.falsifications.push_back(
      {{"suite", id}, {"ineq_id", "check_schwarz"}, {"verdict", v.to_json()}});
  ++s.trials;
  if (v.verdict == Verdict::Falsified && std::abs(v.min_eig + 1.0) < 1e-10) {
    ++s.passes;
  } else {
    ++s.failures;
    ++report.expected_falsifications_missing;
  }
  if (s.worst_margin > 0.0) s.worst_margin = 0.0;
}

}  // namespace

// -------------------------------------------------------------------------
// Public interface
// -------------------------------------------------------------------------

std::vector<std::string> all_suite_ids() {
  return {"L1M",
          "L1MB",
          "L2M",
          "L2MB",
          "Ep1",
          "Ep2",
          "Ep3A",
          "Ep3",
          "DPI",
          "sandwiched",
          "tracialA",
          "tracial",
          "tracialB",
          "midpoint:lieb_concave",
          "midpoint:lieb_convex",
          "midpoint:epstein",
          "midpoint:epstein_general",
          "midpoint:neg_power",
          "midpoint:ando",
          "reduction:epstein",
          "reduction:power_concave",
          "reduction:neg_power",
          "extremal",
          "dual2",
          "reverse_holder",
          "boundary_f",
          "boundary_g",
          "invariants",
          "hierarchy",
          "schwarz_falsify:transpose2"};
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  if (cfg.trials < 1) throw InvalidInput("run_suite: trials must be >= 1");
  if (cfg.dims.empty()) throw InvalidInput("run_suite: dims must not be empty");
  for (Index d : cfg.dims)
    if (d < 2 || d > 8) throw InvalidInput("run_suite: dims must lie in [2, 8]");
  if (!(cfg.tol > 0.0)) throw InvalidInput("run_suite: tol must be positive");
  const std::vector<std::string>& fams = known_families();
  for (const std::string& f : cfg.families)
    if (std::find(fams.begin(), fams.end(), f) == fams.end())
      throw InvalidInput("run_suite: unknown map family '" + f + "'");

  std::vector<std::string> ids;
  auto push = [&ids](const std::string& s) {
    if (std::find(ids.begin(), ids.end(), s) == ids.end()) ids.push_back(s);
  };
  std::vector<std::string> known = all_suite_ids();
  for (const std::string& s : cfg.suites) {
    if (s == "all") {
      for (const std::string& k : known) push(k);
    } else if (s == "midpoint") {
      for (const std::string& k : known)
        if (k.rfind("midpoint:", 0) == 0) push(k);
    } else if (s == "reductions") {
      for (const std::string& k : known)
        if (k.rfind("reduction:", 0) == 0) push(k);
    } else if (std::find(known.begin(), known.end(), s) != known.end()) {
      push(s);
    } else {
      throw InvalidInput("run_suite: unknown suite id '" + s + "'");
    }
  }

  SuiteReport report;
  report.config = cfg;
  Runner runner{cfg, SeedPlan{cfg.seed}, report, {}};
  for (const std::string& id : ids) {
    if (id == "schwarz_falsify:transpose2") {
      runner.run_falsify_suite();
    } else {
      runner.run(id);
    }
  }
  report.checks = std::move(runner.sums);
  return report;
}

int SuiteReport::hypothesis_failures() const {
  int n = 0;
  for (const CheckSummary& s : checks) n += s.failures;
  return n;
}

bool SuiteReport::ok() const {
  return hypothesis_failures() == 0 && expected_falsifications_missing == 0;
}

nlohmann::json SuiteConfig::to_json() const {
  return {{"suites", suites}, {"dims", dims},   {"trials", trials},
          {"seed", seed},     {"tol", tol},     {"force", force},
          {"families", families}};
}

SuiteConfig SuiteConfig::from_json(const nlohmann::json& j) {
  SuiteConfig cfg;
  cfg.suites = j.at("suites").get<std::vector<std::string>>();
  cfg.dims = j.at("dims").get<std::vector<Index>>();
  cfg.trials = j.at("trials").get<int>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.tol = j.at("tol").get<double>();
  cfg.force = j.value("force", false);
  cfg.families = j.value("families", std::vector<std::string>{});
  return cfg;
}

nlohmann::json CheckSummary::to_json() const {
  nlohmann::json j = {{"check_id", check_id},
                      {"trials", trials},
                      {"passes", passes},
                      {"failures", failures},
                      {"exploratory_failures", exploratory_failures},
                      {"skips", skips}};
  if (worst) {
    j["worst_margin"] = worst_margin;
    j["worst"] = worst->to_json();
  }
  return j;
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json jc = nlohmann::json::array();
  for (const CheckSummary& s : checks) jc.push_back(s.to_json());
  return {{"version", version},
          {"config", config.to_json()},
          {"checks", jc},
          {"falsifications", falsifications},
          {"hypothesis_failures", hypothesis_failures()},
          {"expected_falsifications_missing", expected_falsifications_missing},
          {"ok", ok()}};
}

nlohmann::json replay_snapshot(const nlohmann::json& snapshot, double tol) {
  if (snapshot.contains("checks")) {
    nlohmann::json result = {{"mode", "report"}};
    std::string ver = snapshot.value("version", "");
    if (ver != SuiteReport{}.version)
      result["version_warning"] = "snapshot version '" + ver +
                                  "' differs from current '" +
                                  SuiteReport{}.version + "'";
    nlohmann::json entries = nlohmann::json::array();
    bool all_match = true;
    int failures = 0;
    for (const auto& check : snapshot.at("checks")) {
      if (!check.contains("worst")) continue;
      const nlohmann::json& worst = check.at("worst");
      Instance inst = Instance::from_json(worst.at("instance"));
      double recorded = worst.at("margin").get<double>();
      double check_tol = worst.at("tol").get<double>();
      CheckOutcome out = eval_any(inst, check_tol);
      bool match = std::abs(out.margin - recorded) <= 1e-9 * std::max(1.0, std::abs(recorded));
      all_match = all_match && match;
      if (!out.holds && !out.exploratory) ++failures;
      entries.push_back({{"check_id", out.check_id},
                         {"recorded_margin", recorded},
                         {"replayed_margin", out.margin},
                         {"match", match},
                         {"holds", out.holds}});
    }
    result["entries"] = entries;
    result["all_match"] = all_match;
    result["failures"] = failures;
    result["ok"] = all_match && failures == 0;
    return result;
  }
  Instance inst = Instance::from_json(snapshot);
  CheckOutcome out = eval_any(inst, tol);
  return {{"mode", "instance"}, {"outcome", out.to_json()},
          {"ok", out.holds || out.exploratory}};
}

bool replay_ok(const nlohmann::json& replay_result) {
  return replay_result.value("ok", false);
}

nlohmann::json classify_map(const SuperMap& phi, int trials, std::uint64_t seed,
                            double tol) {
  Rng r1(seed), r2(seed ^ 0x9e3779b97f4a7c15ULL);
  ClassVerdict cp = check_cp(phi, tol);
  ClassVerdict two = check_k_positive(phi, 2, r1, trials, tol);
  ClassVerdict sz = check_schwarz(phi, r2, trials, tol);
  phi.evaluate_meta(tol);
  const MapMeta& meta = phi.meta();
  return {{"d_in", phi.d_in()},
          {"d_out", phi.d_out()},
          {"cp", cp.to_json()},
          {"two_positive", two.to_json()},
          {"schwarz", sz.to_json()},
          {"unital", *meta.unital},
          {"trace_preserving", *meta.trace_preserving},
          {"semiunital", *meta.semiunital},
          {"sesquiunital", *meta.sesquiunital}};
}

}  // namespace tracemono
