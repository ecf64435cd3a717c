#include "tracemono/posclass.hpp"

#include <nlohmann/json.hpp>

namespace tracemono {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "Certified";
    case Verdict::Falsified: return "Falsified";
    default: return "Unknown";
  }
}

nlohmann::json ClassVerdict::to_json() const {
  nlohmann::json j = {{"verdict", to_string(verdict)},
                      {"min_eig", min_eig},
                      {"trials", trials_used}};
  if (witness) j["witness"] = matrix_to_json(*witness);
  return j;
}

Matrix schwarz_defect(const SuperMap& phi, const Matrix& k) {
  if (k.rows() != phi.d_in() || k.cols() != phi.d_in())
    throw InvalidInput("schwarz_defect: dimension mismatch");
  Matrix pk = phi.apply(k);
  return symmetrize(phi.apply(k.adjoint() * k) - pk.adjoint() * pk);
}

Matrix gen_schwarz_block(const SuperMap& phi, const Matrix& k) {
  if (k.rows() != phi.d_in() || k.cols() != phi.d_in())
    throw InvalidInput("gen_schwarz_block: dimension mismatch");
  Index d = phi.d_out();
  Matrix block(2 * d, 2 * d);
  Matrix pk = phi.apply(k);
  block.topLeftCorner(d, d) = phi.apply(Matrix::Identity(phi.d_in(), phi.d_in()));
  block.topRightCorner(d, d) = pk;
  block.bottomLeftCorner(d, d) = pk.adjoint();
  block.bottomRightCorner(d, d) = phi.apply(k.adjoint() * k);
  return symmetrize(block);
}

ClassVerdict check_cp(const SuperMap& phi, double tol) {
  Matrix choi = phi.choi();
  SpectralDecomposition sd = herm_eig(choi);
  double lo = sd.eigenvalues(0);
  double scale = std::max(1.0, sd.eigenvalues.cwiseAbs().maxCoeff());
  ClassVerdict out;
  out.min_eig = lo;
  out.tol = tol;
  if (lo >= -tol * scale) {
    out.verdict = Verdict::Certified;
  } else {
    out.verdict = Verdict::Falsified;
    out.witness = sd.eigenvectors.col(0);
  }
  return out;
}

namespace {

// Maximally entangled sum_i |i>_k (x) |i>_d over the first min(d, k) basis
// vectors, in the block-major layout of tensor_with_identity (index =
// block * d + a).
Vector max_entangled(Index d, Index k) {
  Vector v = Vector::Zero(d * k);
  Index r = std::min(d, k);
  for (Index i = 0; i < r; ++i) v(i * d + i) = 1.0;
  return v / std::sqrt(double(r));
}

}  // namespace

ClassVerdict check_k_positive(const SuperMap& phi, Index k, Rng& rng, int trials,
                              double tol) {
  if (k < 1) throw InvalidInput("check_k_positive: k must be >= 1");
  ClassVerdict cp = check_cp(phi, tol);
  if (cp.verdict == Verdict::Certified) {
    cp.trials_used = 0;
    return cp;  // CP implies k-positive for every k
  }
  SuperMap ext = phi.tensor_with_identity(k);
  Index dim = phi.d_in() * k;
  ClassVerdict out;
  out.tol = tol;
  for (int t = 0; t < trials; ++t) {
    Vector v;
    if (t == 0 && k >= 2) {
      v = max_entangled(phi.d_in(), k);
    } else {
      v = gen_gaussian(dim, 1, rng);
      double n = v.norm();
      if (n == 0.0) continue;
      v /= n;
    }
    Matrix out_mat = ext.apply(v * v.adjoint());
    double lo = min_eigenvalue(out_mat);
    double scale = std::max(1.0, spectral_norm(out_mat));
    out.trials_used = t + 1;
    if (lo < -tol * scale) {
      out.verdict = Verdict::Falsified;
      out.witness = v;
      out.min_eig = lo;
      return out;
    }
  }
  out.verdict = Verdict::Unknown;
  out.trials_used = trials;
  return out;
}

ClassVerdict check_schwarz(const SuperMap& phi, Rng& rng, int trials, double tol) {
  ClassVerdict cp = check_cp(phi, tol);
  if (cp.verdict == Verdict::Certified) {
    cp.trials_used = 0;
    return cp;  // hierarchy: CP => 2-positive => (generalized) Schwarz
  }
  bool unital = phi.is_unital(1e-9);
  Index d = phi.d_in();
  ClassVerdict out;
  out.tol = tol;
  int t = 0;
  auto probe = [&](const Matrix& k_mat) -> bool {
    Matrix defect = unital ? schwarz_defect(phi, k_mat) : gen_schwarz_block(phi, k_mat);
    double lo = min_eigenvalue(defect);
    double scale = std::max(1.0, spectral_norm(defect));
    out.trials_used = ++t;
    if (lo < -tol * scale) {
      out.verdict = Verdict::Falsified;
      out.witness = k_mat;
      out.min_eig = lo;
      return true;
    }
    return false;
  };
  // Matrix units first: the extremal probes that catch the transpose map.
  for (Index i = 0; i < d && t < trials; ++i)
    for (Index j = 0; j < d && t < trials; ++j) {
      Matrix e = Matrix::Zero(d, d);
      e(i, j) = 1.0;
      if (probe(e)) return out;
    }
  while (t < trials) {
    if (probe(gen_gaussian(d, d, rng))) return out;
  }
  out.verdict = Verdict::Unknown;
  out.trials_used = trials;
  return out;
}

}  // namespace tracemono
