#ifndef TRACEMONO_POSCLASS_HPP
#define TRACEMONO_POSCLASS_HPP

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "tracemono/ensembles.hpp"
#include "tracemono/supermap.hpp"

namespace tracemono {

enum class Verdict { Certified, Falsified, Unknown };

std::string to_string(Verdict v);

// Outcome of a positivity-class membership test. Falsified always carries a
// witness whose recomputed defect reproduces min_eig.
struct ClassVerdict {
  Verdict verdict = Verdict::Unknown;
  std::optional<Matrix> witness;  // matrix K or a column vector
  double min_eig = 0.0;
  int trials_used = 0;
  double tol = 0.0;

  nlohmann::json to_json() const;
};

// Phi(K^dagger K) - Phi(K)^dagger Phi(K); PSD for all K iff Phi is Schwarz.
Matrix schwarz_defect(const SuperMap& phi, const Matrix& k);

// [[Phi(1), Phi(K)], [Phi(K)^dagger, Phi(K^dagger K)]]; PSD for all K iff
// Phi is a generalized Schwarz map. For unital Phi this is PSD exactly when
// the plain defect is.
Matrix gen_schwarz_block(const SuperMap& phi, const Matrix& k);

// Exact: Choi PSD test.
ClassVerdict check_cp(const SuperMap& phi, double tol);

// Sampled rank-1 inputs for Phi (x) id_k; CP certificate promotes to
// Certified, otherwise Falsified-or-Unknown. The first probe at k >= 2 is the
// maximally entangled vector, which catches the transpose deterministically.
ClassVerdict check_k_positive(const SuperMap& phi, Index k, Rng& rng, int trials,
                              double tol);

// Certified only via the hierarchy (CP certificate); otherwise samples K from
// matrix units followed by complex Gaussians. For unital maps the plain
// defect is probed, otherwise the generalized block.
ClassVerdict check_schwarz(const SuperMap& phi, Rng& rng, int trials, double tol);

}  // namespace tracemono

#endif
