#ifndef TRACEMONO_INEQUALITIES_HPP
#define TRACEMONO_INEQUALITIES_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tracemono/duality.hpp"
#include "tracemono/posclass.hpp"

namespace tracemono {

// One concrete input tuple for a check: map, matrix arguments, parameters.
// Serializes completely so any outcome can be replayed from its snapshot.
struct Instance {
  std::string check_id;
  std::optional<SuperMap> map;
  std::map<std::string, Matrix> mats;
  std::map<std::string, double> params;
  bool forced = false;

  const Matrix& mat(const std::string& name) const;
  double param(const std::string& name) const;
  bool has_param(const std::string& name) const;

  nlohmann::json to_json() const;
  static Instance from_json(const nlohmann::json& j);
};

struct CheckOutcome {
  std::string check_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // (rhs - lhs) / max(1, |lhs|, |rhs|)
  bool holds = false;   // margin >= -tol
  double tol = 0.0;
  bool exploratory = false;  // evaluated under force, outside hypotheses
  Instance snapshot;

  nlohmann::json to_json() const;
};

enum class LiebKind { Concave, Convex };
enum class TracialMode { A, Main, B };
enum class Direction { Concave, Convex };
enum class BoundaryKind { F, G };

// Role convention everywhere: Phi maps d_in -> d_out and the dimension
// factor is (d_out/d_in) raised to the cited exponent. Concave kind: A, B
// live on the d_out side and K on the d_in side. Convex kind and the
// tracial/convex-Epstein checks: all matrix arguments live on the d_out side
// and the adjoint carries them back.

CheckOutcome check_lieb_monotone(LiebKind kind, const SuperMap& phi,
                                 const Matrix& k, const Matrix& a, const Matrix& b,
                                 double s, double t, double tol, bool force = false);

CheckOutcome check_epstein_monotone(const SuperMap& phi, const Matrix& a,
                                    const Matrix& b, double s, double r,
                                    double tol, bool force = false);

CheckOutcome check_epstein_convex_monotone(const SuperMap& phi, const Matrix& a,
                                           const Matrix& b, double s, double q,
                                           double tol, bool force = false);

CheckOutcome check_dpi(const SuperMap& phi_tp, const Matrix& x, const Matrix& y,
                       double tol, bool force = false);

CheckOutcome check_tracial(TracialMode mode, const SuperMap& phi,
                           const std::map<std::string, Matrix>& args, double tol,
                           bool force = false);

CheckOutcome check_sandwiched_mono(const SuperMap& lambda, const Matrix& rho,
                                   const Matrix& sigma, double alpha, double tol,
                                   bool force = false);

// Compares F(midpoint) against the average of the endpoint values.
CheckOutcome midpoint_check(const std::string& functional_id,
                            const std::map<std::string, Matrix>& inputs_1,
                            const std::map<std::string, Matrix>& inputs_2,
                            const std::map<std::string, double>& params,
                            Direction direction, double tol);

// Exact block bookkeeping for the doubling map X -> diag(X, X), followed by
// the midpoint inequality the corresponding monotone check implies.
// corollary_id in {"epstein", "power_concave", "neg_power"}.
std::pair<CheckOutcome, CheckOutcome> embedding_reduction(
    const std::string& corollary_id, const Matrix& a1, const Matrix& a2,
    const Matrix& b, const std::map<std::string, double>& params, double tol);

// Endpoint-inequality falsifiers; a Falsified verdict proves the map is not
// Schwarz. ineq_id in {"L1M_endpoint_p0", "tracialA_t0"}. Never certifies.
// For tracialA_t0 the stored witness is [K | Y] side by side.
ClassVerdict falsify_class_via_inequality(const std::string& ineq_id,
                                          const SuperMap& phi, Rng& rng,
                                          int trials, double tol);

// Boundary-line bounds of the interpolation argument: |value at k + iy| must
// not exceed tr[M^dagger M]. One outcome per y sample.
std::vector<CheckOutcome> interp_boundary_check(
    BoundaryKind kind, const SuperMap& phi,
    const std::map<std::string, Matrix>& mats, double exponent,
    const std::vector<double>& y_samples, double tol);

// Recompute any single-outcome check from its serialized instance.
CheckOutcome evaluate_check(const Instance& inst, double tol);

// Machine-readable descriptors: id, family, role convention, parameter
// domains.
nlohmann::json check_descriptors();
std::vector<std::string> known_check_ids();

}  // namespace tracemono

#endif
