#ifndef TRACEMONO_SUPERMAP_HPP
#define TRACEMONO_SUPERMAP_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tracemono/matcore.hpp"

namespace tracemono {

// Structural flags, tri-state: unevaluated until requested, then memoized
// together with the tolerance used.
struct MapMeta {
  std::optional<bool> unital;
  std::optional<bool> trace_preserving;
  std::optional<bool> semiunital;
  std::optional<bool> sesquiunital;
  double tol = 0.0;
};

// A linear map Phi between matrix spaces, d_in -> d_out, stored as the
// transfer matrix acting on column-vectorized matrices. The Choi matrix uses
// the convention sum_ij E_ij (x) Phi(E_ij). Values are immutable after
// construction apart from write-once meta memoization.
class SuperMap {
 public:
  SuperMap(Index d_in, Index d_out, Matrix transfer);

  static SuperMap from_function(Index d_in, Index d_out,
                                const std::function<Matrix(const Matrix&)>& fn);
  static SuperMap from_kraus(const std::vector<Matrix>& ops);
  static SuperMap from_choi(Index d_in, Index d_out, const Matrix& choi);

  Index d_in() const { return d_in_; }
  Index d_out() const { return d_out_; }
  double dim_ratio() const { return double(d_out_) / double(d_in_); }
  const Matrix& transfer() const { return transfer_; }

  Matrix apply(const Matrix& x) const;
  Matrix choi() const;
  SuperMap adjoint() const;
  SuperMap tensor_with_identity(Index k) const;

  bool is_unital(double tol) const;
  bool is_trace_preserving(double tol) const;
  bool is_semiunital(double tol) const;  // Phi^dagger(1) = (d_out/d_in) * 1
  bool is_sesquiunital(double tol) const;
  const MapMeta& meta() const { return meta_; }
  void evaluate_meta(double tol) const;

  nlohmann::json to_json() const;
  static SuperMap from_json(const nlohmann::json& j);

 private:
  Index d_in_;
  Index d_out_;
  Matrix transfer_;  // d_out^2 x d_in^2
  mutable MapMeta meta_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix vec(const Matrix& x);               // column-major
Matrix unvec(const Matrix& v, Index rows, Index cols);

// Phi2 after Phi1.
SuperMap compose(const SuperMap& phi2, const SuperMap& phi1);

// Named families.
SuperMap identity_map(Index d);
SuperMap embedding_map(Index m);  // X -> diag(X, X), d_in = m, d_out = 2m
SuperMap partial_trace_left(Index da, Index db);   // traces out first factor
SuperMap partial_trace_right(Index da, Index db);  // traces out second factor
SuperMap transpose_map(Index d);
SuperMap unitary_conj_map(const Matrix& u);
SuperMap pinching_map(Index d);  // projection onto the diagonal
SuperMap depolarizing_map(Index d, double lambda);
// X -> (tr X / d_in) * 1_{d_out}: unital, CP, sesquiunital for any dims.
SuperMap completely_mixing_map(Index d_in, Index d_out);
SuperMap convex_combo(const std::vector<SuperMap>& maps,
                      const std::vector<double>& weights);

// String-keyed front end used by the CLI and JSON interfaces.
SuperMap named_map(const std::string& family, const nlohmann::json& params);

}  // namespace tracemono

#endif
