#include "tracemono/supermap.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace tracemono {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix vec(const Matrix& x) {
  return Eigen::Map<const Matrix>(x.data(), x.size(), 1);
}

Matrix unvec(const Matrix& v, Index rows, Index cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

SuperMap::SuperMap(Index d_in, Index d_out, Matrix transfer)
    : d_in_(d_in), d_out_(d_out), transfer_(std::move(transfer)) {
  if (d_in <= 0 || d_out <= 0) throw InvalidInput("SuperMap: dims must be positive");
  if (transfer_.rows() != d_out * d_out || transfer_.cols() != d_in * d_in)
    throw InvalidInput("SuperMap: transfer shape mismatch");
  if (!all_finite(transfer_)) throw InvalidInput("SuperMap: non-finite transfer");
}

SuperMap SuperMap::from_function(Index d_in, Index d_out,
                                 const std::function<Matrix(const Matrix&)>& fn) {
  Matrix transfer(d_out * d_out, d_in * d_in);
  Matrix e = Matrix::Zero(d_in, d_in);
  for (Index l = 0; l < d_in; ++l)
    for (Index k = 0; k < d_in; ++k) {
      e(k, l) = 1.0;
      transfer.col(l * d_in + k) = vec(fn(e));
      e(k, l) = 0.0;
    }
  return SuperMap(d_in, d_out, std::move(transfer));
}

SuperMap SuperMap::from_kraus(const std::vector<Matrix>& ops) {
  if (ops.empty()) throw InvalidInput("from_kraus: empty operator list");
  Index d_out = ops[0].rows(), d_in = ops[0].cols();
  Matrix transfer = Matrix::Zero(d_out * d_out, d_in * d_in);
  for (const Matrix& v : ops) {
    if (v.rows() != d_out || v.cols() != d_in)
      throw InvalidInput("from_kraus: inconsistent shapes");
    // vec(V X V^dagger) = (conj(V) (x) V) vec(X)
    transfer += kron(v.conjugate(), v);
  }
  return SuperMap(d_in, d_out, std::move(transfer));
}

Matrix SuperMap::apply(const Matrix& x) const {
  if (x.rows() != d_in_ || x.cols() != d_in_)
    throw InvalidInput("SuperMap::apply: dimension mismatch");
  return unvec(transfer_ * vec(x), d_out_, d_out_);
}

Matrix SuperMap::choi() const {
  Matrix c(d_in_ * d_out_, d_in_ * d_out_);
  Matrix e = Matrix::Zero(d_in_, d_in_);
  for (Index i = 0; i < d_in_; ++i)
    for (Index j = 0; j < d_in_; ++j) {
      e(i, j) = 1.0;
      c.block(i * d_out_, j * d_out_, d_out_, d_out_) = apply(e);
      e(i, j) = 0.0;
    }
  return c;
}

SuperMap SuperMap::from_choi(Index d_in, Index d_out, const Matrix& choi) {
  if (choi.rows() != d_in * d_out || choi.cols() != d_in * d_out)
    throw InvalidInput("from_choi: shape mismatch");
  Matrix transfer(d_out * d_out, d_in * d_in);
  for (Index i = 0; i < d_in; ++i)
    for (Index j = 0; j < d_in; ++j)
      transfer.col(j * d_in + i) = vec(choi.block(i * d_out, j * d_out, d_out, d_out));
  return SuperMap(d_in, d_out, std::move(transfer));
}

SuperMap SuperMap::adjoint() const {
  // The Hilbert-Schmidt pairing on vectorized matrices is the standard inner
  // product, so the adjoint map is the conjugate transpose of the transfer.
  return SuperMap(d_out_, d_in_, transfer_.adjoint());
}

SuperMap SuperMap::tensor_with_identity(Index k) const {
  if (k < 1) throw InvalidInput("tensor_with_identity: k must be >= 1");
  if (k == 1) return *this;
  Index din = d_in_, dout = d_out_;
  // Blockwise action: X in M_{d_in * k} as k x k blocks of size d_in,
  // output block (I, J) = Phi(X_IJ).
  return from_function(din * k, dout * k, [this, din, dout, k](const Matrix& x) {
    Matrix out(dout * k, dout * k);
    for (Index bi = 0; bi < k; ++bi)
      for (Index bj = 0; bj < k; ++bj)
        out.block(bi * dout, bj * dout, dout, dout) =
            apply(x.block(bi * din, bj * din, din, din));
    return out;
  });
}

namespace {

bool near_identity_multiple(const Matrix& m, double factor, double tol) {
  Matrix target = factor * Matrix::Identity(m.rows(), m.cols());
  return (m - target).cwiseAbs().maxCoeff() <= tol * std::max(1.0, factor);
}

}  // namespace

bool SuperMap::is_unital(double tol) const {
  if (!meta_.unital || meta_.tol != tol) {
    meta_.unital = near_identity_multiple(apply(Matrix::Identity(d_in_, d_in_)), 1.0, tol);
    meta_.tol = tol;
  }
  return *meta_.unital;
}

bool SuperMap::is_trace_preserving(double tol) const {
  // tr[Phi(X)] = tr[X] for all X iff Phi^dagger(1) = 1.
  Matrix adj_of_id = unvec(transfer_.adjoint() * vec(Matrix::Identity(d_out_, d_out_)),
                           d_in_, d_in_);
  meta_.trace_preserving = near_identity_multiple(adj_of_id, 1.0, tol);
  return *meta_.trace_preserving;
}

bool SuperMap::is_semiunital(double tol) const {
  Matrix adj_of_id = unvec(transfer_.adjoint() * vec(Matrix::Identity(d_out_, d_out_)),
                           d_in_, d_in_);
  meta_.semiunital = near_identity_multiple(adj_of_id, dim_ratio(), tol);
  return *meta_.semiunital;
}

bool SuperMap::is_sesquiunital(double tol) const {
  meta_.sesquiunital = is_unital(tol) && is_semiunital(tol);
  return *meta_.sesquiunital;
}

void SuperMap::evaluate_meta(double tol) const {
  is_unital(tol);
  is_trace_preserving(tol);
  is_semiunital(tol);
  is_sesquiunital(tol);
  meta_.tol = tol;
}

nlohmann::json SuperMap::to_json() const {
  nlohmann::json meta;
  auto put = [&meta](const char* key, const std::optional<bool>& v) {
    if (v) meta[key] = *v;
  };
  put("unital", meta_.unital);
  put("trace_preserving", meta_.trace_preserving);
  put("semiunital", meta_.semiunital);
  put("sesquiunital", meta_.sesquiunital);
  if (!meta.empty()) meta["tol"] = meta_.tol;
  return {{"d_in", d_in_}, {"d_out", d_out_},
          {"choi", matrix_to_json(choi())}, {"meta", meta}};
}

SuperMap SuperMap::from_json(const nlohmann::json& j) {
  Index d_in = j.at("d_in").get<Index>();
  Index d_out = j.at("d_out").get<Index>();
  return from_choi(d_in, d_out, matrix_from_json(j.at("choi")));
}

SuperMap compose(const SuperMap& phi2, const SuperMap& phi1) {
  if (phi1.d_out() != phi2.d_in())
    throw InvalidInput("compose: inner dimensions do not match");
  return SuperMap(phi1.d_in(), phi2.d_out(), phi2.transfer() * phi1.transfer());
}

SuperMap identity_map(Index d) {
  return SuperMap(d, d, Matrix::Identity(d * d, d * d));
}

SuperMap embedding_map(Index m) {
  return SuperMap::from_function(m, 2 * m, [m](const Matrix& x) {
    Matrix out = Matrix::Zero(2 * m, 2 * m);
    out.topLeftCorner(m, m) = x;
    out.bottomRightCorner(m, m) = x;
    return out;
  });
}

SuperMap partial_trace_left(Index da, Index db) {
  return SuperMap::from_function(da * db, db, [da, db](const Matrix& x) {
    Matrix out = Matrix::Zero(db, db);
    for (Index a = 0; a < da; ++a)
      out += x.block(a * db, a * db, db, db);
    return out;
  });
}

SuperMap partial_trace_right(Index da, Index db) {
  return SuperMap::from_function(da * db, da, [da, db](const Matrix& x) {
    Matrix out = Matrix::Zero(da, da);
    for (Index a = 0; a < da; ++a)
      for (Index b = 0; b < da; ++b)
        out(a, b) = x.block(a * db, b * db, db, db).trace();
    return out;
  });
}

SuperMap transpose_map(Index d) {
  return SuperMap::from_function(d, d, [](const Matrix& x) { return x.transpose().eval(); });
}

SuperMap unitary_conj_map(const Matrix& u) {
  if (u.rows() != u.cols()) throw InvalidInput("unitary_conj_map: square matrix required");
  Matrix defect = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  if (defect.cwiseAbs().maxCoeff() > 1e-8)
    throw InvalidInput("unitary_conj_map: matrix is not unitary");
  return SuperMap::from_kraus({u});
}

SuperMap pinching_map(Index d) {
  std::vector<Matrix> ops;
  for (Index i = 0; i < d; ++i) {
    Matrix e = Matrix::Zero(d, d);
    e(i, i) = 1.0;
    ops.push_back(e);
  }
  return SuperMap::from_kraus(ops);
}

SuperMap depolarizing_map(Index d, double lambda) {
  if (lambda < 0.0 || lambda > 1.0)
    throw InvalidInput("depolarizing_map: lambda outside [0, 1]");
  return SuperMap::from_function(d, d, [d, lambda](const Matrix& x) {
    Matrix out = lambda * x;
    out += (1.0 - lambda) * (x.trace() / double(d)) * Matrix::Identity(d, d);
    return out;
  });
}

SuperMap completely_mixing_map(Index d_in, Index d_out) {
  return SuperMap::from_function(d_in, d_out, [d_in, d_out](const Matrix& x) {
    return ((x.trace() / double(d_in)) * Matrix::Identity(d_out, d_out)).eval();
  });
}

SuperMap convex_combo(const std::vector<SuperMap>& maps,
                      const std::vector<double>& weights) {
  if (maps.empty() || maps.size() != weights.size())
    throw InvalidInput("convex_combo: maps/weights size mismatch");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw InvalidInput("convex_combo: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw InvalidInput("convex_combo: weights must sum to 1");
  Matrix transfer = weights[0] * maps[0].transfer();
  for (size_t i = 1; i < maps.size(); ++i) {
    if (maps[i].d_in() != maps[0].d_in() || maps[i].d_out() != maps[0].d_out())
      throw InvalidInput("convex_combo: dimension mismatch");
    transfer += weights[i] * maps[i].transfer();
  }
  return SuperMap(maps[0].d_in(), maps[0].d_out(), std::move(transfer));
}

SuperMap named_map(const std::string& family, const nlohmann::json& params) {
  auto dim = [&params](const char* key) { return params.at(key).get<Index>(); };
  if (family == "identity") return identity_map(dim("d"));
  if (family == "embedding") return embedding_map(dim("m"));
  if (family == "partial_trace_left") return partial_trace_left(dim("da"), dim("db"));
  if (family == "partial_trace_right") return partial_trace_right(dim("da"), dim("db"));
  if (family == "transpose") return transpose_map(dim("d"));
  if (family == "unitary_conj") return unitary_conj_map(matrix_from_json(params.at("u")));
  if (family == "pinching") return pinching_map(dim("d"));
  if (family == "depolarizing")
    return depolarizing_map(dim("d"), params.at("lambda").get<double>());
  if (family == "completely_mixing")
    return completely_mixing_map(dim("d_in"), dim("d_out"));
  if (family == "convex_combo") {
    std::vector<SuperMap> maps;
    for (const auto& mj : params.at("maps")) maps.push_back(SuperMap::from_json(mj));
    std::vector<double> weights = params.at("weights").get<std::vector<double>>();
    return convex_combo(maps, weights);
  }
  throw InvalidInput("named_map: unknown family '" + family + "'");
}

}  // namespace tracemono
