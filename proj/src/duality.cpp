#include "tracemono/duality.hpp"

#include <cmath>

namespace tracemono {

namespace {

double trace_power(const Matrix& x, double r, double floor = 0.0) {
  return real_trace(mat_pow(x, r, floor));
}

}  // namespace

PsdMatrix holder_optimizer(const PdMatrix& x, double r) {
  if (r == 0.0 || r == 1.0) throw DomainError("holder_optimizer: r must avoid 0 and 1");
  double trxr = trace_power(x.mat(), r, x.floor());
  double c = std::pow(trxr, (1.0 - r) / r);
  return PsdMatrix(c * mat_pow(x, r - 1.0), 1e-10);
}

VariationalReport verify_extremal(const PdMatrix& x, double r, Rng& rng, int trials) {
  if (r == 0.0 || r == 1.0) throw DomainError("verify_extremal: r must avoid 0 and 1");
  bool max_branch = r > 1.0;
  double conj = r / (r - 1.0);
  Index n = x.dim();

  VariationalReport rep;
  rep.target = std::pow(trace_power(x.mat(), r, x.floor()), 1.0 / r);
  rep.optimizer = holder_optimizer(x, r).mat();
  rep.value_at_optimizer = real_trace(x.mat() * rep.optimizer);
  rep.samples = trials;

  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    // Draw PSD (PD on the min branch) and normalize the constrained Schatten
    // quantity exactly so samples are feasible by construction.
    Matrix w = gen_psd(n, rng);
    if (!max_branch) w += 1e-6 * Matrix::Identity(n, n);
    double trw = trace_power(w, conj, max_branch ? 0.0 : 1e-9);
    w *= std::pow(trw, -1.0 / conj);
    double value = real_trace(x.mat() * w);
    double margin = max_branch ? rep.target - value : value - rep.target;
    worst = std::min(worst, margin);
  }
  rep.worst_violation = worst;
  return rep;
}

double verify_reverse_holder(const PdMatrix& x, const PdMatrix& y, double r) {
  if (!(r < 0.0 || (r > 0.0 && r < 1.0)))
    throw DomainError("verify_reverse_holder: need 0 < r < 1 or r < 0");
  double conj = r / (r - 1.0);
  double lhs = real_trace(x.mat() * y.mat());
  double rhs = std::pow(trace_power(x.mat(), r, x.floor()), 1.0 / r) *
               std::pow(trace_power(y.mat(), conj, y.floor()), (r - 1.0) / r);
  return lhs - rhs;
}

double dual2_value(const PdMatrix& a, const Matrix& b, double p, const PsdMatrix& h) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("dual2_value: p must lie in (0, 1)");
  Matrix a_neg = mat_pow(a, -0.5 * p);
  Matrix inner = symmetrize(a_neg * h.mat() * a_neg);
  double first = real_trace(b.adjoint() * h.mat() * b);
  double second = trace_power(inner, 1.0 / (1.0 - p));
  return first / p - (1.0 - p) / p * second;
}

PsdMatrix dual2_optimizer(const PdMatrix& a, const Matrix& b, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("dual2_optimizer: p must lie in (0, 1)");
  Matrix ap = mat_pow(a, 0.5 * p);
  Matrix core = symmetrize(ap * b * b.adjoint() * ap);
  Matrix h = symmetrize(ap * mat_pow(core, (1.0 - p) / p) * ap);
  return PsdMatrix(std::move(h), 1e-8);
}

}  // namespace tracemono
